"""Command-line interface.

Exit codes: 0 success, 1 validation/config error, 2 runtime error.
"""

import argparse
import sys
from pathlib import Path

from .config import load_config
from .errors import ConfigError, DomainError, SoftbendError
from .experiment import compare_modes, format_comparison, simulate_with_outputs, sweep
from .imaging import CameraIntrinsics, read_pgm
from .metrics import Metrics
from .plotting import emit_plot
from .runlog import read_csv
from .vision import estimate_angle


def _add_config_arg(p):
    p.add_argument("--config", required=True, help="scenario config file (key = value lines)")
    p.add_argument("--out", default=None, help="output directory")


def _load(args):
    cfg = load_config(args.config)
    updates = {}
    if args.out is not None:
        updates["out_dir"] = args.out
    if getattr(args, "seed", None) is not None:
        updates["rng_seed"] = args.seed
    return cfg.with_updates(**updates) if updates else cfg


def _cmd_simulate(args):
    cfg = _load(args)
    log, m = simulate_with_outputs(cfg, plot=args.plot)
    rise = "absent" if m.rise_time_s is None else f"{m.rise_time_s:.2f} s"
    print(f"{cfg.scenario} [{cfg.mode}] desired {cfg.desired_angle_deg:g} deg, seed {cfg.rng_seed}")
    print(f"  rise time: {rise}")
    print(f"  steady-state error: {m.steady_state_error_deg:.3f} deg")
    print(f"  error band: {m.error_band_deg:.3f} deg")
    print(f"  overshoot: {m.overshoot_deg:.3f} deg")
    print(f"  settled: {m.settled}")
    if cfg.out_dir:
        print(f"  outputs in {cfg.out_dir}")
    return 0


def _cmd_compare(args):
    cfg = _load(args)
    report, _, _ = compare_modes(cfg)
    print(format_comparison(report, cfg), end="")
    return 0


def _cmd_sweep(args):
    cfg = _load(args)
    try:
        angles = [float(a) for a in args.angles.split(",") if a.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad --angles list: {exc}") from exc
    if not angles:
        raise ConfigError("--angles must name at least one setpoint")
    results = sweep(cfg, angles, n_seeds=args.seeds)
    ok = 0
    for angle, seed, report in results:
        status = "PASS" if report.ordering_pass else "FAIL"
        ok += report.ordering_pass
        pr = "absent" if report.pneumatic.rise_time_s is None else f"{report.pneumatic.rise_time_s:6.2f}"
        hr = "absent" if report.hybrid.rise_time_s is None else f"{report.hybrid.rise_time_s:6.2f}"
        print(
            f"angle {angle:5.1f} seed {seed}: rise {pr} vs {hr} s, "
            f"band {report.pneumatic.error_band_deg:5.2f} vs {report.hybrid.error_band_deg:5.2f} deg -> {status}"
        )
    print(f"ordering held in {ok}/{len(results)} cases")
    return 0


def _cmd_estimate_angle(args):
    gray = read_pgm(args.image)
    h, w = gray.shape
    cam = CameraIntrinsics(
        width_px=w,
        height_px=h,
        mm_per_px=args.scale,
        origin_x_px=args.base_hint[0],
        origin_y_px=args.base_hint[1],
    )
    meas = estimate_angle(gray, cam, args.threshold, args.base_hint, t=0.0)
    flag = " (degenerate: straight module)" if meas.degenerate else ""
    print(f"{meas.angle_deg:.3f}{flag}")
    return 0


def _cmd_plot(args):
    log = read_csv(args.log)
    emit_plot(log, args.out)
    print(f"wrote {args.out}")
    return 0


def _parse_hint(text):
    try:
        x, y = text.split(",")
        return float(x), float(y)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected X,Y pixel pair, got {text!r}") from exc


def build_parser():
    parser = argparse.ArgumentParser(
        prog="softbend",
        description="Deterministic twin of a pneumatic/SMA soft bending module testbed",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run one closed-loop experiment")
    _add_config_arg(p)
    p.add_argument("--seed", type=int, default=None, help="override rng_seed from the config")
    p.add_argument("--plot", action="store_true", help="also write an SVG of the run")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("compare", help="run both actuation modes and compare")
    _add_config_arg(p)
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("sweep", help="mode comparison across setpoints and seeds")
    _add_config_arg(p)
    p.add_argument("--angles", required=True, help="comma-separated desired angles, e.g. 50,55,60,65")
    p.add_argument("--seeds", type=int, default=1, help="number of seeds per setpoint")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("estimate-angle", help="standalone vision pipeline on a PGM image")
    p.add_argument("--image", required=True, help="binary PGM (P5) grayscale frame")
    p.add_argument("--threshold", type=int, default=128, help="foreground threshold in [0, 255]")
    p.add_argument("--scale", type=float, default=0.5, help="millimeters per pixel")
    p.add_argument(
        "--base-hint", type=_parse_hint, default=(60.0, 400.0),
        help="X,Y pixel position of the module mount point",
    )
    p.set_defaults(func=_cmd_estimate_angle)

    p = sub.add_parser("plot", help="render a run log CSV as an SVG")
    p.add_argument("--log", required=True, help="run log CSV")
    p.add_argument("--out", required=True, help="output SVG path")
    p.set_defaults(func=_cmd_plot)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (SoftbendError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
