"""Experiment execution: the camera-in-the-loop control run, mode
comparison, and batch sweeps.

Each control period proceeds in fixed order: render + measure the angle
from the synthetic frame, read the pressure sensor, form the error
signals, decide the command, advance the valve once, then advance the
plant through the sub-steps of the period. Measurement dropouts hold
the last valid angle and never abort the run.
"""

import dataclasses
from pathlib import Path

import numpy as np

from . import control as ctl
from . import plant as plantmod
from .config import ExperimentConfig
from .errors import NoModuleDetectedError
from .geometry import ModuleGeometry, backbone_from_angle
from .imaging import render_silhouette, synth_frame
from .metrics import build_comparison, compute_metrics
from .plotting import emit_plot
from .runlog import RunLogBuilder, write_csv
from .vision import estimate_angle


def _controller_config(cfg):
    return ctl.ControllerConfig(
        mode=cfg.mode,
        desired_angle_deg=cfg.desired_angle_deg,
        angle_deadband_deg=cfg.control.angle_deadband_deg,
        pressure_deadband_kpa=cfg.control.pressure_deadband_kpa,
        control_period_s=cfg.control_period_s,
        stepper_rate_steps_per_s=cfg.control.stepper_rate_steps_per_s,
        steps_full_travel=cfg.control.steps_full_travel,
    )


def run_experiment(cfg, geom=None):
    """Run one closed-loop experiment; returns the RunLog.

    Deterministic for a given config and seed. When cfg.out_dir is set,
    writes <out_dir>/<scenario>_<mode>.csv as a side effect.
    """
    geom = geom or ModuleGeometry()
    cam = cfg.camera.intrinsics()
    controller = _controller_config(cfg)
    pneu = dataclasses.replace(cfg.plant, dead_time_s=cfg.dead_time_for_mode(cfg.mode))
    plant = plantmod.Plant(pneumatic=pneu, sma=cfg.sma, ambient_c=cfg.sma_ambient_c, dt_s=cfg.dt_s)

    seed_seq = np.random.SeedSequence(cfg.rng_seed)
    sensor_seed, camera_seed = seed_seq.spawn(2)
    sensor = plantmod.PressureSensor(
        range_min_kpa=cfg.sensor.pressure_range_min_kpa,
        range_max_kpa=cfg.sensor.pressure_range_max_kpa,
        noise_sigma_kpa=cfg.sensor.pressure_noise_sigma_kpa,
        quantization_bits=cfg.sensor.pressure_quantization_bits,
        rng_seed=sensor_seed,
    )
    camera_rng = np.random.default_rng(camera_seed)

    valve = ctl.ValveState(0, cfg.control.steps_full_travel)
    base_hint = (cam.origin_x_px, cam.origin_y_px)
    substeps = int(round(cfg.control_period_s / cfg.dt_s))
    n_periods = int(round(cfg.duration_s / cfg.control_period_s))

    p_pred, _ = plantmod.predict_pressure(cfg.desired_angle_deg, 0.0, pneu)
    last_meas_deg = 0.0
    log = RunLogBuilder()

    for k in range(n_periods):
        t = k * cfg.control_period_s
        state = plant.state

        pose = backbone_from_angle(geom, state.angle_true_deg)
        frame = synth_frame(
            render_silhouette(pose, geom, cam),
            fg_level=cfg.camera.fg_level,
            bg_level=cfg.camera.bg_level,
            noise_sigma=cfg.camera.noise_sigma,
            rng=camera_rng,
        )
        try:
            meas = estimate_angle(
                frame, cam, cfg.vision.threshold_level, base_hint, t,
                aux_distance_px=cfg.vision.aux_distance_px,
                min_component_px=cfg.vision.min_component_px,
            )
            last_meas_deg = meas.angle_deg
        except NoModuleDetectedError:
            pass  # dropout: hold the last valid measurement

        p_meas = plantmod.read_pressure(state, sensor)
        errs = ctl.ErrorSignals(
            e_p=ctl.pressure_error(p_pred, p_meas),
            e_alpha=ctl.angle_error(cfg.desired_angle_deg, last_meas_deg),
        )
        cmd = ctl.control_step(controller, errs)

        log.add(
            t_s=t,
            desired_deg=cfg.desired_angle_deg,
            angle_true_deg=state.angle_true_deg,
            angle_meas_deg=last_meas_deg,
            pressure_kpa=state.pressure_kpa,
            pressure_meas_kpa=p_meas,
            p_pred_kpa=p_pred,
            e_p_kpa=errs.e_p,
            e_alpha_deg=errs.e_alpha,
            valve_opening=valve.opening,
            sma_power=1.0 if cmd.sma_power else 0.0,
            sma_temp_c=state.sma_temp_c,
            sma_strain=state.sma_strain,
        )

        valve = ctl.valve_step(valve, cmd, cfg.control_period_s, controller)
        for _ in range(substeps):
            plant.step(valve.opening, cmd.sma_power)

    result = log.build()
    if cfg.out_dir:
        out = Path(cfg.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        write_csv(result, out / f"{cfg.scenario}_{cfg.mode}.csv")
    return result


def compare_modes(cfg, band_deg=5.0, geom=None):
    """Run both actuation modes on otherwise identical configs.

    Returns (report, pneumatic_log, hybrid_log); emits human- and
    machine-readable report files when cfg.out_dir is set.
    """
    logs = {}
    metrics = {}
    for mode in (ctl.PNEUMATIC_ONLY, ctl.HYBRID):
        run_cfg = cfg.with_updates(mode=mode)
        logs[mode] = run_experiment(run_cfg, geom=geom)
        metrics[mode] = compute_metrics(logs[mode], band_deg)
    report = build_comparison(metrics[ctl.PNEUMATIC_ONLY], metrics[ctl.HYBRID])
    if cfg.out_dir:
        out = Path(cfg.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "comparison.txt").write_text(format_comparison(report, cfg), encoding="ascii")
        (out / "comparison.kv").write_text(comparison_kv(report), encoding="ascii")
    return report, logs[ctl.PNEUMATIC_ONLY], logs[ctl.HYBRID]


def _fmt(value, nd=3):
    return "absent" if value is None else f"{value:.{nd}f}"


def format_comparison(report, cfg):
    lines = [
        f"scenario {cfg.scenario}: desired angle {cfg.desired_angle_deg:.1f} deg, seed {cfg.rng_seed}",
        "",
        f"{'':>18} {'pneumatic_only':>16} {'hybrid':>16}",
    ]
    for label, attr in (
        ("rise time (s)", "rise_time_s"),
        ("steady error (deg)", "steady_state_error_deg"),
        ("error band (deg)", "error_band_deg"),
        ("overshoot (deg)", "overshoot_deg"),
        ("settled", "settled"),
    ):
        pv = getattr(report.pneumatic, attr)
        hv = getattr(report.hybrid, attr)
        fmt = str if attr == "settled" else _fmt
        lines.append(f"{label:>18} {fmt(pv):>16} {fmt(hv):>16}")
    lines.append("")
    lines.append(f"rise-time ratio (pneumatic/hybrid): {_fmt(report.rise_time_ratio)}")
    lines.append(f"error-band ratio (pneumatic/hybrid): {_fmt(report.error_band_ratio)}")
    lines.append(f"hybrid strictly better on rise time and error band: {'PASS' if report.ordering_pass else 'FAIL'}")
    return "\n".join(lines) + "\n"


def comparison_kv(report):
    pairs = []
    for mode, m in (("pneumatic", report.pneumatic), ("hybrid", report.hybrid)):
        pairs.append((f"{mode}.rise_time_s", _fmt(m.rise_time_s, 6)))
        pairs.append((f"{mode}.steady_state_error_deg", _fmt(m.steady_state_error_deg, 6)))
        pairs.append((f"{mode}.error_band_deg", _fmt(m.error_band_deg, 6)))
        pairs.append((f"{mode}.overshoot_deg", _fmt(m.overshoot_deg, 6)))
        pairs.append((f"{mode}.settled", str(m.settled).lower()))
    pairs.append(("rise_time_ratio", _fmt(report.rise_time_ratio, 6)))
    pairs.append(("error_band_ratio", _fmt(report.error_band_ratio, 6)))
    pairs.append(("ordering_pass", str(report.ordering_pass).lower()))
    return "".join(f"{k} = {v}\n" for k, v in pairs)


def sweep(cfg, angles, n_seeds=1, band_deg=5.0, geom=None):
    """Mode comparison across a setpoint/seed matrix.

    Returns a list of (angle, seed, ComparisonReport); writes per-case
    logs and a summary under cfg.out_dir when set.
    """
    results = []
    base_out = cfg.out_dir
    for angle in angles:
        for seed in range(cfg.rng_seed, cfg.rng_seed + n_seeds):
            case_out = str(Path(base_out) / f"angle{angle:g}_seed{seed}") if base_out else ""
            case = cfg.with_updates(desired_angle_deg=float(angle), rng_seed=seed, out_dir=case_out)
            report, _, _ = compare_modes(case, band_deg=band_deg, geom=geom)
            results.append((float(angle), seed, report))
    if base_out:
        lines = ["angle_deg,seed,pneumatic_rise_s,hybrid_rise_s,pneumatic_band_deg,hybrid_band_deg,ordering_pass"]
        for angle, seed, report in results:
            lines.append(
                f"{angle:g},{seed},{_fmt(report.pneumatic.rise_time_s, 6)},{_fmt(report.hybrid.rise_time_s, 6)},"
                f"{report.pneumatic.error_band_deg:.6f},{report.hybrid.error_band_deg:.6f},"
                f"{str(report.ordering_pass).lower()}"
            )
        Path(base_out).mkdir(parents=True, exist_ok=True)
        (Path(base_out) / "sweep_summary.csv").write_text("\n".join(lines) + "\n", encoding="ascii")
    return results


def simulate_with_outputs(cfg, geom=None, band_deg=5.0, plot=False):
    """CLI-facing single run: log, metrics, optional CSV/summary/SVG files."""
    log = run_experiment(cfg, geom=geom)
    m = compute_metrics(log, band_deg)
    if cfg.out_dir:
        out = Path(cfg.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        summary = [
            f"scenario = {cfg.scenario}",
            f"mode = {cfg.mode}",
            f"desired_angle_deg = {cfg.desired_angle_deg:.6f}",
            f"rise_time_s = {_fmt(m.rise_time_s, 6)}",
            f"steady_state_error_deg = {m.steady_state_error_deg:.6f}",
            f"error_band_deg = {m.error_band_deg:.6f}",
            f"overshoot_deg = {m.overshoot_deg:.6f}",
            f"settled = {str(m.settled).lower()}",
        ]
        (out / f"{cfg.scenario}_{cfg.mode}_metrics.kv").write_text("\n".join(summary) + "\n", encoding="ascii")
        if plot:
            emit_plot(log, out / f"{cfg.scenario}_{cfg.mode}.svg")
    return log, m
