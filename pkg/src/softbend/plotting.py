"""Self-contained SVG plot of a run: measured angle vs desired angle."""

from .errors import DomainError

WIDTH = 800
HEIGHT = 480
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 60, 20, 20, 45

MEASURED_COLOR = "#2ca02c"  # green trace: camera-detected angle
DESIRED_COLOR = "#d62728"  # red trace: desired angle


def _ticks(lo, hi, step):
    out = []
    v = lo
    while v <= hi + 1e-9:
        out.append(v)
        v += step
    return out


def emit_plot(log, path):
    """Write an SVG with exactly two polyline traces over time."""
    if len(log) == 0:
        raise DomainError("cannot plot an empty run log")
    t = log.t_s
    meas = log.column("angle_meas_deg")
    desired = log.column("desired_deg")

    t_max = float(t[-1])
    y_max = max(90.0, float(meas.max()) + 10.0, float(desired.max()) + 10.0)
    plot_w = WIDTH - MARGIN_L - MARGIN_R
    plot_h = HEIGHT - MARGIN_T - MARGIN_B

    def sx(v):
        return MARGIN_L + plot_w * v / t_max

    def sy(v):
        return MARGIN_T + plot_h * (1.0 - v / y_max)

    def polyline(ts, vs, color):
        pts = " ".join(f"{sx(a):.2f},{sy(b):.2f}" for a, b in zip(ts, vs))
        return f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>'

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{plot_w}" height="{plot_h}" '
        'fill="none" stroke="black" stroke-width="1"/>',
    ]
    t_step = 10.0 if t_max > 20 else max(t_max / 7.0, 1e-9)
    for tick in _ticks(0.0, t_max, t_step):
        x = sx(tick)
        parts.append(f'<line x1="{x:.2f}" y1="{HEIGHT - MARGIN_B}" x2="{x:.2f}" y2="{HEIGHT - MARGIN_B + 5}" stroke="black"/>')
        parts.append(f'<text x="{x:.2f}" y="{HEIGHT - MARGIN_B + 18}" font-size="11" text-anchor="middle">{tick:g}</text>')
    for tick in _ticks(0.0, y_max, 15.0):
        y = sy(tick)
        parts.append(f'<line x1="{MARGIN_L - 5}" y1="{y:.2f}" x2="{MARGIN_L}" y2="{y:.2f}" stroke="black"/>')
        parts.append(f'<text x="{MARGIN_L - 8}" y="{y + 4:.2f}" font-size="11" text-anchor="end">{tick:g}</text>')
    parts.append(
        f'<text x="{MARGIN_L + plot_w / 2:.2f}" y="{HEIGHT - 8}" font-size="13" text-anchor="middle">time (s)</text>'
    )
    parts.append(
        f'<text x="15" y="{MARGIN_T + plot_h / 2:.2f}" font-size="13" text-anchor="middle" '
        f'transform="rotate(-90 15 {MARGIN_T + plot_h / 2:.2f})">angle (deg)</text>'
    )
    parts.append(polyline(t, desired, DESIRED_COLOR))
    parts.append(polyline(t, meas, MEASURED_COLOR))
    parts.append("</svg>")
    svg = "\n".join(parts) + "\n"
    with open(path, "w", encoding="ascii", newline="\n") as f:
        f.write(svg)
