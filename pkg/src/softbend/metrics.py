"""Performance metrics: rise time, steady-state error, band, overshoot.

Rise time is first crossing of 90% of the desired angle (0-90% rise,
robust to steady-state oscillation). Steady-state statistics are taken
over the final 20 s of the run; the error band is the max absolute
angle error there, the stricter reading of an "average error" band.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

STEADY_WINDOW_S = 20.0
RISE_FRACTION = 0.9
MIN_LOG_SPAN_S = 30.0


@dataclass(frozen=True)
class Metrics:
    rise_time_s: float | None
    steady_state_error_deg: float
    error_band_deg: float
    overshoot_deg: float
    settled: bool


@dataclass(frozen=True)
class ComparisonReport:
    pneumatic: Metrics
    hybrid: Metrics
    # pneumatic/hybrid ratios; > 1 means the hybrid mode is better
    rise_time_ratio: float | None
    error_band_ratio: float | None
    ordering_pass: bool


def compute_metrics(log, band_deg):
    """Metrics for one run; `band_deg` is the settling criterion."""
    if log.duration_s < MIN_LOG_SPAN_S:
        raise DomainError(f"log spans {log.duration_s:.1f} s, need at least {MIN_LOG_SPAN_S}")
    t = log.t_s
    desired = float(log.column("desired_deg")[-1])
    meas = log.column("angle_meas_deg")
    err = np.abs(log.column("e_alpha_deg"))

    crossed = np.nonzero(meas >= RISE_FRACTION * desired)[0]
    rise = float(t[crossed[0]] - t[0]) if crossed.size else None

    window = t >= t[-1] - (STEADY_WINDOW_S - (t[1] - t[0]))
    sse = float(err[window].mean())
    band = float(err[window].max())
    overshoot = float(max(np.max(meas - desired), 0.0))
    settled = rise is not None and band <= band_deg
    return Metrics(
        rise_time_s=rise,
        steady_state_error_deg=sse,
        error_band_deg=band,
        overshoot_deg=overshoot,
        settled=settled,
    )


def build_comparison(pneumatic, hybrid):
    """Combine per-mode metrics into the mode-comparison report."""
    both_settled = pneumatic.settled and hybrid.settled
    rise_ratio = None
    band_ratio = None
    if both_settled:
        if hybrid.rise_time_s > 0:
            rise_ratio = pneumatic.rise_time_s / hybrid.rise_time_s
        if hybrid.error_band_deg > 0:
            band_ratio = pneumatic.error_band_deg / hybrid.error_band_deg
    ordering = (
        both_settled
        and hybrid.rise_time_s < pneumatic.rise_time_s
        and hybrid.error_band_deg <= pneumatic.error_band_deg
    )
    return ComparisonReport(
        pneumatic=pneumatic,
        hybrid=hybrid,
        rise_time_ratio=rise_ratio,
        error_band_ratio=band_ratio,
        ordering_pass=ordering,
    )
