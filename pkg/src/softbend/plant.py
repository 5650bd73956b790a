"""Testbed physics: chamber pressure, SMA wire thermo-mechanics, sensors.

The quasi-static pressure-to-angle map is a saturating piecewise-linear
stand-in calibrated so that 210 kPa maps to 180 deg with no SMA strain.
The SMA follows first-order Joule heating / convective cooling with
cosine phase-transformation kinetics: the martensite fraction moves only
along its active branch (heating in [A_s, A_f], cooling in [M_f, M_s])
and is monotone along each branch, which produces the actuation /
deactivation asymmetry the hybrid mode relies on.
"""

import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

MAX_STEP_S = 0.1


@dataclass(frozen=True)
class SmaWireParams:
    diameter_mm: float = 0.25
    length_mm: float = 1000.0
    poisson_ratio: float = 0.33
    max_recovery_strain: float = 0.04
    austenite_start_c: float = 45.0
    austenite_finish_c: float = 70.0
    martensite_start_c: float = 55.0
    martensite_finish_c: float = 30.0
    resistance_ohm_per_m: float = 55.0
    heat_capacity_j_per_kg_k: float = 460.0
    density_kg_m3: float = 6450.0
    convection_w_per_m2_k: float = 65.0
    drive_current_a: float = 1.2

    def __post_init__(self):
        if self.austenite_finish_c <= self.austenite_start_c:
            raise DomainError("austenite_finish_c must exceed austenite_start_c")
        if self.martensite_start_c <= self.martensite_finish_c:
            raise DomainError("martensite_start_c must exceed martensite_finish_c")
        if not 0.0 < self.max_recovery_strain <= 0.08:
            raise DomainError("max_recovery_strain must be in (0, 0.08]")
        if min(self.diameter_mm, self.length_mm, self.resistance_ohm_per_m,
               self.heat_capacity_j_per_kg_k, self.density_kg_m3,
               self.convection_w_per_m2_k) <= 0:
            raise DomainError("SMA physical constants must be positive")

    @property
    def heat_capacity_j_per_k(self):
        """Total wire heat capacity m*c_p in J/K."""
        area = math.pi * (self.diameter_mm * 1e-3 / 2.0) ** 2
        mass = self.density_kg_m3 * area * self.length_mm * 1e-3
        return mass * self.heat_capacity_j_per_kg_k

    @property
    def convective_loss_w_per_k(self):
        """h*A_surface in W/K."""
        surface = math.pi * self.diameter_mm * 1e-3 * self.length_mm * 1e-3
        return self.convection_w_per_m2_k * surface

    @property
    def drive_power_w(self):
        return self.drive_current_a ** 2 * self.resistance_ohm_per_m * self.length_mm * 1e-3


@dataclass(frozen=True)
class PneumaticParams:
    supply_kpa: float = 210.0
    fill_rate_per_s: float = 0.25
    leak_rate_per_s: float = 0.01
    dead_time_s: float = 0.0
    threshold_kpa: float = 30.0
    gain_deg_per_kpa: float = 1.0
    alpha_max_deg: float = 180.0
    c_sma_deg_per_strain: float = 750.0

    def __post_init__(self):
        if self.supply_kpa <= 0 or self.gain_deg_per_kpa <= 0:
            raise DomainError("supply_kpa and gain_deg_per_kpa must be positive")
        if not 0.0 <= self.threshold_kpa < self.supply_kpa:
            raise DomainError("threshold_kpa must be in [0, supply_kpa)")
        if self.fill_rate_per_s < 0 or self.leak_rate_per_s < 0 or self.dead_time_s < 0:
            raise DomainError("rates and dead time must be non-negative")


@dataclass
class PlantState:
    t_s: float = 0.0
    pressure_kpa: float = 0.0
    angle_true_deg: float = 0.0
    sma_temp_c: float = 25.0
    martensite_fraction: float = 1.0
    sma_strain: float = 0.0
    valve_opening: float = 0.0


def forward_angle(pressure_kpa, sma_strain, params):
    """Quasi-static bend angle from chamber pressure and SMA strain."""
    alpha = (
        params.gain_deg_per_kpa * max(0.0, pressure_kpa - params.threshold_kpa)
        + params.c_sma_deg_per_strain * sma_strain
    )
    return min(max(alpha, 0.0), params.alpha_max_deg)


def predict_pressure(alpha_des, sma_strain, params, tol_deg=0.01):
    """Smallest pressure whose forward angle reaches alpha_des.

    Boolean bisection on the monotone forward map. Returns
    (pressure_kpa, unreachable); when even the supply pressure falls
    short, returns (supply_kpa, True).
    """
    if not 0.0 <= alpha_des <= params.alpha_max_deg:
        raise DomainError(f"alpha_des must be in [0, {params.alpha_max_deg}], got {alpha_des}")
    if forward_angle(0.0, sma_strain, params) >= alpha_des:
        return 0.0, False
    if forward_angle(params.supply_kpa, sma_strain, params) < alpha_des - tol_deg:
        return params.supply_kpa, True
    lo, hi = 0.0, params.supply_kpa
    while params.gain_deg_per_kpa * (hi - lo) > 0.5 * tol_deg:
        mid = 0.5 * (lo + hi)
        if forward_angle(mid, sma_strain, params) >= alpha_des:
            hi = mid
        else:
            lo = mid
    return hi, False


def pressure_step(pressure_kpa, valve_opening, params, dt):
    """One explicit Euler step of the fill/leak pressure dynamics.

    valve_opening is the opening already delayed by any dead time.
    """
    if not 0.0 < dt <= MAX_STEP_S:
        raise DomainError(f"dt must be in (0, {MAX_STEP_S}] s, got {dt}")
    p = pressure_kpa + dt * (
        params.fill_rate_per_s * valve_opening * (params.supply_kpa - pressure_kpa)
        - params.leak_rate_per_s * pressure_kpa
    )
    return min(max(p, 0.0), params.supply_kpa)


def sma_step(temp_c, xi, params, powered, ambient_c, dt):
    """One step of wire temperature and phase kinetics.

    Returns (temp_c, xi, strain). The martensite fraction follows the
    cosine transformation law on whichever branch the temperature move
    activates, clamped so each branch is monotone.
    """
    if not 0.0 < dt <= MAX_STEP_S:
        raise DomainError(f"dt must be in (0, {MAX_STEP_S}] s, got {dt}")
    power = params.drive_power_w if powered else 0.0
    t_new = temp_c + dt * (power - params.convective_loss_w_per_k * (temp_c - ambient_c)) / params.heat_capacity_j_per_k

    if t_new > temp_c:  # heating: martensite -> austenite over [A_s, A_f]
        a_s, a_f = params.austenite_start_c, params.austenite_finish_c
        if t_new >= a_f:
            cand = 0.0
        elif t_new > a_s:
            cand = 0.5 * (math.cos(math.pi * (t_new - a_s) / (a_f - a_s)) + 1.0)
        else:
            cand = xi
        xi = min(xi, cand)
    elif t_new < temp_c:  # cooling: austenite -> martensite over [M_s, M_f]
        m_s, m_f = params.martensite_start_c, params.martensite_finish_c
        if t_new <= m_f:
            cand = 1.0
        elif t_new < m_s:
            cand = 0.5 * (math.cos(math.pi * (t_new - m_s) / (m_f - m_s)) + 1.0)
        else:
            cand = xi
        xi = max(xi, cand)

    xi = min(max(xi, 0.0), 1.0)
    strain = params.max_recovery_strain * (1.0 - xi)
    return t_new, xi, strain


class Plant:
    """Single-owner mutable plant advanced by one stepping loop.

    Sub-states advance in fixed order each step: delayed valve opening,
    pressure, SMA, then the quasi-static angle.
    """

    def __init__(self, pneumatic=None, sma=None, ambient_c=25.0, dt_s=0.01, state=None):
        self.pneumatic = pneumatic or PneumaticParams()
        self.sma = sma or SmaWireParams()
        self.ambient_c = ambient_c
        self.dt_s = dt_s
        self.state = state or PlantState(sma_temp_c=ambient_c)
        delay_steps = int(round(self.pneumatic.dead_time_s / dt_s))
        self._delay = deque([self.state.valve_opening] * delay_steps) if delay_steps > 0 else None

    def step(self, valve_opening, sma_powered):
        s = self.state
        if self._delay is not None:
            u_eff = self._delay.popleft()
            self._delay.append(valve_opening)
        else:
            u_eff = valve_opening
        pressure = pressure_step(s.pressure_kpa, u_eff, self.pneumatic, self.dt_s)
        temp, xi, strain = sma_step(
            s.sma_temp_c, s.martensite_fraction, self.sma, sma_powered, self.ambient_c, self.dt_s
        )
        angle = forward_angle(pressure, strain, self.pneumatic)
        self.state = PlantState(
            t_s=s.t_s + self.dt_s,
            pressure_kpa=pressure,
            angle_true_deg=angle,
            sma_temp_c=temp,
            martensite_fraction=xi,
            sma_strain=strain,
            valve_opening=valve_opening,
        )
        return self.state


@dataclass
class PressureSensor:
    """Clamped, quantized, optionally noisy pressure reading stream.

    One deterministic pseudo-random stream per sensor; reproducibility
    outranks realism.
    """

    range_min_kpa: float = 0.0
    range_max_kpa: float = 200.0
    noise_sigma_kpa: float = 0.5
    quantization_bits: int = 10
    rng_seed: int = 0
    _rng: np.random.Generator = field(init=False, repr=False)

    def __post_init__(self):
        if self.range_max_kpa <= self.range_min_kpa:
            raise DomainError("sensor range must be non-empty")
        if not 1 <= self.quantization_bits <= 24:
            raise DomainError("quantization_bits must be in [1, 24]")
        self._rng = np.random.default_rng(self.rng_seed)

    def read(self, pressure_kpa):
        p = pressure_kpa
        if self.noise_sigma_kpa > 0.0:
            p += self.noise_sigma_kpa * float(self._rng.standard_normal())
        p = min(max(p, self.range_min_kpa), self.range_max_kpa)
        quantum = (self.range_max_kpa - self.range_min_kpa) / (2 ** self.quantization_bits - 1)
        return self.range_min_kpa + round((p - self.range_min_kpa) / quantum) * quantum


def read_pressure(state, sensor):
    """Sensor reading of the instantaneous chamber pressure."""
    return sensor.read(state.pressure_kpa)
