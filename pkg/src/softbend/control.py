"""Closed-loop bang-bang bending-angle controller with deadbands.

The angle loop is supervisory: a positive angle error beyond the
deadband opens the valve (and powers the SMA wire in hybrid mode), a
negative one closes it and cuts SMA power. The pressure prediction acts
only as an open interlock: the valve never opens while the measured
pressure already exceeds the prediction by more than the pressure
deadband.
"""

from dataclasses import dataclass

from .errors import DomainError

PNEUMATIC_ONLY = "pneumatic_only"
HYBRID = "hybrid"
MODES = (PNEUMATIC_ONLY, HYBRID)

OPEN = "open"
CLOSE = "close"
HOLD = "hold"

DESIRED_ANGLE_RANGE = (10.0, 75.0)


@dataclass(frozen=True)
class ControllerConfig:
    mode: str
    desired_angle_deg: float
    angle_deadband_deg: float = 0.5
    pressure_deadband_kpa: float = 1.0
    control_period_s: float = 0.1
    stepper_rate_steps_per_s: float = 200.0
    steps_full_travel: int = 400

    def __post_init__(self):
        if self.mode not in MODES:
            raise DomainError(f"mode must be one of {MODES}, got {self.mode!r}")
        lo, hi = DESIRED_ANGLE_RANGE
        if not lo <= self.desired_angle_deg <= hi:
            raise DomainError(f"desired angle must be in [{lo}, {hi}] deg, got {self.desired_angle_deg}")
        if self.angle_deadband_deg < 0 or self.pressure_deadband_kpa < 0:
            raise DomainError("deadbands must be non-negative")
        if self.control_period_s <= 0:
            raise DomainError("control_period_s must be positive")
        if self.stepper_rate_steps_per_s <= 0 or self.steps_full_travel <= 0:
            raise DomainError("stepper parameters must be positive")


@dataclass(frozen=True)
class ValveState:
    step_position: int = 0
    steps_full_travel: int = 400

    @property
    def opening(self):
        return self.step_position / self.steps_full_travel


@dataclass(frozen=True)
class ControlCommand:
    valve_direction: str
    sma_power: bool


@dataclass(frozen=True)
class ErrorSignals:
    e_p: float
    e_alpha: float


def pressure_error(p_pred, p_det):
    return p_pred - p_det


def angle_error(alpha_des, alpha_det):
    return alpha_des - alpha_det


def control_step(cfg, errs):
    """Pure decision: same errors and config always give the same command."""
    if errs.e_alpha > cfg.angle_deadband_deg:
        blocked = errs.e_p <= -cfg.pressure_deadband_kpa
        direction = HOLD if blocked else OPEN
        sma = cfg.mode == HYBRID
        return ControlCommand(direction, sma)
    if errs.e_alpha < -cfg.angle_deadband_deg:
        return ControlCommand(CLOSE, False)
    return ControlCommand(HOLD, False)


def valve_step(valve, cmd, dt, cfg):
    """Advance the stepper-driven valve one interval in the commanded direction."""
    if dt <= 0:
        raise DomainError(f"dt must be positive, got {dt}")
    if cmd.valve_direction == HOLD:
        return valve
    delta = int(cfg.stepper_rate_steps_per_s * dt + 0.5)
    pos = valve.step_position + (delta if cmd.valve_direction == OPEN else -delta)
    pos = min(max(pos, 0), cfg.steps_full_travel)
    return ValveState(pos, cfg.steps_full_travel)
