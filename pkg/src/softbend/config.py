"""Scenario configuration: line-based `key = value` files with `#` comments.

Keys use dotted block prefixes (`plant.supply_kpa = 210`). Unknown keys,
duplicate keys, missing required keys, and out-of-range values are all
hard errors carrying line numbers.
"""

from dataclasses import dataclass, field, fields, replace

from .control import MODES, DESIRED_ANGLE_RANGE
from .errors import ConfigError, DomainError
from .imaging import CameraIntrinsics
from .plant import PneumaticParams, SmaWireParams


@dataclass(frozen=True)
class VisionParams:
    threshold_level: int = 128
    aux_distance_px: float = 60.0
    min_component_px: int = 50

    def __post_init__(self):
        if not 0 <= self.threshold_level <= 255:
            raise DomainError("vision.threshold_level must be in [0, 255]")
        if self.aux_distance_px <= 0 or self.min_component_px <= 0:
            raise DomainError("vision parameters must be positive")


@dataclass(frozen=True)
class SensorParams:
    pressure_noise_sigma_kpa: float = 0.5
    pressure_quantization_bits: int = 10
    pressure_range_min_kpa: float = 0.0
    pressure_range_max_kpa: float = 200.0


@dataclass(frozen=True)
class ControlParams:
    angle_deadband_deg: float = 0.5
    pressure_deadband_kpa: float = 1.0
    stepper_rate_steps_per_s: float = 200.0
    steps_full_travel: int = 400


@dataclass(frozen=True)
class CameraParams:
    width_px: int = 640
    height_px: int = 480
    mm_per_px: float = 0.5
    origin_x_px: float = 60.0
    origin_y_px: float = 400.0
    frame_rate_hz: float = 10.0
    fg_level: int = 220
    bg_level: int = 30
    noise_sigma: float = 0.0

    def intrinsics(self):
        return CameraIntrinsics(
            width_px=self.width_px,
            height_px=self.height_px,
            mm_per_px=self.mm_per_px,
            origin_x_px=self.origin_x_px,
            origin_y_px=self.origin_y_px,
            frame_rate_hz=self.frame_rate_hz,
        )


@dataclass(frozen=True)
class ExperimentConfig:
    mode: str
    desired_angle_deg: float
    scenario: str = "default"
    duration_s: float = 70.0
    dt_s: float = 0.01
    control_period_s: float = 0.1
    rng_seed: int = 0
    out_dir: str = ""
    sma_ambient_c: float = 25.0
    # dead time resolved per mode; None falls back to plant.dead_time_s
    dead_time_pneumatic_s: float | None = None
    dead_time_hybrid_s: float | None = None
    camera: CameraParams = field(default_factory=CameraParams)
    vision: VisionParams = field(default_factory=VisionParams)
    plant: PneumaticParams = field(default_factory=PneumaticParams)
    sma: SmaWireParams = field(default_factory=SmaWireParams)
    sensor: SensorParams = field(default_factory=SensorParams)
    control: ControlParams = field(default_factory=ControlParams)

    def __post_init__(self):
        if self.mode not in MODES:
            raise DomainError(f"mode must be one of {MODES}, got {self.mode!r}")
        lo, hi = DESIRED_ANGLE_RANGE
        if not lo <= self.desired_angle_deg <= hi:
            raise DomainError(f"desired_angle_deg must be in [{lo}, {hi}], got {self.desired_angle_deg}")
        if self.duration_s <= 0:
            raise DomainError("duration_s must be positive")
        if self.dt_s <= 0 or self.dt_s > self.control_period_s:
            raise DomainError("need 0 < dt_s <= control_period_s")
        ratio = self.control_period_s / self.dt_s
        if abs(ratio - round(ratio)) > 1e-9:
            raise DomainError("control_period_s must be an integer multiple of dt_s")
        for name in ("dead_time_pneumatic_s", "dead_time_hybrid_s"):
            v = getattr(self, name)
            if v is not None and v < 0:
                raise DomainError(f"{name} must be non-negative")

    def dead_time_for_mode(self, mode):
        override = self.dead_time_pneumatic_s if mode == "pneumatic_only" else self.dead_time_hybrid_s
        return self.plant.dead_time_s if override is None else override

    def with_updates(self, **top_level):
        return replace(self, **top_level)


def _parse_bool(text):
    t = text.strip().lower()
    if t in ("true", "1", "yes", "on"):
        return True
    if t in ("false", "0", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


# key -> (block attr or None, field name, caster)
_SCHEMA = {}


def _register(block, cls, prefix, casts=None):
    for f in fields(cls):
        if prefix == "" and f.name in ("camera", "vision", "plant", "sma", "sensor", "control"):
            continue
        key = f"{prefix}{f.name}" if prefix else f.name
        caster = (casts or {}).get(f.name)
        if caster is None:
            t = f.type
            if t is int or t == "int":
                caster = int
            elif t is bool or t == "bool":
                caster = _parse_bool
            elif t is str or t == "str":
                caster = str
            else:
                caster = float
        _SCHEMA[key] = (block, f.name, caster)


_register("camera", CameraParams, "camera.", casts={"width_px": int, "height_px": int, "fg_level": int, "bg_level": int})
_register("vision", VisionParams, "vision.", casts={"threshold_level": int, "min_component_px": int})
_register("plant", PneumaticParams, "plant.")
_register("sma", SmaWireParams, "sma.")
_register("sensor", SensorParams, "sensor.", casts={"pressure_quantization_bits": int})
_register("control", ControlParams, "control.", casts={"steps_full_travel": int})
_register(None, ExperimentConfig, "", casts={"rng_seed": int, "mode": str, "scenario": str, "out_dir": str})
# per-mode dead times are optional floats, not auto-derivable from the annotation
_SCHEMA["dead_time_pneumatic_s"] = (None, "dead_time_pneumatic_s", float)
_SCHEMA["dead_time_hybrid_s"] = (None, "dead_time_hybrid_s", float)
_SCHEMA["sma.ambient_c"] = (None, "sma_ambient_c", float)
del _SCHEMA["sma_ambient_c"]

REQUIRED_KEYS = ("mode", "desired_angle_deg")


def parse_config(text):
    """Parse and fully validate a scenario snippet into an ExperimentConfig."""
    values = {}
    lines = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, val = line.partition("=")
        key = key.strip()
        val = val.strip()
        if not key or not val:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r} (first set on line {lines[key]})")
        if key not in _SCHEMA:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        block, name, caster = _SCHEMA[key]
        try:
            values[key] = caster(val)
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: bad value for {key!r}: {exc}") from exc
        lines[key] = lineno

    for req in REQUIRED_KEYS:
        if req not in values:
            raise ConfigError(f"missing required key {req!r}")

    blocks = {"camera": {}, "vision": {}, "plant": {}, "sma": {}, "sensor": {}, "control": {}}
    top = {}
    for key, value in values.items():
        block, name, _ = _SCHEMA[key]
        if block is None:
            top[name] = value
        else:
            blocks[block][name] = value

    def build(cls, kwargs, label):
        try:
            return cls(**kwargs)
        except DomainError as exc:
            keys = ", ".join(f"{label}.{k} (line {lines[f'{label}.{k}']})" for k in kwargs)
            raise ConfigError(f"invalid {label} block ({keys or 'defaults'}): {exc}") from exc

    camera = build(CameraParams, blocks["camera"], "camera")
    vision = build(VisionParams, blocks["vision"], "vision")
    plant = build(PneumaticParams, blocks["plant"], "plant")
    sma = build(SmaWireParams, blocks["sma"], "sma")
    sensor = build(SensorParams, blocks["sensor"], "sensor")
    control = build(ControlParams, blocks["control"], "control")
    try:
        return ExperimentConfig(
            camera=camera, vision=vision, plant=plant, sma=sma, sensor=sensor, control=control, **top
        )
    except DomainError as exc:
        raise ConfigError(str(exc)) from exc


def load_config(path):
    with open(path, "r", encoding="utf-8") as f:
        return parse_config(f.read())
