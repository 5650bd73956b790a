"""softbend: deterministic twin of a pneumatic/SMA soft bending module.

Simulates the plant, valve, sensors, and camera of a desk-scale bending
testbed, measures the bend angle through a synthetic image-processing
pipeline, and reproduces closed-loop performance metrics for the
pneumatic-only and hybrid (pneumatic + SMA wire) actuation modes.
"""

__version__ = "0.1.0"

from .config import ExperimentConfig, load_config, parse_config
from .control import ControlCommand, ControllerConfig, ErrorSignals, ValveState
from .experiment import compare_modes, run_experiment, sweep
from .geometry import (
    BackbonePose,
    ModuleGeometry,
    TrianglePoints,
    backbone_from_angle,
    bend_angle_from_triangle,
    law_of_cosines_angle,
    triangle_from_backbone,
)
from .imaging import CameraIntrinsics, read_pgm, render_silhouette, synth_frame, write_pgm
from .kernels import BACKEND
from .metrics import ComparisonReport, Metrics, compute_metrics
from .plant import (
    Plant,
    PlantState,
    PneumaticParams,
    PressureSensor,
    SmaWireParams,
    forward_angle,
    predict_pressure,
    pressure_step,
    read_pressure,
    sma_step,
)
from .runlog import RunLog, read_csv, write_csv
from .vision import AngleMeasurement, estimate_angle, extract_corners, largest_component, threshold

__all__ = [
    "AngleMeasurement",
    "BACKEND",
    "BackbonePose",
    "CameraIntrinsics",
    "ComparisonReport",
    "ControlCommand",
    "ControllerConfig",
    "ErrorSignals",
    "ExperimentConfig",
    "Metrics",
    "ModuleGeometry",
    "Plant",
    "PlantState",
    "PneumaticParams",
    "PressureSensor",
    "RunLog",
    "SmaWireParams",
    "TrianglePoints",
    "ValveState",
    "backbone_from_angle",
    "bend_angle_from_triangle",
    "compare_modes",
    "compute_metrics",
    "estimate_angle",
    "extract_corners",
    "forward_angle",
    "largest_component",
    "law_of_cosines_angle",
    "load_config",
    "parse_config",
    "predict_pressure",
    "pressure_step",
    "read_csv",
    "read_pgm",
    "read_pressure",
    "render_silhouette",
    "run_experiment",
    "sma_step",
    "sweep",
    "synth_frame",
    "threshold",
    "triangle_from_backbone",
    "write_csv",
    "write_pgm",
]
