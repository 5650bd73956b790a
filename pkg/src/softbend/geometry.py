"""Constant-curvature backbone kinematics and triangle angle recovery.

The module bends as a circular arc of fixed length in the XZ plane. The
bend angle is recovered from three points: the base B, the tip T, and an
auxiliary point P on the base-tangent ray. Under the constant-curvature
assumption the chord BT makes exactly half the bend angle with the base
tangent, so the bend angle is twice the triangle angle at B.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateTriangleError, DomainError

COS_CLAMP_TOL = 1e-9


@dataclass(frozen=True)
class ModuleGeometry:
    """Static body dimensions of the bending module, in millimeters."""

    length_mm: float = 175.1
    width_mm: float = 20.5
    cap_thickness_mm: float = 2.0
    upper_thickness_mm: float = 3.25
    bottom_thickness_mm: float = 4.1
    inner_radius_mm: float = 7.0

    def __post_init__(self):
        dims = (
            self.length_mm,
            self.width_mm,
            self.cap_thickness_mm,
            self.upper_thickness_mm,
            self.bottom_thickness_mm,
            self.inner_radius_mm,
        )
        if any(v <= 0 for v in dims):
            raise DomainError("all module dimensions must be strictly positive")
        if self.upper_thickness_mm + self.inner_radius_mm > self.width_mm:
            raise DomainError("cross-section does not fit: upper thickness + inner radius > width")


@dataclass(frozen=True)
class BackbonePose:
    """A sampled backbone arc at one bend angle.

    arc_points is an (n, 2) array of XZ positions in millimeters starting
    at base_point and leaving it along base_tangent.
    """

    bend_angle_deg: float
    base_point: np.ndarray
    base_tangent: np.ndarray
    arc_points: np.ndarray


@dataclass(frozen=True)
class TrianglePoints:
    """Base B, tip T, and auxiliary tangent-ray point P with side lengths.

    Sides follow the angle-at-B convention: a = |PT| (opposite side),
    b = |BP|, c = |BT|.
    """

    B: np.ndarray
    T: np.ndarray
    P: np.ndarray
    a: float = field(init=False)
    b: float = field(init=False)
    c: float = field(init=False)
    degenerate: bool = False

    def __post_init__(self):
        object.__setattr__(self, "a", float(np.hypot(*(self.P - self.T))))
        object.__setattr__(self, "b", float(np.hypot(*(self.B - self.P))))
        object.__setattr__(self, "c", float(np.hypot(*(self.B - self.T))))


def law_of_cosines_angle(a, b, c):
    """Angle in degrees opposite side a, between sides b and c."""
    if b <= 0 or c <= 0:
        raise DomainError(f"sides b and c must be positive, got b={b}, c={c}")
    arg = (b * b + c * c - a * a) / (2.0 * b * c)
    if arg > 1.0 + COS_CLAMP_TOL or arg < -1.0 - COS_CLAMP_TOL:
        raise DegenerateTriangleError(f"cosine argument {arg} outside [-1, 1]")
    arg = min(1.0, max(-1.0, arg))
    return math.degrees(math.acos(arg))


def backbone_from_angle(geom, bend_angle_deg, samples=200, base_point=(0.0, 0.0), base_tangent=(1.0, 0.0)):
    """Sample the constant-curvature backbone for a given total bend angle.

    For bend angle theta > 0 the backbone is a circular arc of radius
    L / theta_rad turning theta in total, curving toward the left of the
    tangent; theta = 0 gives a straight segment.
    """
    if not 0.0 <= bend_angle_deg <= 180.0:
        raise DomainError(f"bend angle must be in [0, 180] deg, got {bend_angle_deg}")
    if samples < 2:
        raise DomainError(f"need at least 2 samples, got {samples}")
    base = np.asarray(base_point, dtype=float)
    tangent = np.asarray(base_tangent, dtype=float)
    tangent = tangent / np.hypot(*tangent)
    normal = np.array([-tangent[1], tangent[0]])
    s = np.linspace(0.0, geom.length_mm, samples)
    if bend_angle_deg == 0.0:
        pts = base[None, :] + s[:, None] * tangent[None, :]
    else:
        theta = math.radians(bend_angle_deg)
        r = geom.length_mm / theta
        phi = s / r
        pts = base[None, :] + r * (
            np.sin(phi)[:, None] * tangent[None, :] + (1.0 - np.cos(phi))[:, None] * normal[None, :]
        )
    return BackbonePose(
        bend_angle_deg=float(bend_angle_deg),
        base_point=base,
        base_tangent=tangent,
        arc_points=pts,
    )


def triangle_from_backbone(pose, aux_distance):
    """Reduce a pose to the (B, T, P) triangle used for angle recovery."""
    if aux_distance <= 0:
        raise DomainError(f"aux_distance must be positive, got {aux_distance}")
    B = pose.base_point
    T = pose.arc_points[-1]
    if np.hypot(*(T - B)) < 1e-12:
        raise DegenerateTriangleError("tip coincides with base")
    P = B + aux_distance * pose.base_tangent
    return TrianglePoints(B=B, T=T, P=P)


def bend_angle_from_triangle(tri):
    """Bend angle in degrees from a (B, T, P) triangle.

    Returns (angle_deg, degenerate). Collinear or otherwise degenerate
    triangles report 0 deg with the flag set, matching the straight
    module at rest.
    """
    if tri.degenerate:
        return 0.0, True
    try:
        half = law_of_cosines_angle(tri.a, tri.b, tri.c)
    except DegenerateTriangleError:
        return 0.0, True
    return min(2.0 * half, 180.0), False
