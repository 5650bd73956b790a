"""Image-processing pipeline that measures the bend angle from a frame.

threshold -> largest_component -> extract_corners -> bend angle. Corner
extraction reduces the silhouette to its medial band (the ridge of the
distance-to-background field), walks it geodesically from the base, and
takes the tip as the far end of that walk. The base tangent comes from
a circle fit through ring centroids along the near-base band; for a
constant-curvature silhouette those centroids lie on the backbone
circle, so the tangent (and with it the recovered angle) is exact up to
pixelization.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DomainError, NoModuleDetectedError
from .geometry import TrianglePoints, law_of_cosines_angle

DEGENERATE_HALF_ANGLE_DEG = 0.5
MEDIAL_BAND_PX = 1.5
RING_BAND_PX = 2.0
N_RINGS = 14


@dataclass(frozen=True)
class AngleMeasurement:
    angle_deg: float
    timestamp_s: float
    degenerate: bool
    triangle: TrianglePoints


def threshold(gray, level):
    """Foreground mask of pixels with intensity >= level."""
    if not 0 <= level <= 255:
        raise DomainError(f"threshold level must be in [0, 255], got {level}")
    return (np.asarray(gray) >= level).astype(np.uint8)


def largest_component(mask):
    """Keep only the largest 8-connected foreground component."""
    out, size = kernels.largest_component(np.ascontiguousarray(mask, dtype=np.uint8))
    if size == 0:
        raise NoModuleDetectedError("no foreground pixels in frame")
    return out


def _ring_centroid(d, lo, hi):
    ys, xs = np.nonzero((d >= lo) & (d <= hi))
    if ys.size == 0:
        return None
    return float(xs.mean()), float(ys.mean())


def _fit_base_tangent(bx, by, ring_pts):
    """Unit base-tangent estimate from near-base ring centroids.

    Kasa circle fit through the centroids and the base point; for a
    constant-curvature backbone the centroids lie on the backbone circle,
    whose tangent at the base is exact. Near-straight data falls back to
    the principal (line-fit) direction.
    """
    pts = np.array([(bx, by)] + ring_pts, dtype=float)
    centered = pts - pts.mean(axis=0)
    # principal direction via 2x2 covariance eigenvector
    cov = centered.T @ centered
    evals, evecs = np.linalg.eigh(cov)
    line_dir = evecs[:, int(np.argmax(evals))]
    # perpendicular spread of the points around the principal line
    sagitta = float(np.abs(centered @ np.array([-line_dir[1], line_dir[0]])).max())

    tangent = None
    if sagitta > 0.05:
        A = np.column_stack([2.0 * pts[:, 0], 2.0 * pts[:, 1], np.ones(len(pts))])
        rhs = pts[:, 0] ** 2 + pts[:, 1] ** 2
        sol, *_ = np.linalg.lstsq(A, rhs, rcond=None)
        cxc, cyc = sol[0], sol[1]
        radial = np.array([bx - cxc, by - cyc])
        norm = np.hypot(*radial)
        if np.isfinite(norm) and norm > 1e-9:
            tangent = np.array([-radial[1], radial[0]]) / norm
    if tangent is None:
        tangent = line_dir / np.hypot(*line_dir)
    # orient toward the first ring centroid (away from the base)
    toward = np.array([ring_pts[0][0] - bx, ring_pts[0][1] - by])
    if float(tangent @ toward) < 0.0:
        tangent = -tangent
    return tangent


def extract_corners(mask, base_hint, cam, aux_distance_px=60.0, min_component_px=50):
    """Reduce a single-component silhouette to a (B, T, P) triangle in mm.

    base_hint is an (x, y) pixel position at or near the module mount
    point. Raises NoModuleDetectedError for components under
    min_component_px pixels.
    """
    mask = np.asarray(mask)
    ys, xs = np.nonzero(mask)
    if ys.size < min_component_px:
        raise NoModuleDetectedError(f"component has {ys.size} px, need {min_component_px}")

    pad = 2
    y0 = max(int(ys.min()) - pad, 0)
    y1 = min(int(ys.max()) + pad, mask.shape[0] - 1)
    x0 = max(int(xs.min()) - pad, 0)
    x1 = min(int(xs.max()) + pad, mask.shape[1] - 1)
    crop = np.ascontiguousarray(mask[y0 : y1 + 1, x0 : x1 + 1], dtype=np.uint8)

    # medial band: ridge of the distance-to-background field, a thin
    # curve tracking the tube centerline from base cap to tip cap
    dt = kernels.distance_to_background(crop)
    rho = float(dt.max())
    band = np.ascontiguousarray((dt >= rho - MEDIAL_BAND_PX) & (crop != 0), dtype=np.uint8)

    hx, hy = float(base_hint[0]) - x0, float(base_hint[1]) - y0
    bys, bxs = np.nonzero(band)
    near_b = int(np.argmin((bys - hy) ** 2 + (bxs - hx) ** 2))
    gy, gx = int(bys[near_b]), int(bxs[near_b])

    d = kernels.geodesic(band, gy, gx)
    d_max = float(d[band != 0].max())

    tx, ty = _ring_centroid(d, d_max - RING_BAND_PX, d_max)

    c_lo = 2.0 * MEDIAL_BAND_PX + 3.0
    c_hi = max(0.45 * d_max, c_lo + 4.0)
    rings = []
    for c in np.linspace(c_lo, c_hi, N_RINGS):
        q = _ring_centroid(d, c - RING_BAND_PX, c + RING_BAND_PX)
        if q is not None:
            rings.append(q)

    B = np.array(cam.to_mm(gx + x0, gy + y0))
    T = np.array(cam.to_mm(tx + x0, ty + y0))
    if len(rings) < 3:
        # silhouette barely longer than wide: treat as degenerate
        return TrianglePoints(B=B, T=T, P=B + np.array([aux_distance_px * cam.mm_per_px, 0.0]), degenerate=True)

    tangent_px = _fit_base_tangent(gx, gy, rings)
    px_ = gx + aux_distance_px * tangent_px[0]
    py_ = gy + aux_distance_px * tangent_px[1]
    P = np.array(cam.to_mm(px_ + x0, py_ + y0))
    return TrianglePoints(B=B, T=T, P=P)


def estimate_angle(frame, cam, level, base_hint, t, aux_distance_px=60.0, min_component_px=50):
    """Full pipeline from a grayscale frame to an AngleMeasurement."""
    mask = threshold(frame, level)
    comp = largest_component(mask)
    tri = extract_corners(comp, base_hint, cam, aux_distance_px, min_component_px)
    if tri.degenerate:
        return AngleMeasurement(0.0, t, True, tri)
    half = law_of_cosines_angle(tri.a, tri.b, tri.c)
    if half < DEGENERATE_HALF_ANGLE_DEG:
        return AngleMeasurement(0.0, t, True, tri)
    return AngleMeasurement(min(2.0 * half, 180.0), t, False, tri)
