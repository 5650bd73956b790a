"""Synthetic camera: silhouette rasterization, frame synthesis, PGM I/O.

Images are numpy arrays indexed [row, col] = [y, x]; binary masks are
uint8 with foreground 1, grayscale frames are uint8. World coordinates
are XZ millimeters with the camera y axis pointing down, so
x_mm = (px - origin_x) * mm_per_px and z_mm = (origin_y - py) * mm_per_px.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DomainError, OutOfViewError

MIN_IMAGE_SIDE = 16


@dataclass(frozen=True)
class CameraIntrinsics:
    width_px: int = 640
    height_px: int = 480
    mm_per_px: float = 0.5
    origin_x_px: float = 60.0
    origin_y_px: float = 400.0
    frame_rate_hz: float = 10.0

    def __post_init__(self):
        if self.width_px < MIN_IMAGE_SIDE or self.height_px < MIN_IMAGE_SIDE:
            raise DomainError("camera frame must be at least 16x16 px")
        if self.mm_per_px <= 0:
            raise DomainError("mm_per_px must be positive")
        if self.frame_rate_hz <= 0:
            raise DomainError("frame_rate_hz must be positive")

    def to_px(self, points_mm):
        """Map (n, 2) XZ millimeter points to float pixel coordinates."""
        pts = np.asarray(points_mm, dtype=float)
        px = self.origin_x_px + pts[..., 0] / self.mm_per_px
        py = self.origin_y_px - pts[..., 1] / self.mm_per_px
        return px, py

    def to_mm(self, px, py):
        """Inverse of to_px for scalar or array pixel coordinates."""
        x = (np.asarray(px, dtype=float) - self.origin_x_px) * self.mm_per_px
        z = (self.origin_y_px - np.asarray(py, dtype=float)) * self.mm_per_px
        return x, z


def _resample_polyline(points, spacing):
    """Resample a polyline at roughly `spacing` intervals, endpoints kept."""
    pts = np.asarray(points, dtype=float)
    seg = np.hypot(*np.diff(pts, axis=0).T)
    s = np.concatenate(([0.0], np.cumsum(seg)))
    total = s[-1]
    if total == 0.0:
        return pts[:1]
    n = max(int(np.ceil(total / spacing)) + 1, 2)
    si = np.linspace(0.0, total, n)
    x = np.interp(si, s, pts[:, 0])
    y = np.interp(si, s, pts[:, 1])
    return np.stack([x, y], axis=1)


def render_silhouette(pose, geom, cam):
    """Rasterize the swept module body as a binary silhouette.

    The body is the backbone dilated by half the module width. Raises
    OutOfViewError when any part would fall outside the frame. Pure
    function: identical inputs yield bit-identical masks.
    """
    radius_px = 0.5 * geom.width_mm / cam.mm_per_px
    dense = _resample_polyline(pose.arc_points, spacing=0.7 * cam.mm_per_px)
    cx, cy = cam.to_px(dense)
    if (
        cx.min() - radius_px < 0
        or cx.max() + radius_px > cam.width_px - 1
        or cy.min() - radius_px < 0
        or cy.max() + radius_px > cam.height_px - 1
    ):
        raise OutOfViewError("module silhouette extends outside the camera frame")
    mask = np.zeros((cam.height_px, cam.width_px), dtype=np.uint8)
    kernels.stamp_discs(mask, np.ascontiguousarray(cx), np.ascontiguousarray(cy), radius_px)
    return mask


def synth_frame(mask, fg_level=220, bg_level=30, noise_sigma=0.0, rng=None):
    """Turn a silhouette mask into an 8-bit grayscale camera frame."""
    frame = np.where(mask != 0, np.uint8(fg_level), np.uint8(bg_level))
    if noise_sigma > 0.0:
        if rng is None:
            raise DomainError("noise_sigma > 0 requires an rng")
        noisy = frame.astype(np.float64) + rng.normal(0.0, noise_sigma, frame.shape)
        frame = np.clip(np.rint(noisy), 0, 255).astype(np.uint8)
    return frame


def write_pgm(path, gray):
    """Write an 8-bit grayscale image as binary PGM (P5), bit-exact header."""
    gray = np.asarray(gray)
    if gray.dtype != np.uint8 or gray.ndim != 2:
        raise DomainError("write_pgm expects a 2-D uint8 array")
    h, w = gray.shape
    with open(path, "wb") as f:
        f.write(f"P5\n{w} {h}\n255\n".encode("ascii"))
        f.write(gray.tobytes())


def read_pgm(path):
    """Read a binary PGM (P5) file into a 2-D uint8 array."""
    with open(path, "rb") as f:
        data = f.read()
    fields = []
    pos = 0
    while len(fields) < 4:
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        if pos < len(data) and data[pos : pos + 1] == b"#":
            eol = data.find(b"\n", pos)
            pos = len(data) if eol < 0 else eol + 1
            continue
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace():
            pos += 1
        if start == pos:
            raise DomainError(f"truncated PGM header in {path}")
        fields.append(data[start:pos])
    pos += 1  # single whitespace byte after maxval
    magic, w, h, maxval = fields
    if magic != b"P5":
        raise DomainError(f"not a binary PGM (P5) file: {path}")
    w, h, maxval = int(w), int(h), int(maxval)
    if maxval != 255:
        raise DomainError(f"only maxval 255 supported, got {maxval}")
    pixels = data[pos : pos + w * h]
    if len(pixels) != w * h:
        raise DomainError(f"PGM pixel data truncated in {path}")
    return np.frombuffer(pixels, dtype=np.uint8).reshape(h, w).copy()
