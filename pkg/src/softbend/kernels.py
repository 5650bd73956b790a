"""Backend selection for the hot raster/image kernels.

SOFTBEND_BACKEND=numpy forces the numpy/scipy fallback, =numba requires
numba; unset prefers numba and silently falls back when it is missing.
"""

import os

_requested = os.environ.get("SOFTBEND_BACKEND", "").strip().lower()
if _requested not in ("", "numba", "numpy"):
    raise RuntimeError(f"SOFTBEND_BACKEND must be 'numba' or 'numpy', got {_requested!r}")

if _requested == "numpy":
    from . import _kernels_numpy as _impl

    BACKEND = "numpy"
else:
    try:
        from . import _kernels_numba as _impl

        BACKEND = "numba"
    except ImportError:
        if _requested == "numba":
            raise
        from . import _kernels_numpy as _impl

        BACKEND = "numpy"

stamp_discs = _impl.stamp_discs
largest_component = _impl.largest_component
geodesic = _impl.geodesic
distance_to_background = _impl.distance_to_background
