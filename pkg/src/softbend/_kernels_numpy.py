"""Pure numpy/scipy fallback for the raster/image kernels.

Same contracts and (up to last-ulp path-sum effects) same outputs as the
numba backend; used when numba is unavailable or SOFTBEND_BACKEND=numpy.
"""

import numpy as np
from scipy import ndimage, sparse
from scipy.sparse import csgraph

SQRT2 = 1.4142135623730951
SQRT5 = 2.23606797749979

_EIGHT = np.ones((3, 3), dtype=np.uint8)

# One offset per undirected edge of the 16-neighborhood (8-connected plus
# knight moves), weighted by Euclidean step length.
_HALF_OFFSETS = (
    (0, 1, 1.0),
    (1, 0, 1.0),
    (1, 1, SQRT2),
    (1, -1, SQRT2),
    (1, 2, SQRT5),
    (1, -2, SQRT5),
    (2, 1, SQRT5),
    (2, -1, SQRT5),
)


def stamp_discs(mask, cx, cy, radius):
    h, w = mask.shape
    r2 = radius * radius
    for i in range(cx.size):
        x0 = max(int(np.floor(cx[i] - radius)), 0)
        x1 = min(int(np.ceil(cx[i] + radius)), w - 1)
        y0 = max(int(np.floor(cy[i] - radius)), 0)
        y1 = min(int(np.ceil(cy[i] + radius)), h - 1)
        if x1 < x0 or y1 < y0:
            continue
        ys = np.arange(y0, y1 + 1, dtype=np.float64) - cy[i]
        xs = np.arange(x0, x1 + 1, dtype=np.float64) - cx[i]
        hit = ys[:, None] ** 2 + xs[None, :] ** 2 <= r2
        region = mask[y0 : y1 + 1, x0 : x1 + 1]
        region[hit] = 1


def largest_component(mask):
    labels, nlab = ndimage.label(mask, structure=_EIGHT)
    if nlab == 0:
        return np.zeros_like(mask, dtype=np.uint8), 0
    sizes = np.bincount(labels.ravel())
    sizes[0] = 0
    best = int(np.argmax(sizes))  # ties: smallest label = raster-first
    out = (labels == best).astype(np.uint8)
    return out, int(sizes[best])


def distance_to_background(mask):
    """Exact Euclidean distance to the nearest background pixel, 0 outside.

    The numba backend uses the chamfer metric here (within ~2% of
    Euclidean); downstream consumers only threshold this field, so the
    backends may disagree by a fraction of a pixel at band edges.
    """
    return ndimage.distance_transform_edt(mask != 0)


def geodesic(mask, sy, sx):
    h, w = mask.shape
    d = np.full((h, w), np.inf)
    if mask[sy, sx] == 0:
        return d
    fg = mask != 0
    node = np.full((h, w), -1, dtype=np.int64)
    ys, xs = np.nonzero(fg)
    n = ys.size
    node[ys, xs] = np.arange(n)

    rows = []
    cols = []
    data = []
    for dy, dx, cost in _HALF_OFFSETS:
        src = fg[max(0, -dy) : h - max(0, dy), max(0, -dx) : w - max(0, dx)]
        dst = fg[max(0, dy) : h - max(0, -dy), max(0, dx) : w - max(0, -dx)]
        both = src & dst
        if not both.any():
            continue
        yy, xx = np.nonzero(both)
        y_src = yy + max(0, -dy)
        x_src = xx + max(0, -dx)
        rows.append(node[y_src, x_src])
        cols.append(node[y_src + dy, x_src + dx])
        data.append(np.full(yy.size, cost))
    if rows:
        graph = sparse.csr_matrix(
            (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))),
            shape=(n, n),
        )
    else:
        graph = sparse.csr_matrix((n, n))
    dist = csgraph.dijkstra(graph, directed=False, indices=int(node[sy, sx]))
    d[ys, xs] = dist
    return d
