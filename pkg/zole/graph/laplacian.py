"""Per-patch ε-neighborhood graphs and the graph Laplacian regularizer.

Pixels of a p×p patch are the vertices. The squared distance between pixels i
and j combines the exemplar patches and the spatial offset::

    d²(i, j) = Σ_k (f_k(i) − f_k(j))² + α·l²(i, j)

Every pixel pair is a candidate edge; a pair is kept when d² ≤ ε² and weighted
``exp(−d²)``. ε is chosen per patch as the largest 4th-nearest-neighbor
distance, so every vertex keeps at least ``min(4, m−1)`` edges.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
import scipy.sparse as sp

from zole.core.errors import DimensionError
from zole.graph.errors import GraphError

MIN_NEIGHBORS = 4
# exp(−d²) underflows to 0 past d² ≈ 745; kept edges keep a strictly positive weight
_MIN_WEIGHT = np.finfo(np.float64).tiny


@dataclass(frozen=True, eq=False)
class ExemplarSet:
    """K exemplar patches (already weighted), shape ``(K, m)``."""

    patches: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.patches, dtype=np.float64)
        if arr.ndim == 1:
            arr = arr[None, :]
        if arr.ndim != 2 or arr.shape[0] < 1:
            raise GraphError(f"exemplars must be a (K, m) array, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise GraphError("exemplar patches contain non-finite values")
        arr.setflags(write=False)
        object.__setattr__(self, "patches", arr)

    @property
    def k(self) -> int:
        return self.patches.shape[0]

    @property
    def m(self) -> int:
        return self.patches.shape[1]


@dataclass(frozen=True, eq=False)
class PatchGraph:
    """Sparse symmetric graph over the m pixels of one patch.

    ``rows``/``cols``/``weights`` list each undirected edge once with ``i < j``,
    sorted by ``(i, j)``. ``laplacian`` is ``DegreeMatrix − Adjacency`` in CSR form.
    """

    m: int
    rows: np.ndarray
    cols: np.ndarray
    weights: np.ndarray
    epsilon: float
    degree: np.ndarray = field(init=False, repr=False)
    laplacian: sp.csr_matrix = field(init=False, repr=False)
    _adjacency: sp.csr_matrix = field(init=False, repr=False)

    def __post_init__(self) -> None:
        rows = np.asarray(self.rows, dtype=np.int64)
        cols = np.asarray(self.cols, dtype=np.int64)
        weights = np.asarray(self.weights, dtype=np.float64)
        if not (rows.shape == cols.shape == weights.shape) or rows.ndim != 1:
            raise GraphError("edge arrays must be 1-D and of equal length")
        if rows.size and (np.any(rows >= cols) or rows.min() < 0 or cols.max() >= self.m):
            raise GraphError("edges must satisfy 0 <= i < j < m")
        order = np.lexsort((cols, rows))
        rows, cols, weights = rows[order], cols[order], weights[order]
        for arr in (rows, cols, weights):
            arr.setflags(write=False)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "weights", weights)

        adjacency = sp.coo_matrix(
            (np.concatenate([weights, weights]), (np.concatenate([rows, cols]), np.concatenate([cols, rows]))),
            shape=(self.m, self.m),
        ).tocsr()
        degree = np.asarray(adjacency.sum(axis=1)).ravel()
        degree.setflags(write=False)
        object.__setattr__(self, "_adjacency", adjacency)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "laplacian", (sp.diags(degree) - adjacency).tocsr())

    @property
    def edge_count(self) -> int:
        return int(self.rows.size)

    @property
    def adjacency(self) -> sp.csr_matrix:
        return self._adjacency

    def degree_counts(self) -> np.ndarray:
        """Number of incident edges per vertex."""
        return np.bincount(self.rows, minlength=self.m) + np.bincount(self.cols, minlength=self.m)

    def apply(self, x: np.ndarray) -> np.ndarray:
        """``L·x`` without densifying L."""
        vec = check_signal(self, x)
        return self.laplacian @ vec


@lru_cache(maxsize=16)
def spatial_distance_sq(patch_side: int) -> np.ndarray:
    """``l²(i, j)`` between the pixel coordinates of a p×p patch, shape ``(m, m)``."""
    ys, xs = np.divmod(np.arange(patch_side * patch_side), patch_side)
    dy = ys[:, None] - ys[None, :]
    dx = xs[:, None] - xs[None, :]
    out = (dy * dy + dx * dx).astype(np.float64)
    out.setflags(write=False)
    return out


def _check_patch_side(ex: ExemplarSet, patch_side: int) -> None:
    if patch_side < 1 or ex.m != patch_side * patch_side:
        raise DimensionError(f"exemplar length {ex.m} does not match a {patch_side}x{patch_side} patch")


def pixel_distance_sq(ex: ExemplarSet, i: int, j: int, alpha: float, patch_side: int) -> float:
    """Squared distance between pixels ``i`` and ``j`` for one pair."""
    _check_patch_side(ex, patch_side)
    if not (0 <= i < ex.m and 0 <= j < ex.m):
        raise GraphError(f"pixel index out of range for m={ex.m}: ({i}, {j})")
    if alpha < 0:
        raise GraphError(f"alpha must be >= 0, got {alpha}")
    feature = float(np.sum((ex.patches[:, i] - ex.patches[:, j]) ** 2))
    return feature + alpha * float(spatial_distance_sq(patch_side)[i, j])


def pairwise_distance_sq(ex: ExemplarSet, alpha: float, patch_side: int) -> np.ndarray:
    """All ``d²(i, j)`` as an ``(m, m)`` matrix with an exactly zero diagonal."""
    _check_patch_side(ex, patch_side)
    if alpha < 0:
        raise GraphError(f"alpha must be >= 0, got {alpha}")
    f = ex.patches
    dist = np.zeros((ex.m, ex.m), dtype=np.float64)
    for row in f:
        diff = row[:, None] - row[None, :]
        dist += diff * diff
    return dist + alpha * spatial_distance_sq(patch_side)


def _epsilon_sq(dist_sq: np.ndarray) -> float:
    m = dist_sq.shape[0]
    if m < 2:
        raise GraphError(f"a graph needs at least 2 vertices, got m={m}")
    if m - 1 <= MIN_NEIGHBORS:
        return float(dist_sq.max())
    off_diag = dist_sq.copy()
    np.fill_diagonal(off_diag, np.inf)
    kth = np.partition(off_diag, MIN_NEIGHBORS - 1, axis=1)[:, MIN_NEIGHBORS - 1]
    return float(kth.max())


def select_epsilon(dist_sq: np.ndarray) -> float:
    """ε = max over vertices of the 4th-smallest distance to another vertex.

    Falls back to the largest pairwise distance (complete graph) when m−1 ≤ 4.
    Takes squared distances and returns ε itself.
    """
    return float(np.sqrt(_epsilon_sq(np.asarray(dist_sq, dtype=np.float64))))


def build_graph(ex: ExemplarSet, alpha: float, patch_side: int) -> PatchGraph:
    dist_sq = pairwise_distance_sq(ex, alpha, patch_side)
    if ex.m == 1:
        empty = np.zeros(0, dtype=np.int64)
        return PatchGraph(m=1, rows=empty, cols=empty, weights=np.zeros(0), epsilon=0.0)
    eps_sq = _epsilon_sq(dist_sq)
    # thresholds compared on squares; ε itself is only reported
    iu, ju = np.triu_indices(ex.m, k=1)
    d2 = dist_sq[iu, ju]
    keep = d2 <= eps_sq
    weights = np.maximum(np.exp(-d2[keep]), _MIN_WEIGHT)
    return PatchGraph(
        m=ex.m,
        rows=iu[keep],
        cols=ju[keep],
        weights=weights,
        epsilon=float(np.sqrt(eps_sq)),
    )


def check_signal(g: PatchGraph, s) -> np.ndarray:
    vec = np.asarray(s, dtype=np.float64).reshape(-1)
    if vec.size != g.m:
        raise DimensionError(f"signal length {vec.size} does not match graph with m={g.m}")
    return vec


def regularizer_value(g: PatchGraph, s) -> float:
    """``sᵀLs``, evaluated as ``Σ_{i<j} w_ij (s_i − s_j)²`` so it is never negative."""
    vec = check_signal(g, s)
    diff = vec[g.rows] - vec[g.cols]
    return float(np.dot(g.weights, diff * diff))


def regularizer_grad(g: PatchGraph, s) -> np.ndarray:
    """``∇_s sᵀLs = 2·L·s``; L is constant w.r.t. s."""
    vec = check_signal(g, s)
    return 2.0 * (g.laplacian @ vec)
