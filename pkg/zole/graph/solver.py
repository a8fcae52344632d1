"""Graph-regularized denoising of one patch signal.

Solves ``min_s ‖s − d‖² + λ·sᵀLs``, whose normal equations are ``(I + λL)s = d``.
``I + λL`` is symmetric positive definite for λ ≥ 0, so conjugate gradient applies.
"""

from __future__ import annotations

import logging

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import cg

from zole.core.patches import PatchGrid, assemble, extract_all
from zole.graph.errors import GraphError
from zole.graph.laplacian import PatchGraph, check_signal

logger = logging.getLogger(__name__)


def solve_regularized(
    g: PatchGraph,
    d,
    lam: float = 1.0,
    *,
    rtol: float = 1e-10,
    maxiter: int | None = None,
) -> np.ndarray:
    if lam < 0 or not np.isfinite(lam):
        raise GraphError(f"lambda must be a finite value >= 0, got {lam}")
    target = check_signal(g, d)
    if lam == 0 or g.edge_count == 0:
        return target.copy()

    system = (sp.identity(g.m, format="csr") + lam * g.laplacian).tocsr()
    solution, info = cg(system, target, x0=target.copy(), rtol=rtol, atol=0.0, maxiter=maxiter or 10 * g.m)
    if info < 0:
        raise GraphError(f"conjugate gradient failed (info={info})")
    if info > 0:
        residual = float(np.linalg.norm(system @ solution - target))
        logger.warning("[graph] cg stopped after %d iterations, residual=%.3e", info, residual)
    return np.asarray(solution, dtype=np.float64)


def denoise_map(values, graphs: list[PatchGraph], grid: PatchGrid, lam: float = 1.0) -> np.ndarray:
    """Apply :func:`solve_regularized` patch by patch over a tiled map."""
    patches = extract_all(values, grid)
    if len(graphs) != grid.count:
        raise GraphError(f"expected {grid.count} graphs, got {len(graphs)}")
    out = np.stack([solve_regularized(g, patch, lam) for g, patch in zip(graphs, patches)])
    return assemble(out, grid)
