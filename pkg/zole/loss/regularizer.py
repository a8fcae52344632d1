"""Graph Laplacian term of the adaptation objective.

Each patch j of a domain example gets its own graph built from three weighted
exemplars (left intensities, current prediction, zoomed prediction). The term
is the mean of ``s_jᵀ L_j s_j`` over patches; graphs are constants during the
gradient step.
"""

from __future__ import annotations

from concurrent.futures import Executor
from typing import Union

import numpy as np

from zole.core.patches import PatchGrid, assemble, extract_all, extract_patch
from zole.core.types import DisparityMap, Image
from zole.graph.laplacian import ExemplarSet, PatchGraph, build_graph, regularizer_grad, regularizer_value
from zole.loss.errors import LossError
from zole.schemas.config import LossWeights

GrayInput = Union[Image, np.ndarray]


def to_gray(image: GrayInput) -> np.ndarray:
    """Channel mean as an H×W array."""
    if isinstance(image, Image):
        return image.gray()
    arr = np.asarray(image, dtype=np.float64)
    return arr.mean(axis=2) if arr.ndim == 3 else arr


def build_exemplars(
    left_gray: GrayInput,
    curr_pred: DisparityMap,
    fine_pred: DisparityMap,
    grid: PatchGrid,
    j: int,
    weights: LossWeights,
) -> ExemplarSet:
    """Patches ``(w_left·L, w_curr·S(P;Θ), w_fine·D)`` of tile j, in that order."""
    return ExemplarSet(
        np.stack(
            [
                weights.w_left * extract_patch(to_gray(left_gray), grid, j),
                weights.w_curr * extract_patch(curr_pred.data, grid, j),
                weights.w_fine * extract_patch(fine_pred.data, grid, j),
            ]
        )
    )


def build_patch_graphs(
    left_gray: GrayInput,
    curr_pred: DisparityMap,
    fine_pred: DisparityMap,
    grid: PatchGrid,
    weights: LossWeights,
    executor: Executor | None = None,
) -> list[PatchGraph]:
    """All M graphs of one example, in patch order."""
    left = weights.w_left * extract_all(to_gray(left_gray), grid)
    curr = weights.w_curr * extract_all(curr_pred.data, grid)
    fine = weights.w_fine * extract_all(fine_pred.data, grid)

    def build(j: int) -> PatchGraph:
        return build_graph(ExemplarSet(np.stack([left[j], curr[j], fine[j]])), weights.alpha, grid.patch_side)

    if executor is None:
        return [build(j) for j in range(grid.count)]
    return list(executor.map(build, range(grid.count)))


def graph_loss(pred: DisparityMap, graphs: list[PatchGraph], grid: PatchGrid) -> tuple[float, np.ndarray]:
    """``(1/M)·Σ_j s_jᵀL_js_j`` and its gradient with respect to the whole map."""
    if len(graphs) != grid.count:
        raise LossError(f"expected {grid.count} patch graphs, got {len(graphs)}")
    patches = extract_all(pred.data, grid)
    scale = 1.0 / grid.count
    value = scale * sum(regularizer_value(g, s) for g, s in zip(graphs, patches))
    grads = np.stack([regularizer_grad(g, s) for g, s in zip(graphs, patches)]) * scale
    return float(value), assemble(grads, grid)
