"""Per-example objective: weighted L1 data term plus the graph term for domain pairs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from zole.core.patches import PatchGrid
from zole.core.types import DisparityMap, Origin, StereoPair
from zole.graph.laplacian import PatchGraph
from zole.loss.errors import LossError
from zole.loss.l1 import l1_loss
from zole.loss.regularizer import graph_loss
from zole.schemas.config import LossWeights


@dataclass(frozen=True)
class TrainingExample:
    """One drawn example.

    Domain examples carry the zoom target and the patch graphs of the current
    iteration; synthetic examples train against their ground truth.
    """

    pair: StereoPair
    target: Optional[DisparityMap] = None
    graphs: Optional[list[PatchGraph]] = None
    grid: Optional[PatchGrid] = None

    @property
    def origin(self) -> Origin:
        return self.pair.origin


@dataclass(frozen=True)
class ExampleLossReport:
    l1: float
    reg_mean: float
    total: float
    origin: Origin


def composite_loss(
    pred: DisparityMap, example: TrainingExample, weights: LossWeights
) -> tuple[ExampleLossReport, np.ndarray]:
    if example.origin is Origin.SYNTHETIC:
        if example.graphs is not None:
            raise LossError("synthetic examples are not graph-regularized")
        l1, g_l1 = l1_loss(pred, example.pair.ground_truth)
        report = ExampleLossReport(l1=l1, reg_mean=0.0, total=weights.tau * l1, origin=Origin.SYNTHETIC)
        return report, weights.tau * g_l1

    if example.target is None:
        raise LossError("domain example has no zoom target")
    if example.graphs is None or example.grid is None:
        raise LossError("domain example has no patch graphs")
    l1, g_l1 = l1_loss(pred, example.target)
    reg, g_reg = graph_loss(pred, example.graphs, example.grid)
    total = l1 + weights.lambda_agg * reg
    report = ExampleLossReport(l1=l1, reg_mean=reg, total=total, origin=Origin.DOMAIN)
    return report, g_l1 + weights.lambda_agg * g_reg
