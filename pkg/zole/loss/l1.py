from __future__ import annotations

import numpy as np

from zole.core.types import DisparityMap
from zole.loss.errors import LossError


def l1_loss(pred: DisparityMap, target: DisparityMap) -> tuple[float, np.ndarray]:
    """Mean absolute error and its (sub)gradient ``sign(pred − target) / (H·W)``; sign(0) = 0."""
    if pred.shape != target.shape:
        raise LossError(f"prediction {pred.shape} and target {target.shape} differ")
    diff = pred.data - target.data
    value = float(np.mean(np.abs(diff)))
    return value, np.sign(diff) / diff.size
