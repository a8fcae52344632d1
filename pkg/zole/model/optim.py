from __future__ import annotations

import numpy as np

from zole.model.base import ModelParams, ParamGrad
from zole.model.errors import ModelError, ModelNumericsError


def sgd_step(theta: ModelParams, grad: ParamGrad, lr: float) -> ModelParams:
    """Θ' = Θ − lr·grad."""
    if not lr > 0:
        raise ModelError(f"learning rate must be > 0, got {lr}")
    if grad.layout != theta.layout:
        raise ModelError("gradient layout does not match the parameters")
    updated = theta.values - lr * grad.values
    if not np.all(np.isfinite(updated)):
        raise ModelNumericsError("sgd", "non-finite parameter update")
    return theta.with_values(updated)
