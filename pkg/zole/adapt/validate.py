from __future__ import annotations

from typing import Sequence

import numpy as np

from zole.adapt.errors import AdaptError
from zole.core.types import StereoPair
from zole.eval.metrics import psnr
from zole.eval.warp import warp_right_to_left
from zole.model.base import ModelParams, StereoModel


def pair_psnr(model: StereoModel, theta: ModelParams, pair: StereoPair) -> float:
    """PSNR of the left view synthesized from the right view and the predicted disparity."""
    synthesized, valid = warp_right_to_left(pair.right, model.forward(pair, theta))
    return psnr(pair.left, synthesized, valid)


def validate(model: StereoModel, theta: ModelParams, val_pairs: Sequence[StereoPair]) -> float:
    """Mean view-synthesis PSNR over the validation pairs."""
    if not val_pairs:
        raise AdaptError("validation needs at least one pair")
    scores = [pair_psnr(model, theta, pair) for pair in val_pairs]
    return float(np.mean(scores))
