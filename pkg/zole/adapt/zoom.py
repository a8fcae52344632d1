from __future__ import annotations

from zole.adapt.errors import AdaptError
from zole.core.types import DisparityMap, Origin, StereoPair
from zole.imgio.resample import resize_bilinear, resize_to
from zole.model.base import ModelParams, StereoModel


def zoom_target(model: StereoModel, theta: ModelParams, pair: StereoPair, r: float) -> DisparityMap:
    """Finer-grain prediction ``(1/r)·↓r(S(↑r(P); Θ))`` at the pair's own size.

    Disparities measured on the up-sampled pair are r times larger, hence the
    final 1/r.
    """
    if not r >= 1.0:
        raise AdaptError(f"zoom ratio must be >= 1, got {r}")
    zoomed = StereoPair(resize_bilinear(pair.left, r), resize_bilinear(pair.right, r), Origin.DOMAIN)
    pred = model.forward(zoomed, theta)
    h, w = pair.shape
    return resize_to(pred, h, w).scaled(1.0 / r)
