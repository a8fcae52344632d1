from __future__ import annotations

from typing import Sequence

from zole.core.errors import DimensionError
from zole.core.rng import Rng
from zole.core.types import Origin, StereoPair
from zole.imgio.resample import resize_bilinear, resize_to


def resize_pair(pair: StereoPair, factor: float) -> StereoPair:
    """Resize both views and the ground truth; disparities are multiplied by ``factor``."""
    left = resize_bilinear(pair.left, factor)
    right = resize_bilinear(pair.right, factor)
    gt = None
    if pair.ground_truth is not None:
        gt = resize_to(pair.ground_truth, left.height, left.width).scaled(factor)
    return StereoPair(left, right, pair.origin, gt)


def filter_by_max_disparity(pairs: Sequence[StereoPair], limit: float) -> list[StereoPair]:
    """Synthetic pairs whose ground-truth maximum is at most ``limit``."""
    return [
        p for p in pairs
        if p.origin is Origin.SYNTHETIC and p.ground_truth is not None and float(p.ground_truth.data.max()) <= limit
    ]


def random_crop(pair: StereoPair, size: int, rng: Rng) -> StereoPair:
    """Square ``size``×``size`` window at a uniformly drawn position."""
    h, w = pair.shape
    if size > h or size > w:
        raise DimensionError(f"cannot crop {size}x{size} from a {h}x{w} pair")
    top = rng.integers(0, h - size + 1)
    left = rng.integers(0, w - size + 1)
    return pair.crop(top, left, size, size)

