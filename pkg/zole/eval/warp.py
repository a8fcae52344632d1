from __future__ import annotations

import numpy as np

from zole.core.errors import DimensionError
from zole.core.types import DisparityMap, Image
from zole.imgio.resample import sample_rows

# H×W booleans, True where the warped source coordinate lies inside the image
ValidityMask = np.ndarray


def warp_right_to_left(right: Image, disp: DisparityMap) -> tuple[Image, ValidityMask]:
    """Synthesize the left view: bilinear sample of ``right`` at ``(x − disp(x, y), y)``."""
    if right.shape != disp.shape:
        raise DimensionError(f"right view {right.shape} and disparity {disp.shape} differ")
    xs = np.arange(right.width, dtype=np.float64)[None, :] - disp.data
    samples, inside = sample_rows(right.data, xs)
    return Image.clamped(samples), inside
