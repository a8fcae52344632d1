"""Domain types: images, disparity maps and stereo pairs.

All maps are row-major numpy arrays of 64-bit floats. Instances are frozen and
their arrays are marked read-only, so they can be shared between worker
threads without copying.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from zole.core.errors import DimensionError, ZoleError

INTENSITY_MAX = 255.0


class Origin(str, Enum):
    """Where a stereo pair comes from."""
    DOMAIN = "domain"          # target domain, ground truth unknown
    SYNTHETIC = "synthetic"    # rendered, ground truth known


def _frozen_array(values, ndim: int, name: str) -> np.ndarray:
    arr = np.array(values, dtype=np.float64, copy=True)
    if arr.ndim != ndim:
        raise DimensionError(f"{name} expects a {ndim}-D array, got shape {arr.shape}")
    if arr.size == 0:
        raise DimensionError(f"{name} must not be empty")
    if not np.all(np.isfinite(arr)):
        raise ZoleError(f"{name} contains non-finite values")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Image:
    """H×W×C intensities in [0, 255] (C is 1 or 3)."""

    data: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.data)
        if arr.ndim == 2:
            arr = arr[:, :, None]
        arr = _frozen_array(arr, 3, "Image")
        if arr.shape[2] not in (1, 3):
            raise DimensionError(f"Image must have 1 or 3 channels, got {arr.shape[2]}")
        if arr.min() < 0.0 or arr.max() > INTENSITY_MAX:
            raise ZoleError(
                f"Image intensities must lie in [0, 255], got [{arr.min():.4g}, {arr.max():.4g}]"
            )
        object.__setattr__(self, "data", arr)

    @classmethod
    def clamped(cls, values) -> "Image":
        """Build an image after clamping ``values`` into [0, 255]."""
        return cls(np.clip(np.asarray(values, dtype=np.float64), 0.0, INTENSITY_MAX))

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def channels(self) -> int:
        return self.data.shape[2]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape[0], self.data.shape[1]

    def gray(self) -> np.ndarray:
        """Single-channel view as the mean over channels (H×W)."""
        if self.channels == 1:
            return self.data[:, :, 0]
        return self.data.mean(axis=2)


@dataclass(frozen=True, eq=False)
class DisparityMap:
    """H×W nonnegative left-view disparities in pixels."""

    data: np.ndarray

    def __post_init__(self) -> None:
        arr = _frozen_array(self.data, 2, "DisparityMap")
        if arr.min() < 0.0:
            raise ZoleError(f"DisparityMap values must be >= 0, got min {arr.min():.6g}")
        object.__setattr__(self, "data", arr)

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape[0], self.data.shape[1]

    def scaled(self, factor: float) -> "DisparityMap":
        return DisparityMap(self.data * factor)


@dataclass(frozen=True, eq=False)
class StereoPair:
    """Rectified left/right views; ground truth is present iff the pair is synthetic."""

    left: Image
    right: Image
    origin: Origin
    ground_truth: Optional[DisparityMap] = None

    def __post_init__(self) -> None:
        if self.left.data.shape != self.right.data.shape:
            raise DimensionError(
                f"left {self.left.data.shape} and right {self.right.data.shape} views differ"
            )
        origin = Origin(self.origin)
        object.__setattr__(self, "origin", origin)
        if origin is Origin.DOMAIN and self.ground_truth is not None:
            raise ZoleError("domain pairs must not carry ground truth")
        if origin is Origin.SYNTHETIC:
            if self.ground_truth is None:
                raise ZoleError("synthetic pairs require ground truth")
            if self.ground_truth.shape != self.left.shape:
                raise DimensionError(
                    f"ground truth {self.ground_truth.shape} does not match views {self.left.shape}"
                )

    @property
    def shape(self) -> tuple[int, int]:
        return self.left.shape

    def as_domain(self) -> "StereoPair":
        """Same views with ground truth stripped."""
        return StereoPair(self.left, self.right, Origin.DOMAIN)

    def crop(self, top: int, left: int, size_h: int, size_w: int) -> "StereoPair":
        """Window ``[top:top+size_h, left:left+size_w]`` of both views (and ground truth)."""
        h, w = self.shape
        if top < 0 or left < 0 or top + size_h > h or left + size_w > w:
            raise DimensionError(
                f"crop {size_h}x{size_w} at ({top},{left}) exceeds pair {h}x{w}"
            )
        rows = slice(top, top + size_h)
        cols = slice(left, left + size_w)
        gt = None
        if self.ground_truth is not None:
            gt = DisparityMap(self.ground_truth.data[rows, cols])
        return StereoPair(
            Image(self.left.data[rows, cols]),
            Image(self.right.data[rows, cols]),
            self.origin,
            gt,
        )
