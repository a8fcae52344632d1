"""Bilinear resampling: the ↑r / ↓r operators of the zoom pipeline and 1-D warps.

Resizing uses a corner-aligned sampling grid (output pixel ``i`` samples input
coordinate ``i·(n_in−1)/(n_out−1)``), implemented separably as two dense
interpolation matrices. Disparity *values* are never rescaled here; callers
multiply by the scale factor where the geometry requires it.
"""

from __future__ import annotations

from functools import lru_cache
from typing import TypeVar, Union

import numpy as np

from zole.core.errors import DimensionError, ZoleError
from zole.core.types import DisparityMap, Image

MapT = TypeVar("MapT", Image, DisparityMap)


def scaled_size(n: int, r: float) -> int:
    """``round(r·n)`` with halves rounded up."""
    return int(np.floor(r * n + 0.5))


@lru_cache(maxsize=64)
def _interp_matrix(n_in: int, n_out: int) -> np.ndarray:
    mat = np.zeros((n_out, n_in), dtype=np.float64)
    if n_in == 1:
        mat[:, 0] = 1.0
        mat.setflags(write=False)
        return mat
    if n_out == 1:
        src = np.zeros(1)
    else:
        src = np.arange(n_out, dtype=np.float64) * (n_in - 1) / (n_out - 1)
    i0 = np.minimum(np.floor(src).astype(np.int64), n_in - 2)
    frac = src - i0
    rows = np.arange(n_out)
    mat[rows, i0] += 1.0 - frac
    mat[rows, i0 + 1] += frac
    mat.setflags(write=False)
    return mat


def resize_array(values: np.ndarray, out_h: int, out_w: int) -> np.ndarray:
    """Bilinear resize of an H×W or H×W×C array to ``out_h``×``out_w``."""
    arr = np.asarray(values, dtype=np.float64)
    if out_h < 1 or out_w < 1:
        raise DimensionError(f"resized map would be {out_h}x{out_w}")
    wy = _interp_matrix(arr.shape[0], out_h)
    wx = _interp_matrix(arr.shape[1], out_w)
    if arr.ndim == 2:
        out = wy @ arr @ wx.T
    else:
        out = np.einsum("ij,jkc,lk->ilc", wy, arr, wx, optimize=True)
    # convex weights: clip away last-ulp drift so the maximum principle holds exactly
    return np.clip(out, arr.min(), arr.max())


def resize_bilinear(x: MapT, r: float) -> MapT:
    """Resize by factor ``r`` (``r < 1`` down-samples); output ``round(r·H)``×``round(r·W)``."""
    if not r > 0:
        raise ZoleError(f"resize factor must be positive, got {r}")
    out_h, out_w = scaled_size(x.height, r), scaled_size(x.width, r)
    return resize_to(x, out_h, out_w)


def resize_to(x: MapT, out_h: int, out_w: int) -> MapT:
    """Resize to explicit dimensions (used to return exactly to an original size)."""
    if (out_h, out_w) == x.shape:
        return x
    out = resize_array(x.data, out_h, out_w)
    return type(x)(out)


def sample_along_axis(values: np.ndarray, coords: np.ndarray, axis: int) -> tuple[np.ndarray, np.ndarray]:
    """Linearly interpolate ``values`` at fractional positions along one image axis.

    ``coords`` is H×W: for each output pixel the source coordinate along ``axis``
    (0 = rows, 1 = columns); the other coordinate is the pixel's own. Returns the
    samples and a mask that is False where the coordinate falls outside
    ``[0, n−1]`` (those samples use the clamped coordinate).
    """
    arr = np.asarray(values, dtype=np.float64)
    c = np.asarray(coords, dtype=np.float64)
    if c.shape != arr.shape[:2]:
        raise DimensionError(f"coordinate grid {c.shape} does not match map {arr.shape[:2]}")
    n = arr.shape[axis]
    inside = (c >= 0.0) & (c <= n - 1)
    cc = np.clip(c, 0.0, n - 1)
    if n == 1:
        return arr.copy(), inside

    i0 = np.minimum(np.floor(cc).astype(np.int64), n - 2)
    frac = cc - i0
    if arr.ndim == 3:
        i0 = i0[:, :, None]
        frac = frac[:, :, None]
        idx0 = np.broadcast_to(i0, arr.shape)
    else:
        idx0 = i0
    v0 = np.take_along_axis(arr, idx0, axis=axis)
    v1 = np.take_along_axis(arr, idx0 + 1, axis=axis)
    return (1.0 - frac) * v0 + frac * v1, inside


def sample_rows(values: Union[np.ndarray, Image], xs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Horizontal sampling at per-pixel column positions ``xs``."""
    arr = values.data if isinstance(values, Image) else values
    return sample_along_axis(arr, xs, axis=1)


def shift_rows(values: np.ndarray, dy: float) -> np.ndarray:
    """Content moved down by ``dy`` pixels (sample at ``y − dy``), edges replicated."""
    arr = np.asarray(values, dtype=np.float64)
    ys = np.arange(arr.shape[0], dtype=np.float64)[:, None] - dy
    coords = np.broadcast_to(ys, arr.shape[:2])
    out, _ = sample_along_axis(arr, coords, axis=0)
    return out
