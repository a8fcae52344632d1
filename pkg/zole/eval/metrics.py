"""Image and disparity quality metrics.

PSNR is computed over masked pixels and all channels and capped at 99 dB.
SSIM uses the usual parameterization: 11×11 Gaussian window with σ = 1.5,
K1 = 0.01, K2 = 0.03, dynamic range 255, channels averaged.
"""

from __future__ import annotations

from typing import Optional

import numpy as np
from skimage.metrics import structural_similarity

from zole.core.types import DisparityMap, Image
from zole.eval.errors import MetricError

PSNR_CAP = 99.0
PEAK = 255.0
SSIM_WINDOW = 11
SSIM_SIGMA = 1.5
BAD_PIXEL_THRESHOLD = 3.0


def _mask_for(shape: tuple[int, int], mask: Optional[np.ndarray]) -> np.ndarray:
    if mask is None:
        return np.ones(shape, dtype=bool)
    m = np.asarray(mask, dtype=bool)
    if m.shape != shape:
        raise MetricError(f"mask {m.shape} does not match maps {shape}")
    if not m.any():
        raise MetricError("mask selects no pixels")
    return m


def psnr(a: Image, b: Image, mask: Optional[np.ndarray] = None) -> float:
    if a.data.shape != b.data.shape:
        raise MetricError(f"images differ in shape: {a.data.shape} vs {b.data.shape}")
    m = _mask_for(a.shape, mask)
    diff = (a.data - b.data)[m]
    mse = float(np.mean(diff * diff))
    if mse == 0.0:
        return PSNR_CAP
    return min(PSNR_CAP, 10.0 * float(np.log10(PEAK * PEAK / mse)))


def ssim(a: Image, b: Image) -> float:
    if a.data.shape != b.data.shape:
        raise MetricError(f"images differ in shape: {a.data.shape} vs {b.data.shape}")
    if min(a.shape) < SSIM_WINDOW:
        raise MetricError(f"SSIM needs images of at least {SSIM_WINDOW}x{SSIM_WINDOW}, got {a.shape}")
    return float(
        structural_similarity(
            a.data,
            b.data,
            data_range=PEAK,
            channel_axis=2,
            gaussian_weights=True,
            sigma=SSIM_SIGMA,
            use_sample_covariance=False,
            K1=0.01,
            K2=0.03,
        )
    )


def _abs_error(pred: DisparityMap, gt: DisparityMap, mask: Optional[np.ndarray]) -> np.ndarray:
    if pred.shape != gt.shape:
        raise MetricError(f"prediction {pred.shape} and ground truth {gt.shape} differ")
    return np.abs(pred.data - gt.data)[_mask_for(pred.shape, mask)]


def epe(pred: DisparityMap, gt: DisparityMap, mask: Optional[np.ndarray] = None) -> float:
    """End-point error: mean absolute disparity error in pixels."""
    return float(np.mean(_abs_error(pred, gt, mask)))


def three_pixel_error(pred: DisparityMap, gt: DisparityMap, mask: Optional[np.ndarray] = None) -> float:
    """Percentage of pixels whose error is strictly greater than 3."""
    err = _abs_error(pred, gt, mask)
    return 100.0 * float(np.count_nonzero(err > BAD_PIXEL_THRESHOLD)) / err.size
