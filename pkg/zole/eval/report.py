"""Per-pair evaluation records and grayscale disparity dumps."""

from __future__ import annotations

from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from zole.core.types import DisparityMap, Image, StereoPair
from zole.eval.errors import MetricError
from zole.eval.metrics import epe, psnr, ssim, three_pixel_error
from zole.eval.warp import warp_right_to_left
from zole.imgio.pnm import write_pgm
from zole.schemas.reports import AggregateMetrics, PairMetrics


def evaluate_pair(
    name: str,
    pair: StereoPair,
    pred: DisparityMap,
    ground_truth: Optional[DisparityMap] = None,
    occlusion: Optional[np.ndarray] = None,
) -> PairMetrics:
    """PSNR/SSIM of the synthesized left view; EPE/3ER when ground truth is known.

    PSNR uses the warp validity mask, SSIM the whole image. Disparity errors skip
    occluded pixels when an occlusion mask (True = occluded) is given.
    """
    synthesized, valid = warp_right_to_left(pair.right, pred)
    record = {
        "name": name,
        "psnr": psnr(pair.left, synthesized, valid),
        "ssim": ssim(pair.left, synthesized),
    }
    if ground_truth is None and pair.ground_truth is not None:
        ground_truth = pair.ground_truth
    if ground_truth is not None:
        mask = None if occlusion is None else ~np.asarray(occlusion, dtype=bool)
        record["epe"] = epe(pred, ground_truth, mask)
        record["three_pixel_error"] = three_pixel_error(pred, ground_truth, mask)
    return PairMetrics(**record)


def _mean(values: list[Optional[float]]) -> Optional[float]:
    present = [v for v in values if v is not None]
    if not present:
        return None
    return float(np.mean(present))


def aggregate(records: Sequence[PairMetrics]) -> AggregateMetrics:
    if not records:
        raise MetricError("nothing to aggregate")
    return AggregateMetrics(
        count=len(records),
        epe=_mean([r.epe for r in records]),
        three_pixel_error=_mean([r.three_pixel_error for r in records]),
        psnr=float(np.mean([r.psnr for r in records])),
        ssim=float(np.mean([r.ssim for r in records])),
    )


def disparity_to_pgm(disp: DisparityMap, scale: float) -> Image:
    """Grayscale view of a disparity map: ``value · scale`` clamped to [0, 255]."""
    if not scale > 0:
        raise MetricError(f"visualisation scale must be > 0, got {scale}")
    return Image.clamped(disp.data * scale)


def write_disparity_pgm(path: Union[str, Path], disp: DisparityMap, scale: float) -> None:
    write_pgm(path, disparity_to_pgm(disp, scale))
