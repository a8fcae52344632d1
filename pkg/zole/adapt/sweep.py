"""Error of zoomed predictions as a function of the zoom ratio.

Zooming in helps only up to a point: disparities gain sub-pixel detail at
moderate ratios, while large ratios push the input away from the scales the
model was trained on.
"""

from __future__ import annotations

import logging
from typing import Optional, Sequence

import numpy as np

from zole.adapt.errors import AdaptError
from zole.adapt.zoom import zoom_target
from zole.core.types import DisparityMap, StereoPair
from zole.eval.metrics import epe, three_pixel_error
from zole.model.base import ModelParams, StereoModel
from zole.schemas.reports import SweepRow

logger = logging.getLogger(__name__)


def scale_sweep(
    model: StereoModel,
    theta: ModelParams,
    pairs: Sequence[StereoPair],
    ground_truths: Sequence[DisparityMap],
    ratios: Sequence[float],
    masks: Optional[Sequence[Optional[np.ndarray]]] = None,
) -> list[SweepRow]:
    if len(pairs) != len(ground_truths) or not pairs:
        raise AdaptError("scale sweep needs one ground truth per pair and at least one pair")
    masks = list(masks) if masks is not None else [None] * len(pairs)
    rows = []
    for r in ratios:
        preds = [zoom_target(model, theta, pair, r) for pair in pairs]
        row = SweepRow(
            ratio=r,
            epe=float(np.mean([epe(p, gt, m) for p, gt, m in zip(preds, ground_truths, masks)])),
            three_pixel_error=float(
                np.mean([three_pixel_error(p, gt, m) for p, gt, m in zip(preds, ground_truths, masks)])
            ),
        )
        logger.info("[adapt] sweep r=%.3g epe=%.4f 3er=%.2f%%", r, row.epe, row.three_pixel_error)
        rows.append(row)
    return rows
