from zole.eval.errors import MetricError
from zole.eval.metrics import PSNR_CAP, epe, psnr, ssim, three_pixel_error
from zole.eval.report import aggregate, disparity_to_pgm, evaluate_pair, write_disparity_pgm
from zole.eval.warp import ValidityMask, warp_right_to_left

__all__ = [
    "PSNR_CAP",
    "MetricError",
    "ValidityMask",
    "aggregate",
    "disparity_to_pgm",
    "epe",
    "evaluate_pair",
    "psnr",
    "ssim",
    "three_pixel_error",
    "warp_right_to_left",
    "write_disparity_pgm",
]
