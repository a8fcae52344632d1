from zole.imgio.errors import ImageFormatError, ImgIOError
from zole.imgio.pfm import PfmHeader, read_pfm, read_pfm_array, write_pfm
from zole.imgio.pnm import read_pgm, read_pnm, read_ppm, write_pgm, write_ppm
from zole.imgio.resample import resize_bilinear, resize_to, sample_rows, shift_rows

__all__ = [
    "ImageFormatError",
    "ImgIOError",
    "PfmHeader",
    "read_pfm",
    "read_pfm_array",
    "read_pgm",
    "read_pnm",
    "read_ppm",
    "resize_bilinear",
    "resize_to",
    "sample_rows",
    "shift_rows",
    "write_pfm",
    "write_pgm",
    "write_ppm",
]
