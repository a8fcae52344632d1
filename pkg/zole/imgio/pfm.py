"""Portable float map (PFM) reader/writer.

Header: ``Pf`` (1 channel) or ``PF`` (3 channels), ``W H``, then a nonzero scale
whose sign gives the byte order (negative = little-endian). The payload holds
32-bit floats with rows stored bottom-to-top; in memory rows run top-to-bottom.

Round trips are bit-exact for values representable in float32.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import BinaryIO, Union

import numpy as np

from zole.core.errors import ZoleError
from zole.core.files import write_bytes_atomic
from zole.core.types import DisparityMap, Image
from zole.imgio.errors import ImageFormatError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PfmHeader:
    bands: str
    width: int
    height: int
    scale: float

    @property
    def channels(self) -> int:
        return 3 if self.bands == "PF" else 1

    @property
    def little_endian(self) -> bool:
        return self.scale < 0


def _read_token_line(f: BinaryIO, what: str) -> str:
    line = f.readline()
    if not line:
        raise ImageFormatError(f"unexpected end of file while reading PFM {what}")
    return line.decode("ascii", errors="replace").strip()


def _read_header(f: BinaryIO) -> PfmHeader:
    bands = _read_token_line(f, "identifier")
    if bands not in ("Pf", "PF"):
        raise ImageFormatError(f"unrecognized PFM identifier {bands!r}")

    dims = _read_token_line(f, "dimensions").split()
    if len(dims) != 2:
        raise ImageFormatError(f"could not parse PFM dimensions line {' '.join(dims)!r}")
    try:
        width, height = int(dims[0]), int(dims[1])
    except ValueError as exc:
        raise ImageFormatError(f"non-integer PFM dimensions {dims}") from exc
    if width < 1 or height < 1:
        raise ImageFormatError(f"PFM dimensions must be >= 1, got {width}x{height}")

    scale_text = _read_token_line(f, "scale")
    try:
        scale = float(scale_text)
    except ValueError as exc:
        raise ImageFormatError(f"non-numeric PFM scale {scale_text!r}") from exc
    if scale == 0.0 or not np.isfinite(scale):
        raise ImageFormatError(f"PFM scale must be finite and nonzero, got {scale_text!r}")

    return PfmHeader(bands, width, height, scale)


def read_pfm_array(path: Union[str, Path]) -> tuple[np.ndarray, PfmHeader]:
    """Raw payload as float64, shape H×W (Pf) or H×W×3 (PF), rows top-to-bottom."""
    with open(path, "rb") as f:
        header = _read_header(f)
        payload = f.read()

    count = header.width * header.height * header.channels
    if len(payload) < 4 * count:
        raise ImageFormatError(
            f"truncated PFM payload in {path}: expected {4 * count} bytes, got {len(payload)}"
        )
    if len(payload) > 4 * count:
        logger.warning("[imgio] %s has %d trailing bytes after the PFM payload", path, len(payload) - 4 * count)

    dtype = np.dtype("<f4") if header.little_endian else np.dtype(">f4")
    values = np.frombuffer(payload, dtype=dtype, count=count)
    if np.isnan(values).any():
        bad = int(np.isnan(values).sum())
        raise ImageFormatError(f"PFM {path} contains {bad} NaN values")

    shape = (header.height, header.width) if header.channels == 1 else (header.height, header.width, 3)
    data = np.flipud(values.reshape(shape)).astype(np.float64)
    return data, header


def read_pfm(path: Union[str, Path]) -> Union[DisparityMap, Image]:
    """``Pf`` files load as :class:`DisparityMap`, ``PF`` files as 3-channel :class:`Image`."""
    data, header = read_pfm_array(path)
    try:
        if header.channels == 1:
            return DisparityMap(data)
        return Image(data)
    except ZoleError as exc:
        raise ImageFormatError(f"{path}: {exc}") from exc


def encode_pfm(values: np.ndarray, *, little_endian: bool = True) -> bytes:
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim == 3 and arr.shape[2] == 1:
        arr = arr[:, :, 0]
    if arr.ndim == 2:
        bands = "Pf"
    elif arr.ndim == 3 and arr.shape[2] == 3:
        bands = "PF"
    else:
        raise ImageFormatError(f"PFM stores H×W or H×W×3 maps, got shape {arr.shape}")

    height, width = arr.shape[:2]
    scale = "-1.0" if little_endian else "1.0"
    header = f"{bands}\n{width} {height}\n{scale}\n".encode("ascii")
    dtype = np.dtype("<f4") if little_endian else np.dtype(">f4")
    body = np.ascontiguousarray(np.flipud(arr)).astype(dtype).tobytes()
    return header + body


def write_pfm(path: Union[str, Path], value: Union[DisparityMap, Image, np.ndarray], *, little_endian: bool = True) -> None:
    data = value.data if isinstance(value, (DisparityMap, Image)) else value
    write_bytes_atomic(Path(path), encode_pfm(data, little_endian=little_endian))
