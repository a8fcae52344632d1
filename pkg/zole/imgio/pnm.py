"""Binary PGM (P5) / PPM (P6) images with maxval 255."""

from __future__ import annotations

from pathlib import Path
from typing import Union

import numpy as np

from zole.core.files import write_bytes_atomic
from zole.core.types import Image
from zole.imgio.errors import ImageFormatError

_MAGIC_CHANNELS = {b"P5": 1, b"P6": 3}


def _header_tokens(buf: bytes, count: int) -> tuple[list[bytes], int]:
    """Read ``count`` whitespace-separated header tokens, skipping ``#`` comments.

    Returns the tokens and the offset of the first payload byte (one whitespace
    byte after the last token).
    """
    tokens: list[bytes] = []
    pos = 0
    n = len(buf)
    while len(tokens) < count:
        while pos < n and buf[pos:pos + 1].isspace():
            pos += 1
        if pos < n and buf[pos:pos + 1] == b"#":
            while pos < n and buf[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < n and not buf[pos:pos + 1].isspace() and buf[pos:pos + 1] != b"#":
            pos += 1
        if start == pos:
            raise ImageFormatError("truncated PNM header")
        tokens.append(buf[start:pos])
    if pos >= n or not buf[pos:pos + 1].isspace():
        raise ImageFormatError("PNM header must end with a single whitespace byte")
    return tokens, pos + 1


def read_pnm(path: Union[str, Path]) -> Image:
    buf = Path(path).read_bytes()
    tokens, offset = _header_tokens(buf, 4)
    magic = tokens[0]
    if magic not in _MAGIC_CHANNELS:
        raise ImageFormatError(f"{path}: unsupported PNM magic {magic!r} (expected P5 or P6)")
    try:
        width, height, maxval = (int(t) for t in tokens[1:])
    except ValueError as exc:
        raise ImageFormatError(f"{path}: malformed PNM header {tokens!r}") from exc
    if width < 1 or height < 1:
        raise ImageFormatError(f"{path}: PNM dimensions must be >= 1, got {width}x{height}")
    if maxval != 255:
        raise ImageFormatError(f"{path}: unsupported maxval {maxval} (only 255 is supported)")

    channels = _MAGIC_CHANNELS[magic]
    count = width * height * channels
    payload = buf[offset:offset + count]
    if len(payload) < count:
        raise ImageFormatError(f"{path}: truncated PNM payload ({len(payload)} of {count} bytes)")

    data = np.frombuffer(payload, dtype=np.uint8).reshape(height, width, channels)
    return Image(data.astype(np.float64))


def read_pgm(path: Union[str, Path]) -> Image:
    image = read_pnm(path)
    if image.channels != 1:
        raise ImageFormatError(f"{path}: expected a P5 (grayscale) file")
    return image


def read_ppm(path: Union[str, Path]) -> Image:
    image = read_pnm(path)
    if image.channels != 3:
        raise ImageFormatError(f"{path}: expected a P6 (color) file")
    return image


def encode_pnm(image: Image) -> bytes:
    magic = b"P5" if image.channels == 1 else b"P6"
    # 非整數值四捨五入；整數值影像可無損往返
    pixels = np.clip(np.rint(image.data), 0, 255).astype(np.uint8)
    header = magic + f"\n{image.width} {image.height}\n255\n".encode("ascii")
    return header + pixels.tobytes()


def write_pgm(path: Union[str, Path], image: Image) -> None:
    if image.channels != 1:
        raise ImageFormatError(f"PGM needs a single-channel image, got {image.channels} channels")
    write_bytes_atomic(Path(path), encode_pnm(image))


def write_ppm(path: Union[str, Path], image: Image) -> None:
    if image.channels != 3:
        raise ImageFormatError(f"PPM needs a 3-channel image, got {image.channels} channels")
    write_bytes_atomic(Path(path), encode_pnm(image))
