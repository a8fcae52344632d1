"""Model checkpoint files.

Layout::

    ZOLECKPT1\n
    <one line of JSON: model config, parameter layout, value count, metadata>\n
    <count little-endian float64 values>

Values round-trip bit-exactly.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from zole.core.files import json_default, write_bytes_atomic
from zole.model.base import ModelParams, ParamLayout
from zole.model.errors import CheckpointError
from zole.model.toy import ToyStereoModel
from zole.schemas.config import ToyModelConfig

logger = logging.getLogger(__name__)

MAGIC = b"ZOLECKPT1\n"
_DTYPE = np.dtype("<f8")


class CheckpointHeader(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: str = "toy"
    config: ToyModelConfig
    layout: ParamLayout
    count: int
    meta: dict[str, Any] = Field(default_factory=dict)


@dataclass(frozen=True)
class Checkpoint:
    model: ToyStereoModel
    params: ModelParams
    meta: dict[str, Any] = field(default_factory=dict)


def encode_checkpoint(model: ToyStereoModel, theta: ModelParams, meta: dict[str, Any] | None = None) -> bytes:
    if theta.layout != model.layout:
        raise CheckpointError("parameters do not match the model layout")
    header = CheckpointHeader(config=model.config, layout=theta.layout, count=theta.layout.size, meta=meta or {})
    line = json.dumps(header.model_dump(mode="json"), default=json_default, sort_keys=True)
    return MAGIC + line.encode("utf-8") + b"\n" + theta.values.astype(_DTYPE).tobytes()


def save_checkpoint(
    path: Union[str, Path], model: ToyStereoModel, theta: ModelParams, meta: dict[str, Any] | None = None
) -> None:
    write_bytes_atomic(Path(path), encode_checkpoint(model, theta, meta))
    logger.info("[model] saved checkpoint %s (%d values)", path, theta.layout.size)


def decode_checkpoint(buf: bytes, source: str = "<bytes>") -> Checkpoint:
    if not buf.startswith(MAGIC):
        raise CheckpointError(f"{source}: not a zole checkpoint (bad magic)")
    end = buf.find(b"\n", len(MAGIC))
    if end < 0:
        raise CheckpointError(f"{source}: truncated checkpoint header")
    try:
        header = CheckpointHeader.model_validate_json(buf[len(MAGIC):end])
    except ValidationError as exc:
        raise CheckpointError(f"{source}: invalid checkpoint header: {exc.errors()[0]['msg']}") from exc
    if header.kind != "toy":
        raise CheckpointError(f"{source}: unsupported model kind {header.kind!r}")

    model = ToyStereoModel(header.config)
    if header.layout != model.layout or header.count != model.layout.size:
        raise CheckpointError(f"{source}: layout does not match a {header.config!r} model")
    payload = buf[end + 1:]
    expected = header.count * _DTYPE.itemsize
    if len(payload) != expected:
        raise CheckpointError(f"{source}: expected {expected} payload bytes, got {len(payload)}")
    values = np.frombuffer(payload, dtype=_DTYPE).astype(np.float64)
    return Checkpoint(model=model, params=ModelParams(values, model.layout), meta=header.meta)


def load_checkpoint(path: Union[str, Path]) -> Checkpoint:
    try:
        buf = Path(path).read_bytes()
    except OSError as exc:
        raise CheckpointError(f"cannot read checkpoint {path}: {exc.strerror}") from exc
    return decode_checkpoint(buf, str(path))
