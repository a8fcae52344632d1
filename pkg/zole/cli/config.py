"""Layered run configuration: schema defaults < JSON file < explicit flags.

Flags are declared once per config field; each flag's help shows the schema
default, and a flag only overrides the config when it is given.
"""

from __future__ import annotations

import argparse
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional, TypeVar, Union

from pydantic import BaseModel, ValidationError

from zole.cli.errors import ConfigError

ModelT = TypeVar("ModelT", bound=BaseModel)

_DEST_PREFIX = "cfg__"


@dataclass(frozen=True)
class FieldFlag:
    flag: str
    key: str            # dotted path into the config model, e.g. "weights.tau"
    type: type
    help: str


TRAINING_FLAGS = (
    FieldFlag("--batch-size", "batch_size", int, "examples per iteration"),
    FieldFlag("--lr", "lr", float, "SGD learning rate"),
    FieldFlag("--k-max", "k_max", int, "training iterations"),
    FieldFlag("--validate-every", "validate_every", int, "iterations between validations"),
    FieldFlag("--seed", "seed", int, "seed for list order, crops and augmentation"),
    FieldFlag("--crop-size", "crop_size", int, "square training crop (multiple of the patch side)"),
    FieldFlag("--workers", "workers", int, "threads for per-example work"),
    FieldFlag("--tau", "weights.tau", float, "weight of the synthetic L1 term"),
    FieldFlag("--lambda-agg", "weights.lambda_agg", float, "weight of the mean patch regularizer"),
    FieldFlag("--w-left", "weights.w_left", float, "left-image exemplar weight"),
    FieldFlag("--w-curr", "weights.w_curr", float, "current-prediction exemplar weight"),
    FieldFlag("--w-fine", "weights.w_fine", float, "zoomed-prediction exemplar weight"),
    FieldFlag("--alpha", "weights.alpha", float, "spatial term of the pixel distance"),
    FieldFlag("--patch-side", "weights.patch_side", int, "side of the square graph patches"),
)
ADAPT_FLAGS = (FieldFlag("--r", "r", float, "zoom ratio of the finer-grain target"),)
MODEL_FLAGS = (
    FieldFlag("--max-disparity", "model.max_disparity", int, "largest disparity the model outputs"),
    FieldFlag("--width", "model.width", int, "channels of the feature convolutions"),
)
GRAPH_FLAGS = (
    FieldFlag("--w-left", "w_left", float, "left-image exemplar weight"),
    FieldFlag("--w-curr", "w_curr", float, "current-prediction exemplar weight"),
    FieldFlag("--w-fine", "w_fine", float, "zoomed-prediction exemplar weight"),
    FieldFlag("--alpha", "alpha", float, "spatial term of the pixel distance"),
    FieldFlag("--patch-side", "patch_side", int, "side of the square graph patches"),
)


def _dest(key: str) -> str:
    return _DEST_PREFIX + key.replace(".", "__")


def _default_of(model_cls: type[BaseModel], key: str) -> Any:
    value: Any = model_cls()
    for part in key.split("."):
        value = getattr(value, part)
    return value


def add_field_flags(parser: argparse.ArgumentParser, model_cls: type[BaseModel], flags) -> None:
    for spec in flags:
        parser.add_argument(
            spec.flag,
            dest=_dest(spec.key),
            type=spec.type,
            default=argparse.SUPPRESS,
            help=f"{spec.help} (default: {_default_of(model_cls, spec.key)})",
        )


def flag_overrides(args: argparse.Namespace) -> dict[str, Any]:
    """Dotted-key overrides for the flags that were actually given."""
    return {
        name[len(_DEST_PREFIX):].replace("__", "."): value
        for name, value in vars(args).items()
        if name.startswith(_DEST_PREFIX)
    }


def read_json_config(path: Union[str, Path]) -> dict[str, Any]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be a JSON object")
    return data


def _set_dotted(data: dict[str, Any], key: str, value: Any) -> None:
    parts = key.split(".")
    node = data
    for part in parts[:-1]:
        child = node.setdefault(part, {})
        if not isinstance(child, dict):
            raise ConfigError(f"config key {part!r} must be an object to set {key}")
        node = child
    node[parts[-1]] = value


def describe_validation_error(exc: ValidationError) -> str:
    parts = []
    for err in exc.errors():
        loc = ".".join(str(p) for p in err["loc"]) or "<root>"
        parts.append(f"{loc}: {err['msg']}")
    return "; ".join(parts)


def _merge(dst: dict[str, Any], src: dict[str, Any]) -> None:
    for key, value in src.items():
        if isinstance(value, dict) and isinstance(dst.get(key), dict):
            _merge(dst[key], value)
        else:
            dst[key] = value


def build_config(
    model_cls: type[ModelT],
    path: Optional[Union[str, Path]] = None,
    overrides: Optional[dict[str, Any]] = None,
    base: Optional[dict[str, Any]] = None,
) -> ModelT:
    """Schema defaults < ``base`` (environment) < JSON file < ``overrides``.

    Nested objects merge key by key, so a file or flag that sets one loss weight
    keeps the model's own defaults for the others. Unknown keys are errors.
    """
    data: dict[str, Any] = model_cls().model_dump()
    _merge(data, base or {})
    if path is not None:
        _merge(data, read_json_config(path))
    for key, value in (overrides or {}).items():
        _set_dotted(data, key, value)
    try:
        return model_cls.model_validate(data)
    except ValidationError as exc:
        source = f" ({path})" if path is not None else ""
        raise ConfigError(f"invalid {model_cls.__name__}{source}: {describe_validation_error(exc)}") from exc
