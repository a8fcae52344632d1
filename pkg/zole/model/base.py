"""Model contract and flat parameter containers.

A model's parameters Θ live in one flat float64 vector. :class:`ParamLayout`
names the tensors packed into it (filter banks, biases, temperature) in a fixed
order, so optimizers and checkpoints treat every model the same way.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol, runtime_checkable

import numpy as np
from pydantic import BaseModel, ConfigDict

from zole.core.types import DisparityMap, StereoPair
from zole.model.errors import ModelError, ModelNumericsError


class ParamSpec(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    name: str
    shape: tuple[int, ...]

    @property
    def size(self) -> int:
        return int(np.prod(self.shape, dtype=np.int64))


class ParamLayout(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    entries: tuple[ParamSpec, ...]

    @property
    def slices(self) -> dict[str, slice]:
        out: dict[str, slice] = {}
        offset = 0
        for spec in self.entries:
            out[spec.name] = slice(offset, offset + spec.size)
            offset += spec.size
        return out

    @property
    def size(self) -> int:
        return sum(spec.size for spec in self.entries)

    def shape_of(self, name: str) -> tuple[int, ...]:
        for spec in self.entries:
            if spec.name == name:
                return spec.shape
        raise ModelError(f"unknown parameter tensor {name!r}")

    def view(self, values: np.ndarray, name: str) -> np.ndarray:
        if name not in self.slices:
            raise ModelError(f"unknown parameter tensor {name!r}")
        return values[self.slices[name]].reshape(self.shape_of(name))


def pack_tensors(layout: ParamLayout, tensors: dict[str, np.ndarray]) -> np.ndarray:
    """Concatenate named tensors in layout order."""
    missing = [spec.name for spec in layout.entries if spec.name not in tensors]
    if missing:
        raise ModelError(f"missing parameter tensors: {', '.join(missing)}")
    parts = []
    for spec in layout.entries:
        arr = np.asarray(tensors[spec.name], dtype=np.float64)
        if arr.shape != spec.shape:
            raise ModelError(f"tensor {spec.name!r} has shape {arr.shape}, expected {spec.shape}")
        parts.append(arr.reshape(-1))
    return np.concatenate(parts)


def _flat(values, layout: ParamLayout, what: str) -> np.ndarray:
    arr = np.array(values, dtype=np.float64, copy=True).reshape(-1)
    if arr.size != layout.size:
        raise ModelError(f"{what} has {arr.size} values, layout expects {layout.size}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class ModelParams:
    """Θ: immutable flat parameter vector plus its layout."""

    values: np.ndarray
    layout: ParamLayout

    def __post_init__(self) -> None:
        arr = _flat(self.values, self.layout, "ModelParams")
        if not np.all(np.isfinite(arr)):
            raise ModelNumericsError("params", "non-finite parameter values")
        object.__setattr__(self, "values", arr)

    def tensor(self, name: str) -> np.ndarray:
        return self.layout.view(self.values, name)

    @classmethod
    def from_tensors(cls, layout: ParamLayout, tensors: dict[str, np.ndarray]) -> "ModelParams":
        return cls(pack_tensors(layout, tensors), layout)

    def with_values(self, values) -> "ModelParams":
        return ModelParams(values, self.layout)

    def equals(self, other: "ModelParams") -> bool:
        """Bit-exact equality of layout and values."""
        return self.layout == other.layout and np.array_equal(self.values, other.values)


@dataclass(frozen=True, eq=False)
class ParamGrad:
    """Cotangent of Θ with the same layout."""

    values: np.ndarray
    layout: ParamLayout

    def __post_init__(self) -> None:
        arr = _flat(self.values, self.layout, "ParamGrad")
        if not np.all(np.isfinite(arr)):
            raise ModelNumericsError("grad", "non-finite gradient values")
        object.__setattr__(self, "values", arr)

    @classmethod
    def zeros(cls, layout: ParamLayout) -> "ParamGrad":
        return cls(np.zeros(layout.size), layout)

    @classmethod
    def from_tensors(cls, layout: ParamLayout, tensors: dict[str, np.ndarray]) -> "ParamGrad":
        return cls(pack_tensors(layout, tensors), layout)

    def tensor(self, name: str) -> np.ndarray:
        return self.layout.view(self.values, name)

    def __add__(self, other: "ParamGrad") -> "ParamGrad":
        if self.layout != other.layout:
            raise ModelError("cannot add gradients with different layouts")
        return ParamGrad(self.values + other.values, self.layout)

    def scaled(self, factor: float) -> "ParamGrad":
        return ParamGrad(self.values * factor, self.layout)

    def dot(self, direction) -> float:
        return float(np.dot(self.values, np.asarray(direction, dtype=np.float64).reshape(-1)))


def mean_grad(grads: list[ParamGrad]) -> ParamGrad:
    """Mean over a batch, summed in list order."""
    if not grads:
        raise ModelError("cannot average an empty list of gradients")
    total = grads[0]
    for g in grads[1:]:
        total = total + g
    return total.scaled(1.0 / len(grads))


@runtime_checkable
class StereoModel(Protocol):
    """Differentiable stereo model ``D = S(P; Θ)``.

    ``backward`` returns the exact gradient of ``⟨cotangent, forward(pair, Θ)⟩``
    with respect to Θ. Both calls are pure given ``(pair, Θ)``.
    """

    @property
    def max_disparity(self) -> int: ...

    @property
    def layout(self) -> ParamLayout: ...

    def forward(self, pair: StereoPair, theta: ModelParams) -> DisparityMap: ...

    def backward(self, pair: StereoPair, theta: ModelParams, cotangent: np.ndarray) -> ParamGrad: ...
