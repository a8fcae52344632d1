"""Procedural stereo scenes with exact ground truth.

A scene is a fronto-parallel background at ``d_lo`` plus axis-aligned
rectangles and ellipses, each a plane at an integer disparity. Layers are
ordered by disparity so a later layer is nearer and occludes earlier ones.
Every layer carries its own sinusoid texture attached to the surface, so the
right view shows layer k at ``x_r`` with the texture value of ``x_r + d_k``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Literal

import numpy as np

from zole.core.rng import Rng
from zole.core.types import DisparityMap, Image, Origin, StereoPair
from zole.datagen.errors import SceneSpecError
from zole.schemas.datasets import SceneSpec

logger = logging.getLogger(__name__)

ShapeKind = Literal["background", "rect", "ellipse"]

_WAVES = 4
_CHANNELS = 3


@dataclass(frozen=True)
class Texture:
    mean: np.ndarray          # (3,) per-channel base level
    amplitudes: np.ndarray    # (waves,)
    frequencies: np.ndarray   # (waves, 2) radians per pixel along (x, y)
    phases: np.ndarray        # (waves, 3) per channel

    def evaluate(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        """Texture at real coordinates, H×W×3, not yet quantized."""
        out = np.broadcast_to(self.mean, xs.shape + (_CHANNELS,)).copy()
        for a, (fx, fy), phase in zip(self.amplitudes, self.frequencies, self.phases):
            arg = fx * xs + fy * ys
            out += a * np.sin(arg[:, :, None] + phase)
        return out


@dataclass(frozen=True)
class Layer:
    kind: ShapeKind
    disparity: int
    cx: float
    cy: float
    hx: float
    hy: float
    texture: Texture

    def covers(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        """Coverage in left-view coordinates."""
        if self.kind == "background":
            return np.ones(np.broadcast(xs, ys).shape, dtype=bool)
        u = (xs - self.cx) / self.hx
        v = (ys - self.cy) / self.hy
        if self.kind == "rect":
            return (np.abs(u) <= 1.0) & (np.abs(v) <= 1.0)
        return u * u + v * v <= 1.0


def _draw_texture(rng: Rng, scale: float) -> Texture:
    mean = rng.uniform(70.0, 185.0) + rng.uniform(-15.0, 15.0, size=_CHANNELS)
    amplitudes = rng.uniform(8.0, 16.0, size=_WAVES)
    periods = scale * rng.uniform(0.5, 2.0, size=_WAVES)
    angles = rng.uniform(0.0, np.pi, size=_WAVES)
    frequencies = np.stack([np.cos(angles), np.sin(angles)], axis=1) * (2.0 * np.pi / periods)[:, None]
    phases = rng.uniform(0.0, 2.0 * np.pi, size=(_WAVES, _CHANNELS))
    return Texture(mean, amplitudes, frequencies, phases)


def plan_scene(spec: SceneSpec) -> list[Layer]:
    """Background first, then shapes sorted by disparity (stable)."""
    lo, hi = spec.disp_range
    if hi >= spec.width:
        raise SceneSpecError(f"disparity {hi} does not fit in an image {spec.width} pixels wide")
    rng = Rng(spec.seed)
    h, w = spec.height, spec.width
    layers = [Layer("background", lo, 0.0, 0.0, 1.0, 1.0, _draw_texture(rng, spec.texture_scale))]
    shapes = []
    for _ in range(spec.num_shapes):
        kind: ShapeKind = rng.choice(("rect", "ellipse"))
        shapes.append(
            Layer(
                kind=kind,
                disparity=rng.integers(lo, hi + 1),
                cx=rng.uniform(0.0, w - 1.0),
                cy=rng.uniform(0.0, h - 1.0),
                hx=rng.uniform(max(1.0, w / 10.0), max(1.0, w / 4.0)),
                hy=rng.uniform(max(1.0, h / 10.0), max(1.0, h / 4.0)),
                texture=_draw_texture(rng, spec.texture_scale),
            )
        )
    shapes.sort(key=lambda layer: layer.disparity)
    return layers + shapes


def label_maps(spec: SceneSpec, layers: list[Layer]) -> tuple[np.ndarray, np.ndarray]:
    """Index of the visible layer per pixel in the left and in the right view."""
    ys, xs = np.mgrid[0:spec.height, 0:spec.width].astype(np.float64)
    left = np.zeros((spec.height, spec.width), dtype=np.int64)
    right = np.zeros_like(left)
    for k, layer in enumerate(layers[1:], start=1):
        left[layer.covers(xs, ys)] = k
        right[layer.covers(xs + layer.disparity, ys)] = k
    return left, right


def render_scene(spec: SceneSpec, layers: list[Layer]) -> tuple[StereoPair, np.ndarray]:
    ys, xs = np.mgrid[0:spec.height, 0:spec.width].astype(np.float64)
    left_label, right_label = label_maps(spec, layers)
    disparities = np.array([layer.disparity for layer in layers], dtype=np.float64)

    left = np.zeros((spec.height, spec.width, _CHANNELS))
    right = np.zeros_like(left)
    for k, layer in enumerate(layers):
        in_left = left_label == k
        in_right = right_label == k
        if in_left.any():
            left[in_left] = layer.texture.evaluate(xs, ys)[in_left]
        if in_right.any():
            right[in_right] = layer.texture.evaluate(xs + layer.disparity, ys)[in_right]

    gt = disparities[left_label]
    # a left pixel is matched when the right view shows the same layer at x − d
    xr = (xs - gt).astype(np.int64)
    inside = xr >= 0
    rows = np.arange(spec.height)[:, None].repeat(spec.width, axis=1)
    same_layer = np.zeros_like(inside)
    same_layer[inside] = right_label[rows[inside], xr[inside]] == left_label[inside]
    occlusion = ~same_layer

    pair = StereoPair(
        Image(np.rint(np.clip(left, 0.0, 255.0))),
        Image(np.rint(np.clip(right, 0.0, 255.0))),
        Origin.SYNTHETIC,
        DisparityMap(gt),
    )
    return pair, occlusion


def generate_scene(spec: SceneSpec) -> tuple[StereoPair, np.ndarray]:
    """Synthetic pair with ground truth, plus the mask of occluded left pixels."""
    layers = plan_scene(spec)
    pair, occlusion = render_scene(spec, layers)
    logger.debug(
        "[datagen] scene seed=%d layers=%d occluded=%.1f%%",
        spec.seed, len(layers), 100.0 * occlusion.mean(),
    )
    return pair, occlusion
