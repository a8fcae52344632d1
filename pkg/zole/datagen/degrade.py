"""Photometric and geometric corruptions.

``apply_degradation`` turns a clean synthetic pair into a target-domain pair:
noise, per-channel brightness, gamma and a vertical misalignment of the right
view. ``augment_synthetic`` applies the lighter noise/brightness augmentation
used on synthetic training pairs.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from zole.core.rng import Rng
from zole.core.types import INTENSITY_MAX, Image, Origin, StereoPair
from zole.datagen.errors import AugmentationError
from zole.imgio.resample import shift_rows
from zole.schemas.datasets import AUGMENT_FACTORS, AUGMENT_SIGMAS, DomainDegradation


def _noise_and_brightness(
    view: np.ndarray, rng: Rng, sigmas: Sequence[float], factors: Sequence[float]
) -> np.ndarray:
    sigma = float(rng.choice(tuple(sigmas)))
    noise = rng.normal(sigma, size=view.shape) if sigma > 0 else 0.0
    rho = np.array([rng.choice(tuple(factors)) for _ in range(view.shape[2])], dtype=np.float64)
    return (view + noise) * rho


def _gamma(view: np.ndarray, delta: float) -> np.ndarray:
    if delta == 0.0:
        return view
    return INTENSITY_MAX * np.power(view / INTENSITY_MAX, 1.0 + delta)


def apply_degradation(pair: StereoPair, deg: DomainDegradation, rng: Rng) -> StereoPair:
    """Degraded copy with ground truth stripped (origin = domain)."""
    views = []
    for view in (pair.left.data, pair.right.data):
        out = np.clip(_noise_and_brightness(view, rng, deg.noise_sigmas, deg.brightness_factors), 0.0, INTENSITY_MAX)
        delta = rng.uniform(-deg.gamma_delta, deg.gamma_delta) if deg.gamma_delta > 0 else 0.0
        views.append(_gamma(out, delta))

    if deg.v_shift > 0:
        shift = rng.uniform(0.0, deg.v_shift)
        if shift > 0:
            views[1] = shift_rows(views[1], shift)
    return StereoPair(Image.clamped(views[0]), Image.clamped(views[1]), Origin.DOMAIN)


def augment_synthetic(
    pair: StereoPair,
    rng: Rng,
    sigmas: Sequence[float] = AUGMENT_SIGMAS,
    factors: Sequence[float] = AUGMENT_FACTORS,
) -> StereoPair:
    """Per view: Gaussian noise with σ drawn from ``sigmas``, then per-channel brightness ρ."""
    if pair.origin is not Origin.SYNTHETIC:
        raise AugmentationError("augmentation applies to synthetic pairs only")
    left = _noise_and_brightness(pair.left.data, rng, sigmas, factors)
    right = _noise_and_brightness(pair.right.data, rng, sigmas, factors)
    return StereoPair(Image.clamped(left), Image.clamped(right), Origin.SYNTHETIC, pair.ground_truth)
