"""Seeded pseudo-randomness.

Every random draw in zole flows through :class:`Rng`. It wraps numpy's PCG64
bit generator, whose stream is specified bit-for-bit and therefore identical
across platforms for a given seed. An ``Rng`` is single-owner: do not draw from
one instance on several threads.
"""

from __future__ import annotations

from typing import Sequence, TypeVar

import numpy as np

T = TypeVar("T")

_SEED_MASK = (1 << 64) - 1


class Rng:
    def __init__(self, seed: int, *, stream: tuple[int, ...] = ()) -> None:
        self.seed = int(seed) & _SEED_MASK
        self.stream = tuple(stream)
        seq = np.random.SeedSequence(self.seed, spawn_key=self.stream)
        self._gen = np.random.Generator(np.random.PCG64(seq))
        self.draws = 0

    def __repr__(self) -> str:
        return f"Rng(seed={self.seed}, stream={self.stream}, draws={self.draws})"

    def fork(self, *key: int) -> "Rng":
        """Independent child stream addressed by ``key``; does not consume draws from self."""
        return Rng(self.seed, stream=self.stream + tuple(int(k) for k in key))

    def integers(self, low: int, high: int, size=None):
        """Uniform integers in ``[low, high)``."""
        self.draws += 1
        out = self._gen.integers(low, high, size=size)
        return int(out) if size is None else out

    def uniform(self, low: float = 0.0, high: float = 1.0, size=None):
        self.draws += 1
        out = self._gen.uniform(low, high, size=size)
        return float(out) if size is None else out

    def normal(self, scale: float = 1.0, size=None):
        self.draws += 1
        out = self._gen.normal(0.0, scale, size=size)
        return float(out) if size is None else out

    def choice(self, options: Sequence[T]) -> T:
        if not options:
            raise ValueError("cannot choose from an empty sequence")
        return options[self.integers(0, len(options))]


def shuffle(indices: Sequence[T], rng: Rng) -> list[T]:
    """Fisher-Yates permutation of ``indices``; the input is left untouched."""
    out = list(indices)
    for i in range(len(out) - 1, 0, -1):
        j = rng.integers(0, i + 1)
        out[i], out[j] = out[j], out[i]
    return out
