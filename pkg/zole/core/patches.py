"""Non-overlapping square patch tiling of a map.

Patches are numbered row-major over the grid and each patch is vectorized
row-major, so patch ``j`` covers grid cell ``(j // cols, j % cols)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from zole.core.errors import DimensionError, PatchIndexError


@dataclass(frozen=True)
class PatchGrid:
    patch_side: int
    rows: int
    cols: int

    def __post_init__(self) -> None:
        if self.patch_side < 1 or self.rows < 1 or self.cols < 1:
            raise DimensionError(
                f"invalid patch grid p={self.patch_side} rows={self.rows} cols={self.cols}"
            )

    @classmethod
    def for_shape(cls, height: int, width: int, patch_side: int) -> "PatchGrid":
        """Grid tiling an ``height``×``width`` map exactly; rejects partial tiles."""
        if patch_side < 1:
            raise DimensionError(f"patch side must be >= 1, got {patch_side}")
        if height % patch_side or width % patch_side:
            raise DimensionError(
                f"map {height}x{width} is not tiled by {patch_side}x{patch_side} patches"
            )
        return cls(patch_side, height // patch_side, width // patch_side)

    @property
    def m(self) -> int:
        """Pixels per patch."""
        return self.patch_side * self.patch_side

    @property
    def count(self) -> int:
        """Number of patches ``M``."""
        return self.rows * self.cols

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows * self.patch_side, self.cols * self.patch_side

    def check_map(self, values: np.ndarray) -> np.ndarray:
        arr = np.asarray(values, dtype=np.float64)
        if arr.ndim == 3 and arr.shape[2] == 1:
            arr = arr[:, :, 0]
        if arr.shape != self.shape:
            raise DimensionError(f"map shape {arr.shape} does not match grid {self.shape}")
        return arr

    def check_index(self, j: int) -> None:
        if not 0 <= j < self.count:
            raise PatchIndexError(f"patch index {j} outside [0, {self.count})")

    def window(self, j: int) -> tuple[slice, slice]:
        self.check_index(j)
        r, c = divmod(j, self.cols)
        p = self.patch_side
        return slice(r * p, (r + 1) * p), slice(c * p, (c + 1) * p)


def extract_patch(values, grid: PatchGrid, j: int) -> np.ndarray:
    """``R_j · vec(values)``: the j-th tile as a length-m vector."""
    arr = grid.check_map(values)
    rows, cols = grid.window(j)
    return arr[rows, cols].reshape(-1).copy()


def scatter_patch_add(accumulator, grid: PatchGrid, j: int, patch) -> np.ndarray:
    """``accumulator + R_jᵀ · patch``; returns a new array (the adjoint of extract_patch)."""
    out = grid.check_map(accumulator).copy()
    vec = np.asarray(patch, dtype=np.float64).reshape(-1)
    if vec.size != grid.m:
        raise DimensionError(f"patch length {vec.size} != m={grid.m}")
    rows, cols = grid.window(j)
    out[rows, cols] += vec.reshape(grid.patch_side, grid.patch_side)
    return out


def extract_all(values, grid: PatchGrid) -> np.ndarray:
    """All patches at once, shape ``(M, m)`` in patch order."""
    arr = grid.check_map(values)
    p = grid.patch_side
    tiles = arr.reshape(grid.rows, p, grid.cols, p).transpose(0, 2, 1, 3)
    return tiles.reshape(grid.count, grid.m).copy()


def assemble(patches, grid: PatchGrid) -> np.ndarray:
    """Inverse of :func:`extract_all`: place ``(M, m)`` patches back into a map."""
    arr = np.asarray(patches, dtype=np.float64)
    if arr.shape != (grid.count, grid.m):
        raise DimensionError(f"expected patches of shape {(grid.count, grid.m)}, got {arr.shape}")
    p = grid.patch_side
    tiles = arr.reshape(grid.rows, grid.cols, p, p).transpose(0, 2, 1, 3)
    return tiles.reshape(grid.shape).copy()
