import numpy as np
import pytest

from zole.core.errors import DimensionError, PatchIndexError
from zole.core.patches import PatchGrid, assemble, extract_all, extract_patch, scatter_patch_add


def test_one_pixel_patches_are_pixels():
    grid = PatchGrid.for_shape(2, 2, 1)
    assert extract_patch(np.array([[1.0, 2.0], [3.0, 4.0]]), grid, 2).tolist() == [3.0]


def test_single_patch_is_whole_map_row_major():
    grid = PatchGrid.for_shape(2, 2, 2)
    assert extract_patch(np.array([[1.0, 2.0], [3.0, 4.0]]), grid, 0).tolist() == [1.0, 2.0, 3.0, 4.0]


def test_ramp_patch_matches_brute_force_slice():
    ramp = np.arange(16, dtype=np.float64).reshape(4, 4)
    grid = PatchGrid.for_shape(4, 4, 2)
    np.testing.assert_array_equal(extract_patch(ramp, grid, 1), ramp[0:2, 2:4].reshape(-1))


def test_scatter_of_every_patch_rebuilds_the_map(np_rng):
    values = np_rng.normal(size=(6, 9))
    grid = PatchGrid.for_shape(6, 9, 3)
    acc = np.zeros((6, 9))
    for j in range(grid.count):
        acc = scatter_patch_add(acc, grid, j, extract_patch(values, grid, j))
    np.testing.assert_array_equal(acc, values)


def test_scatter_is_adjoint_of_extract(np_rng):
    grid = PatchGrid.for_shape(4, 4, 2)
    x = np_rng.normal(size=(4, 4))
    for j in range(grid.count):
        y = np_rng.normal(size=grid.m)
        lhs = float(np.dot(extract_patch(x, grid, j), y))
        rhs = float(np.sum(x * scatter_patch_add(np.zeros((4, 4)), grid, j, y)))
        assert abs(lhs - rhs) <= 1e-12


def test_scatter_zero_patch_leaves_accumulator_unchanged(np_rng):
    grid = PatchGrid.for_shape(4, 4, 2)
    acc = np_rng.normal(size=(4, 4))
    np.testing.assert_array_equal(scatter_patch_add(acc, grid, 3, np.zeros(4)), acc)


def test_extract_all_and_assemble_are_lossless(np_rng):
    values = np_rng.normal(size=(40, 60))
    grid = PatchGrid.for_shape(40, 60, 20)
    patches = extract_all(values, grid)
    assert patches.shape == (6, 400)
    np.testing.assert_array_equal(patches[4], extract_patch(values, grid, 4))
    np.testing.assert_array_equal(assemble(patches, grid), values)


def test_partial_tiles_are_rejected():
    with pytest.raises(DimensionError):
        PatchGrid.for_shape(10, 12, 5)


@pytest.mark.parametrize("j", [-1, 4])
def test_out_of_range_patch_index(j):
    grid = PatchGrid.for_shape(4, 4, 2)
    with pytest.raises(PatchIndexError):
        extract_patch(np.zeros((4, 4)), grid, j)


def test_wrong_map_size_is_rejected():
    grid = PatchGrid.for_shape(4, 4, 2)
    with pytest.raises(DimensionError):
        extract_patch(np.zeros((4, 6)), grid, 0)
