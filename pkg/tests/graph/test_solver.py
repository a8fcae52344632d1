import numpy as np
import pytest

from zole.core.patches import PatchGrid, extract_all
from zole.graph.errors import GraphError
from zole.graph.laplacian import ExemplarSet, build_graph
from zole.graph.solver import denoise_map, solve_regularized
from zole.schemas.config import LossWeights

P = 6
WEIGHTS = LossWeights()


def _step(height: float) -> np.ndarray:
    patch = np.zeros((P, P))
    patch[:, P // 2:] = height
    return patch.reshape(-1)


def _contrast(s: np.ndarray) -> float:
    patch = s.reshape(P, P)
    return float(patch[:, P // 2:].mean() - patch[:, : P // 2].mean())


def _graph(f_left, f_curr, f_fine):
    ex = ExemplarSet(np.stack([WEIGHTS.w_left * f_left, WEIGHTS.w_curr * f_curr, WEIGHTS.w_fine * f_fine]))
    return build_graph(ex, WEIGHTS.alpha, P)


def test_edge_shared_by_left_and_fine_exemplars_is_kept():
    g = _graph(_step(100.0), np.zeros(P * P), _step(10.0))
    d = _step(10.0)
    s = solve_regularized(g, d, lam=1.0)
    assert _contrast(s) >= 0.8 * _contrast(d)


def test_pattern_only_in_current_prediction_does_not_leak_into_flat_signal():
    g = _graph(np.zeros(P * P), _step(10.0), np.zeros(P * P))
    d = np.full(P * P, 4.0)
    s = solve_regularized(g, d, lam=1.0)
    assert np.max(np.abs(s - d)) <= 0.05 * 10.0


def test_solution_satisfies_normal_equations(np_rng):
    g = build_graph(ExemplarSet(np_rng.normal(size=(3, 25))), WEIGHTS.alpha, 5)
    d = np_rng.normal(size=25)
    s = solve_regularized(g, d, lam=2.0)
    residual = s + 2.0 * (g.laplacian @ s) - d
    assert np.linalg.norm(residual) <= 1e-8 * np.linalg.norm(d)


def test_zero_lambda_returns_the_input(np_rng):
    g = build_graph(ExemplarSet(np_rng.normal(size=(3, 9))), WEIGHTS.alpha, 3)
    d = np_rng.normal(size=9)
    np.testing.assert_array_equal(solve_regularized(g, d, lam=0.0), d)


def test_negative_lambda_is_rejected():
    g = build_graph(ExemplarSet(np.zeros((3, 4))), WEIGHTS.alpha, 2)
    with pytest.raises(GraphError):
        solve_regularized(g, np.zeros(4), lam=-1.0)


def test_denoise_map_smooths_noise_inside_flat_tiles(np_rng):
    grid = PatchGrid.for_shape(12, 12, P)
    clean = np.zeros((12, 12))
    clean[:, 6:] = 8.0
    noisy = clean + np_rng.normal(scale=0.5, size=clean.shape)
    graphs = [build_graph(ExemplarSet(np.stack([f, f])), WEIGHTS.alpha, P) for f in extract_all(clean, grid)]
    out = denoise_map(noisy, graphs, grid, lam=2.0)
    assert np.abs(out - clean).mean() < np.abs(noisy - clean).mean()
