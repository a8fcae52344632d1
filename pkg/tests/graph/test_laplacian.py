import numpy as np
import pytest

from zole.core.errors import DimensionError
from zole.graph.errors import GraphError
from zole.graph.laplacian import (
    MIN_NEIGHBORS,
    ExemplarSet,
    PatchGraph,
    build_graph,
    pairwise_distance_sq,
    pixel_distance_sq,
    regularizer_grad,
    regularizer_value,
    select_epsilon,
)
from tests.support.gradcheck import numeric_grad, relative_error

ALPHA = 0.2


def _complete_uniform_graph(m: int) -> PatchGraph:
    iu, ju = np.triu_indices(m, k=1)
    return PatchGraph(m=m, rows=iu, cols=ju, weights=np.ones(iu.size), epsilon=1.0)


def _pairwise_oracle(g: PatchGraph, s: np.ndarray) -> float:
    dense = g.adjacency.toarray()
    total = 0.0
    for i in range(g.m):
        for j in range(g.m):
            total += dense[i, j] * (s[i] - s[j]) ** 2
    return 0.5 * total


def test_pixel_distance_combines_features_and_offset():
    ex = ExemplarSet(np.array([[0.0, 3.0, 0.0, 3.0]]))
    assert pixel_distance_sq(ex, 0, 1, ALPHA, 2) == pytest.approx(9.2, abs=1e-12)
    assert pixel_distance_sq(ex, 2, 2, ALPHA, 2) == 0.0


def test_constant_exemplars_leave_only_spatial_term():
    ex = ExemplarSet(np.full((3, 9), 5.0))
    dist = pairwise_distance_sq(ex, ALPHA, 3)
    # pixel 0 is (0, 0), pixel 8 is (2, 2)
    assert dist[0, 8] == pytest.approx(ALPHA * 8)
    assert dist[1, 3] == pytest.approx(ALPHA * 2)


def test_exemplar_length_must_match_patch_side():
    with pytest.raises(DimensionError):
        pairwise_distance_sq(ExemplarSet(np.zeros((3, 8))), ALPHA, 3)


def test_small_patch_falls_back_to_complete_graph():
    g = build_graph(ExemplarSet(np.zeros((3, 4))), ALPHA, 2)
    assert g.edge_count == 6
    assert g.degree_counts().tolist() == [3, 3, 3, 3]


def test_two_by_two_constant_weights():
    g = build_graph(ExemplarSet(np.full((3, 4), 7.0)), ALPHA, 2)
    dense = g.adjacency.toarray()
    # 0 1 / 2 3: sides (0,1) (0,2) (1,3) (2,3), diagonals (0,3) (1,2)
    assert dense[0, 1] == pytest.approx(np.exp(-0.2))
    assert dense[2, 3] == pytest.approx(0.8187, abs=1e-4)
    assert dense[0, 3] == pytest.approx(np.exp(-0.4))
    assert dense[1, 2] == pytest.approx(0.6703, abs=1e-4)


def test_epsilon_on_constant_three_by_three():
    ex = ExemplarSet(np.zeros((3, 9)))
    dist = pairwise_distance_sq(ex, ALPHA, 3)
    assert select_epsilon(dist) == pytest.approx(np.sqrt(0.8))
    g = build_graph(ex, ALPHA, 3)
    assert g.epsilon == pytest.approx(np.sqrt(0.8))
    # brute force over all 36 pairs
    kept = {(i, j) for i, j in zip(g.rows.tolist(), g.cols.tolist())}
    expected = {(i, j) for i in range(9) for j in range(i + 1, 9) if dist[i, j] <= 0.8 + 1e-12}
    assert kept == expected
    assert g.degree_counts().min() >= MIN_NEIGHBORS


def test_single_pixel_patch_has_no_edges():
    g = build_graph(ExemplarSet(np.zeros((3, 1))), ALPHA, 1)
    assert g.edge_count == 0
    assert regularizer_value(g, [4.0]) == 0.0


def test_uniform_complete_graph_value():
    g = _complete_uniform_graph(4)
    assert regularizer_value(g, [0.0, 0.0, 10.0, 10.0]) == pytest.approx(400.0)
    assert regularizer_value(g, np.full(4, 3.0)) == 0.0


def test_gradient_vanishes_on_constants():
    g = build_graph(ExemplarSet(np.random.default_rng(0).normal(size=(3, 25))), ALPHA, 5)
    np.testing.assert_allclose(regularizer_grad(g, np.full(25, 2.5)), 0.0, atol=1e-12)


def test_gradient_of_basis_vector_is_laplacian_column():
    g = build_graph(ExemplarSet(np.random.default_rng(1).normal(size=(3, 9))), ALPHA, 3)
    s = np.full(9, 1.0)
    s[4] += 1.0
    lap = g.laplacian.toarray()
    np.testing.assert_allclose(regularizer_grad(g, s), 2.0 * lap[:, 4], atol=1e-12)


def test_gradient_matches_finite_differences(np_rng):
    for _ in range(20):
        g = build_graph(ExemplarSet(np_rng.normal(size=(3, 16))), ALPHA, 4)
        s = np_rng.normal(size=16)
        numeric = numeric_grad(lambda x: regularizer_value(g, x), s)
        assert relative_error(regularizer_grad(g, s), numeric) < 1e-6


def test_signal_length_is_checked():
    g = _complete_uniform_graph(4)
    with pytest.raises(DimensionError):
        regularizer_value(g, np.zeros(5))


def test_edges_must_be_upper_triangular():
    with pytest.raises(GraphError):
        PatchGraph(m=3, rows=np.array([1]), cols=np.array([0]), weights=np.array([0.5]), epsilon=1.0)


@pytest.mark.parametrize("p", [2, 3, 5, 20])
def test_graph_invariants_on_random_patches(p):
    rng = np.random.default_rng(100 + p)
    m = p * p
    for trial in range(50):
        scale = rng.choice([0.1, 1.0, 30.0])
        g = build_graph(ExemplarSet(scale * rng.normal(size=(3, m))), ALPHA, p)
        lap = g.laplacian
        # symmetry, weights in (0, 1]
        assert abs(lap - lap.T).max() == 0.0
        assert np.all(g.weights > 0.0) and np.all(g.weights <= 1.0)
        # zero row sums
        assert np.max(np.abs(np.asarray(lap.sum(axis=1)).ravel())) <= 1e-12
        assert g.degree_counts().min() >= min(MIN_NEIGHBORS, m - 1)
        xs = rng.normal(size=(100, m))
        forms = np.einsum("ij,ij->i", xs, (lap @ xs.T).T)
        assert forms.min() >= -1e-12
        if trial < 5:
            s = rng.normal(size=m)
            oracle = _pairwise_oracle(g, s)
            assert regularizer_value(g, s) == pytest.approx(oracle, rel=1e-9, abs=1e-12)
