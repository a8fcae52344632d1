import numpy as np
import pytest

from zole.model.base import ModelParams, ParamGrad, ParamLayout, ParamSpec, mean_grad
from zole.model.errors import ModelError, ModelNumericsError
from zole.model.optim import sgd_step

SCALAR = ParamLayout(entries=(ParamSpec(name="theta", shape=(1,)),))
TWO = ParamLayout(entries=(ParamSpec(name="w", shape=(2, 2)), ParamSpec(name="b", shape=(3,))))


def test_layout_slices_follow_entry_order():
    assert TWO.size == 7
    assert TWO.slices == {"w": slice(0, 4), "b": slice(4, 7)}
    theta = ModelParams(np.arange(7.0), TWO)
    assert theta.tensor("w").tolist() == [[0.0, 1.0], [2.0, 3.0]]
    assert theta.tensor("b").tolist() == [4.0, 5.0, 6.0]


def test_params_are_immutable():
    theta = ModelParams(np.zeros(7), TWO)
    with pytest.raises(ValueError):
        theta.values[0] = 1.0


def test_wrong_size_and_non_finite_values_are_rejected():
    with pytest.raises(ModelError):
        ModelParams(np.zeros(6), TWO)
    with pytest.raises(ModelNumericsError):
        ModelParams(np.array([np.nan]), SCALAR)


def test_zero_gradient_leaves_params_unchanged():
    theta = ModelParams(np.arange(7.0), TWO)
    assert sgd_step(theta, ParamGrad.zeros(TWO), 0.1).equals(theta)


def test_single_step_arithmetic():
    theta = sgd_step(ModelParams([1.0], SCALAR), ParamGrad([2.0], SCALAR), 0.5)
    assert theta.values.tolist() == [0.0]


def test_gradient_descent_on_quadratic():
    theta = ModelParams([1.0], SCALAR)
    for _ in range(10):
        # d/dθ of θ²/2 is θ
        theta = sgd_step(theta, ParamGrad(theta.values, SCALAR), 0.1)
    assert theta.values[0] == pytest.approx(0.9**10, rel=1e-12)
    assert theta.values[0] == pytest.approx(0.3487, abs=1e-4)


def test_learning_rate_must_be_positive():
    with pytest.raises(ModelError):
        sgd_step(ModelParams([1.0], SCALAR), ParamGrad([1.0], SCALAR), 0.0)


def test_mean_grad_sums_in_order():
    grads = [ParamGrad([float(k)], SCALAR) for k in range(1, 5)]
    assert mean_grad(grads).values.tolist() == [2.5]
    with pytest.raises(ModelError):
        mean_grad([])


def test_layout_mismatch_is_rejected():
    with pytest.raises(ModelError):
        ParamGrad([1.0], SCALAR) + ParamGrad(np.zeros(7), TWO)
