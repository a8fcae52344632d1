import numpy as np
import pytest

from zole.adapt.errors import AdaptError
from zole.adapt.zoom import zoom_target
from tests.support.mock_models import ConstantModel, ScaleEquivariantModel, mock_params


def test_constant_prediction_is_divided_by_the_ratio(shifted_pair):
    model = ConstantModel(6.0)
    target = zoom_target(model, mock_params(), shifted_pair, 1.5)
    assert target.shape == shifted_pair.shape
    np.testing.assert_allclose(target.data, 4.0, rtol=1e-12)
    # the model saw the up-sampled pair
    assert model.calls == [(24, 36)]


def test_unit_ratio_is_the_plain_prediction(shifted_pair):
    target = zoom_target(ConstantModel(2.5), mock_params(), shifted_pair, 1.0)
    np.testing.assert_array_equal(target.data, np.full(shifted_pair.shape, 2.5))


@pytest.mark.parametrize("r", [1.5, 2.0])
def test_scale_equivariant_model_is_unchanged_by_zoom(shifted_pair, r):
    model = ScaleEquivariantModel(base_width=shifted_pair.shape[1])
    plain = model.forward(shifted_pair, mock_params())
    target = zoom_target(model, mock_params(), shifted_pair, r)
    np.testing.assert_allclose(target.data, plain.data, atol=1e-6)


@pytest.mark.parametrize("r", [0.5, 0.999, float("nan")])
def test_ratio_below_one_is_rejected(shifted_pair, r):
    with pytest.raises(AdaptError):
        zoom_target(ConstantModel(1.0), mock_params(), shifted_pair, r)
