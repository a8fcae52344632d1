import numpy as np
import pytest

from zole.adapt.errors import AdaptError
from zole.adapt.validate import pair_psnr, validate
from zole.core.types import DisparityMap, Image, Origin, StereoPair
from zole.eval.metrics import PSNR_CAP
from tests.support.mock_models import OracleModel, ZeroDisparityModel, mock_params


def _identical_views(rng):
    view = Image(rng.uniform(0, 255, size=(12, 12, 3)))
    return StereoPair(view, view, Origin.DOMAIN)


def test_identical_views_with_zero_disparity_hit_the_cap(np_rng):
    assert validate(ZeroDisparityModel(), mock_params(), [_identical_views(np_rng)]) == PSNR_CAP


def test_true_disparity_reconstructs_the_left_view(shifted_pair):
    model = OracleModel(DisparityMap(np.full(shifted_pair.shape, 3.0)))
    assert pair_psnr(model, mock_params(), shifted_pair) == PSNR_CAP


def test_mean_over_pairs(np_rng, shifted_pair):
    model = ZeroDisparityModel()
    shifted = pair_psnr(model, mock_params(), shifted_pair)
    assert shifted < PSNR_CAP
    score = validate(model, mock_params(), [_identical_views(np_rng), shifted_pair])
    assert score == pytest.approx((PSNR_CAP + shifted) / 2.0)


def test_empty_validation_set():
    with pytest.raises(AdaptError):
        validate(ZeroDisparityModel(), mock_params(), [])
