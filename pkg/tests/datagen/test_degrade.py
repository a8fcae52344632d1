import numpy as np
import pytest

from zole.core.rng import Rng
from zole.core.types import DisparityMap, Image, Origin, StereoPair
from zole.datagen.degrade import apply_degradation, augment_synthetic
from zole.datagen.errors import AugmentationError
from zole.datagen.scene import generate_scene
from zole.eval.metrics import psnr
from zole.eval.warp import warp_right_to_left
from zole.schemas.datasets import DomainDegradation, SceneSpec


def _flat_pair(value, size=256):
    view = Image(np.full((size, size, 3), value))
    return StereoPair(view, view, Origin.SYNTHETIC, DisparityMap(np.zeros((size, size))))


def test_identity_degradation_keeps_the_views(shifted_pair):
    out = apply_degradation(shifted_pair, DomainDegradation.identity(), Rng(0))
    assert out.origin is Origin.DOMAIN
    assert out.ground_truth is None
    np.testing.assert_array_equal(out.left.data, shifted_pair.left.data)
    np.testing.assert_array_equal(out.right.data, shifted_pair.right.data)


def test_noise_level_matches_sigma():
    deg = DomainDegradation.identity().model_copy(update={"noise_sigmas": (10.0,)})
    out = apply_degradation(_flat_pair(128.0), deg, Rng(1))
    # E|N(0, σ²)| = σ·sqrt(2/π)
    assert np.mean(np.abs(out.left.data - 128.0)) == pytest.approx(10.0 * np.sqrt(2.0 / np.pi), rel=0.05)


def test_brightness_factor_scales_intensities():
    deg = DomainDegradation.identity().model_copy(update={"brightness_factors": (1.2,)})
    out = apply_degradation(_flat_pair(100.0, size=4), deg, Rng(2))
    np.testing.assert_allclose(out.left.data, 120.0)
    np.testing.assert_allclose(out.right.data, 120.0)


def test_vertical_misalignment_moves_only_the_right_view(shifted_pair):
    deg = DomainDegradation.identity().model_copy(update={"v_shift": 2.0})
    out = apply_degradation(shifted_pair, deg, Rng(3))
    np.testing.assert_array_equal(out.left.data, shifted_pair.left.data)
    assert not np.array_equal(out.right.data, shifted_pair.right.data)


def test_degradation_is_seeded(shifted_pair):
    deg = DomainDegradation()
    a = apply_degradation(shifted_pair, deg, Rng(4))
    b = apply_degradation(shifted_pair, deg, Rng(4))
    assert a.left.data.tobytes() == b.left.data.tobytes()
    assert a.right.data.tobytes() == b.right.data.tobytes()


def test_augmentation_identity(shifted_pair):
    out = augment_synthetic(shifted_pair, Rng(0), sigmas=(0.0,), factors=(1.0,))
    np.testing.assert_array_equal(out.left.data, shifted_pair.left.data)
    assert out.ground_truth is shifted_pair.ground_truth


def test_augmentation_noise_level():
    out = augment_synthetic(_flat_pair(128.0), Rng(5), sigmas=(15.0,), factors=(1.0,))
    assert np.mean(np.abs(out.right.data - 128.0)) == pytest.approx(15.0 * np.sqrt(2.0 / np.pi), rel=0.05)


def test_augmentation_rejects_domain_pairs(shifted_pair):
    with pytest.raises(AugmentationError):
        augment_synthetic(shifted_pair.as_domain(), Rng(0))


@pytest.mark.parametrize("seed", range(4))
def test_degradation_breaks_photo_consistency(seed):
    pair, occlusion = generate_scene(SceneSpec(height=32, width=48, num_shapes=2, disp_range=(2, 6), seed=seed))
    degraded = apply_degradation(pair, DomainDegradation(), Rng(seed))

    def warp_psnr(p):
        synthesized, valid = warp_right_to_left(p.right, pair.ground_truth)
        return psnr(p.left, synthesized, valid & ~occlusion)

    assert warp_psnr(degraded) <= warp_psnr(pair) - 3.0
