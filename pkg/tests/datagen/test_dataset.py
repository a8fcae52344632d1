import json

import numpy as np
import pytest

from zole.core.errors import DimensionError
from zole.core.rng import Rng
from zole.core.types import Origin
from zole.datagen.dataset import (
    MANIFEST_NAME,
    ROLE_SEED_STRIDE,
    generate_samples,
    load_dataset,
    scene_seed,
    write_dataset,
)
from zole.datagen.errors import DatasetError
from zole.datagen.transforms import filter_by_max_disparity, random_crop, resize_pair
from zole.schemas.datasets import DatasetRole, GenDataSpec
from tests.support.scenes import TINY_SCENE

SPEC = GenDataSpec(scene=TINY_SCENE)


def test_roles_never_share_scene_seeds():
    seeds = {scene_seed(0, role, i) for role in DatasetRole for i in range(50)}
    assert len(seeds) == 4 * 50
    assert scene_seed(7, DatasetRole.DOMAIN, 3) == 7 + ROLE_SEED_STRIDE + 3


def test_generation_is_deterministic_and_thread_safe():
    serial = generate_samples(DatasetRole.DOMAIN, SPEC, 3, base_seed=11)
    threaded = generate_samples(DatasetRole.DOMAIN, SPEC, 3, base_seed=11, workers=3)
    for a, b in zip(serial, threaded):
        assert a.name == b.name and a.seed == b.seed
        assert a.pair.left.data.tobytes() == b.pair.left.data.tobytes()
        assert a.pair.right.data.tobytes() == b.pair.right.data.tobytes()


def test_roles_carry_the_right_labels():
    synth = generate_samples(DatasetRole.SYNTHETIC, SPEC, 1, 0)[0]
    assert synth.pair.origin is Origin.SYNTHETIC and synth.ground_truth is not None
    test = generate_samples(DatasetRole.TEST, SPEC, 1, 0)[0]
    assert test.pair.origin is Origin.DOMAIN and test.ground_truth is not None
    val = generate_samples(DatasetRole.VAL, SPEC, 1, 0)[0]
    assert val.pair.origin is Origin.DOMAIN and val.ground_truth is None


def test_write_then_load(tmp_path):
    samples = generate_samples(DatasetRole.SYNTHETIC, SPEC, 2, 0)
    write_dataset(tmp_path, DatasetRole.SYNTHETIC, SPEC, samples)
    manifest, loaded = load_dataset(tmp_path)
    assert manifest.role is DatasetRole.SYNTHETIC
    assert [s.name for s in loaded] == ["synthetic_0000", "synthetic_0001"]
    for original, back in zip(samples, loaded):
        # synthetic views are already integral, ground truth disparities too
        np.testing.assert_array_equal(back.pair.left.data, original.pair.left.data)
        np.testing.assert_array_equal(back.ground_truth.data, original.ground_truth.data)
        np.testing.assert_array_equal(back.occlusion, original.occlusion)
        assert back.pair.origin is Origin.SYNTHETIC


def test_degraded_views_are_quantized_on_disk(tmp_path):
    samples = generate_samples(DatasetRole.TEST, SPEC, 1, 0)
    write_dataset(tmp_path, DatasetRole.TEST, SPEC, samples)
    _, loaded = load_dataset(tmp_path)
    assert np.max(np.abs(loaded[0].pair.left.data - samples[0].pair.left.data)) <= 0.5
    assert loaded[0].pair.origin is Origin.DOMAIN
    assert loaded[0].ground_truth is not None


def test_validation_sets_hold_no_ground_truth(tmp_path):
    write_dataset(tmp_path, DatasetRole.VAL, SPEC, generate_samples(DatasetRole.VAL, SPEC, 1, 0))
    manifest = json.loads((tmp_path / MANIFEST_NAME).read_text(encoding="utf-8"))
    assert manifest["entries"][0]["ground_truth"] is None
    assert not list(tmp_path.glob("*_gt.pfm"))


def test_loading_reports_missing_files(tmp_path):
    with pytest.raises(DatasetError):
        load_dataset(tmp_path)
    write_dataset(tmp_path, DatasetRole.SYNTHETIC, SPEC, generate_samples(DatasetRole.SYNTHETIC, SPEC, 1, 0))
    (tmp_path / "synthetic_0000_gt.pfm").unlink()
    with pytest.raises(DatasetError):
        load_dataset(tmp_path)


def test_invalid_manifest(tmp_path):
    (tmp_path / MANIFEST_NAME).write_text('{"role": "nope"}', encoding="utf-8")
    with pytest.raises(DatasetError):
        load_dataset(tmp_path)


def test_count_must_be_positive():
    with pytest.raises(DatasetError):
        generate_samples(DatasetRole.SYNTHETIC, SPEC, 0, 0)


def test_disparity_limit_drops_scenes():
    spec = SPEC.model_copy(update={"max_disparity_limit": 0.5})
    assert generate_samples(DatasetRole.SYNTHETIC, spec, 2, 0) == []


def test_resize_scales_disparities(shifted_pair):
    out = resize_pair(shifted_pair, 2.0)
    assert out.shape == (32, 48)
    np.testing.assert_allclose(out.ground_truth.data, 6.0)


def test_filter_by_max_disparity(shifted_pair):
    assert filter_by_max_disparity([shifted_pair], 3.0) == [shifted_pair]
    assert filter_by_max_disparity([shifted_pair], 2.9) == []
    assert filter_by_max_disparity([shifted_pair.as_domain()], 10.0) == []


def test_random_crop(shifted_pair):
    crop = random_crop(shifted_pair, 8, Rng(0))
    assert crop.shape == (8, 8)
    np.testing.assert_array_equal(crop.ground_truth.data, 3.0)
    whole = random_crop(shifted_pair, 16, Rng(0))
    assert whole.shape == (16, 16)
    with pytest.raises(DimensionError):
        random_crop(shifted_pair, 17, Rng(0))
