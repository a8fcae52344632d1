import numpy as np
import pytest

from zole.core.types import DisparityMap, Image
from zole.eval.errors import MetricError
from zole.eval.metrics import PSNR_CAP
from zole.eval.report import aggregate, disparity_to_pgm, evaluate_pair, write_disparity_pgm
from zole.eval.warp import warp_right_to_left
from zole.imgio.pnm import read_pgm
from zole.schemas.reports import PairMetrics


def test_zero_disparity_warp_is_the_right_view(np_rng):
    right = Image(np_rng.uniform(0, 255, size=(5, 7, 3)))
    out, valid = warp_right_to_left(right, DisparityMap(np.zeros((5, 7))))
    np.testing.assert_array_equal(out.data, right.data)
    assert valid.all()


def test_warp_marks_samples_left_of_the_image(shifted_pair):
    _, valid = warp_right_to_left(shifted_pair.right, shifted_pair.ground_truth)
    assert not valid[:, :3].any()
    assert valid[:, 3:].all()


def test_true_disparity_scores_perfectly(shifted_pair):
    record = evaluate_pair("p", shifted_pair, shifted_pair.ground_truth)
    assert record.psnr == PSNR_CAP
    assert record.epe == 0.0
    assert record.three_pixel_error == 0.0
    assert 0.0 < record.ssim <= 1.0


def test_domain_pair_has_no_disparity_errors(shifted_pair):
    record = evaluate_pair("d", shifted_pair.as_domain(), DisparityMap(np.full(shifted_pair.shape, 3.0)))
    assert record.epe is None and record.three_pixel_error is None
    assert "3er" in record.model_dump(by_alias=True)


def test_occluded_pixels_are_skipped(shifted_pair):
    pred = np.full(shifted_pair.shape, 3.0)
    pred[:, :4] = 10.0
    occlusion = np.zeros(shifted_pair.shape, dtype=bool)
    occlusion[:, :4] = True
    record = evaluate_pair("o", shifted_pair, DisparityMap(pred), occlusion=occlusion)
    assert record.epe == 0.0


def test_aggregate_means_present_values():
    records = [
        PairMetrics(name="a", epe=1.0, three_pixel_error=10.0, psnr=30.0, ssim=0.8),
        PairMetrics(name="b", epe=3.0, three_pixel_error=30.0, psnr=20.0, ssim=0.6),
    ]
    summary = aggregate(records)
    assert summary.count == 2
    assert summary.epe == 2.0
    assert summary.three_pixel_error == 20.0
    assert summary.psnr == 25.0
    assert summary.ssim == pytest.approx(0.7)


def test_aggregate_without_ground_truth():
    summary = aggregate([PairMetrics(name="a", psnr=30.0, ssim=0.9)])
    assert summary.epe is None
    with pytest.raises(MetricError):
        aggregate([])


def test_disparity_visualisation(tmp_path):
    disp = DisparityMap(np.array([[0.0, 10.0, 100.0]]))
    np.testing.assert_array_equal(disparity_to_pgm(disp, 3.0).data[:, :, 0], [[0.0, 30.0, 255.0]])
    write_disparity_pgm(tmp_path / "d.pgm", disp, 2.0)
    np.testing.assert_array_equal(read_pgm(tmp_path / "d.pgm").data[:, :, 0], [[0.0, 20.0, 200.0]])
    with pytest.raises(MetricError):
        disparity_to_pgm(disp, 0.0)
