import json
import os
import time

import pytest

from zole.adapt.experiment import (
    PRETRAINED,
    REPORT_NAME,
    SYNTHETIC_FINETUNE,
    ZOLE,
    ZOLE_S,
    _checks,
    run_experiment,
)
from zole.model.checkpoint import load_checkpoint
from zole.schemas.experiment import DatasetCounts, ExperimentConfig
from zole.schemas.reports import AggregateMetrics, ExperimentRow
from tests.support.scenes import TINY_SCENE, tiny_adapt_config, tiny_pretrain_config

RUN_SLOW = os.getenv("ZOLE_RUN_SLOW") == "1"
requires_slow = pytest.mark.skipif(not RUN_SLOW, reason="設定 ZOLE_RUN_SLOW=1 才執行完整實驗")

TINY_EXPERIMENT = ExperimentConfig(
    seed=3,
    scene=TINY_SCENE,
    counts=DatasetCounts(synthetic=2, domain=2, val=1, test=1),
    pretrain=tiny_pretrain_config(),
    adapt=tiny_adapt_config(k_max=2),
)


def test_tiny_experiment_writes_every_artifact(tmp_path):
    report = run_experiment(TINY_EXPERIMENT, tmp_path)

    names = [row.model for row in report.rows]
    assert names == [PRETRAINED, SYNTHETIC_FINETUNE, ZOLE_S, ZOLE]
    assert set(report.checks) == {
        "zole_epe_improves_on_pretrained",
        "zole_val_psnr_not_below_zole_s",
        "zole_epe_not_above_zole_s",
    }
    for row in report.rows:
        assert row.test.count == 1
        assert row.test.epe is not None
        assert (tmp_path / f"{row.model}.ckpt").is_file()

    for role in ("synthetic", "domain", "val", "test"):
        assert (tmp_path / "data" / role / "manifest.json").is_file()
    for name in ("pretrain", SYNTHETIC_FINETUNE, ZOLE_S, ZOLE):
        assert (tmp_path / "logs" / f"{name}.jsonl").is_file()

    saved = json.loads((tmp_path / REPORT_NAME).read_text(encoding="utf-8"))
    assert saved["rows"][0]["test"]["3er"] == report.rows[0].test.three_pixel_error
    assert load_checkpoint(tmp_path / f"{ZOLE}.ckpt").meta["run"] == ZOLE


def test_experiment_is_reproducible():
    a = run_experiment(TINY_EXPERIMENT)
    b = run_experiment(TINY_EXPERIMENT, workers=2)
    assert a.model_dump() == b.model_dump()


@pytest.mark.slow
@requires_slow
def test_desk_scale_experiment_meets_its_checks(tmp_path):
    started = time.perf_counter()
    report = run_experiment(ExperimentConfig(), tmp_path, workers=8)
    elapsed = time.perf_counter() - started
    assert report.checks == {name: True for name in report.checks}
    assert elapsed <= 15 * 60


def _rows(pretrained_epe, zole_s, zole):
    """``zole_s`` and ``zole`` are (val_psnr, test_epe)."""

    def row(name, val_psnr, epe):
        return ExperimentRow(model=name, val_psnr=val_psnr, test=AggregateMetrics(count=1, epe=epe, psnr=30.0, ssim=0.9))

    return {
        PRETRAINED: row(PRETRAINED, 20.0, pretrained_epe),
        SYNTHETIC_FINETUNE: row(SYNTHETIC_FINETUNE, 20.0, pretrained_epe),
        ZOLE_S: row(ZOLE_S, *zole_s),
        ZOLE: row(ZOLE, *zole),
    }


def test_checks_pass_when_zole_leads():
    checks = _checks(_rows(2.0, zole_s=(25.0, 1.75), zole=(24.95, 1.7)))
    assert checks == {name: True for name in checks}


@pytest.mark.parametrize(
    ("zole_s", "zole", "failing"),
    [
        ((25.0, 1.9), (25.0, 1.81), "zole_epe_improves_on_pretrained"),
        ((25.0, 1.7), (24.85, 1.7), "zole_val_psnr_not_below_zole_s"),
        ((25.0, 1.6), (25.0, 1.7), "zole_epe_not_above_zole_s"),
    ],
)
def test_each_check_fails_on_its_own(zole_s, zole, failing):
    checks = _checks(_rows(2.0, zole_s=zole_s, zole=zole))
    assert [name for name, ok in checks.items() if not ok] == [failing]
