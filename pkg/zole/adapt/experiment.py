"""Desk-scale comparison run: generate data, pretrain, then adapt three ways.

All runs start from the same pretrained parameters:

- ``pretrained``: no further training
- ``synthetic-finetune``: the training loop on synthetic pairs only
- ``zole-s``: zoom-and-learn without the graph regularizer (λ = 0)
- ``zole``: zoom-and-learn with the configured weights

Each model is scored by validation PSNR and by test metrics against the
held-out ground truth.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

from zole.adapt.loop import adapt, pretrain
from zole.adapt.training_log import TrainingLog
from zole.adapt.validate import validate
from zole.core.files import write_json_manifest
from zole.datagen.dataset import Sample, generate_samples, write_dataset
from zole.eval.report import aggregate, evaluate_pair
from zole.model.base import ModelParams
from zole.model.checkpoint import save_checkpoint
from zole.model.toy import ToyStereoModel
from zole.schemas.config import AdaptConfig
from zole.schemas.datasets import DatasetRole, GenDataSpec
from zole.schemas.experiment import ExperimentConfig
from zole.schemas.reports import AggregateMetrics, ExperimentReport, ExperimentRow

logger = logging.getLogger(__name__)

REPORT_NAME = "report.json"
PRETRAINED = "pretrained"
SYNTHETIC_FINETUNE = "synthetic-finetune"
ZOLE_S = "zole-s"
ZOLE = "zole"

# adapted test EPE must beat the pretrained one by this relative margin
EPE_IMPROVEMENT = 0.10
PSNR_SLACK_DB = 0.1


@dataclass(frozen=True)
class ExperimentData:
    synthetic: list[Sample]
    domain: list[Sample]
    val: list[Sample]
    test: list[Sample]


def generate_experiment_data(
    config: ExperimentConfig, workers: int = 1, out_dir: Optional[Path] = None
) -> ExperimentData:
    spec = GenDataSpec(scene=config.scene, degradation=config.degradation)
    by_role = {}
    for role in (DatasetRole.SYNTHETIC, DatasetRole.DOMAIN, DatasetRole.VAL, DatasetRole.TEST):
        samples = generate_samples(role, spec, getattr(config.counts, role.value), config.seed, workers)
        if out_dir is not None:
            write_dataset(out_dir / "data" / role.value, role, spec, samples)
        by_role[role.value] = samples
    return ExperimentData(**by_role)


def _test_metrics(model: ToyStereoModel, theta: ModelParams, test: list[Sample]) -> AggregateMetrics:
    records = [
        evaluate_pair(s.name, s.pair, model.forward(s.pair, theta), s.ground_truth, s.occlusion)
        for s in test
    ]
    return aggregate(records)


def _checks(rows: dict[str, ExperimentRow]) -> dict[str, bool]:
    base, zole, zole_s = rows[PRETRAINED].test, rows[ZOLE].test, rows[ZOLE_S].test
    return {
        "zole_epe_improves_on_pretrained": zole.epe <= (1.0 - EPE_IMPROVEMENT) * base.epe,
        "zole_val_psnr_not_below_zole_s": rows[ZOLE].val_psnr >= rows[ZOLE_S].val_psnr - PSNR_SLACK_DB,
        "zole_epe_not_above_zole_s": zole.epe <= zole_s.epe,
    }


def run_experiment(
    config: ExperimentConfig,
    out_dir: Union[str, Path, None] = None,
    *,
    workers: int = 1,
) -> ExperimentReport:
    """Full comparison; with ``out_dir`` the datasets, logs, checkpoints and report are written there."""
    out = Path(out_dir) if out_dir is not None else None
    if out is not None:
        out.mkdir(parents=True, exist_ok=True)

    def log_for(name: str) -> TrainingLog:
        return TrainingLog(out / "logs" / f"{name}.jsonl") if out is not None else TrainingLog.discard()

    data = generate_experiment_data(config, workers, out)
    synth = [s.pair for s in data.synthetic]
    domain = [s.pair for s in data.domain]
    val = [s.pair for s in data.val]

    model = ToyStereoModel(config.pretrain.model)
    theta_init = model.init_from_seed(config.pretrain.seed)
    pretrain_config = config.pretrain.model_copy(update={"workers": workers})
    logger.info("[adapt] experiment: pretraining %d iterations", pretrain_config.k_max)
    theta0 = pretrain(model, theta_init, synth, pretrain_config, log=log_for("pretrain")).best_theta

    adapt_config = config.adapt.model_copy(update={"workers": workers})
    no_graph = adapt_config.weights.model_copy(update={"lambda_agg": 0.0})
    runs: dict[str, tuple[AdaptConfig, bool]] = {
        SYNTHETIC_FINETUNE: (adapt_config, False),
        ZOLE_S: (adapt_config.model_copy(update={"weights": no_graph}), True),
        ZOLE: (adapt_config, True),
    }

    thetas = {PRETRAINED: theta0}
    for name, (run_config, use_domain) in runs.items():
        logger.info("[adapt] experiment: %s", name)
        state = adapt(model, theta0, domain if use_domain else [], synth, val, run_config, log=log_for(name))
        thetas[name] = state.best_theta

    rows = {}
    for name, theta in thetas.items():
        rows[name] = ExperimentRow(model=name, val_psnr=validate(model, theta, val), test=_test_metrics(model, theta, data.test))
        logger.info(
            "[adapt] experiment %s: val_psnr=%.3f test_epe=%.4f test_psnr=%.3f",
            name, rows[name].val_psnr, rows[name].test.epe, rows[name].test.psnr,
        )
        if out is not None:
            save_checkpoint(out / f"{name}.ckpt", model, theta, {"run": name, "seed": config.seed})

    report = ExperimentReport(rows=list(rows.values()), checks=_checks(rows))
    if out is not None:
        write_json_manifest(out / REPORT_NAME, report.model_dump(mode="json", by_alias=True))
    return report
