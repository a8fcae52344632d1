"""Zoom-and-learn training loop.

Each iteration draws ``batch_size`` examples from a shuffled list of all
training pairs (domain first, then synthetic). A domain example is trained
towards its own zoom target under the patch-graph regularizer built from the
current parameters; a synthetic example is trained towards its ground truth.
One SGD step is taken on the batch-mean gradient. Every ``validate_every``
iterations, and after the last one, the view-synthesis PSNR on the validation
pairs decides whether the current parameters become the best ones.

Random draws (list order, crops, augmentation) all happen on the calling
thread; per-example work may run on a thread pool and is reduced in draw order,
so results do not depend on the worker count.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Optional, Sequence

import numpy as np

from zole.adapt.errors import AdaptError, NonFiniteLossError
from zole.adapt.training_log import TrainingLog
from zole.adapt.validate import validate
from zole.adapt.zoom import zoom_target
from zole.core.errors import NumericalError
from zole.core.patches import PatchGrid
from zole.core.rng import Rng, shuffle
from zole.core.types import Origin, StereoPair
from zole.datagen.degrade import augment_synthetic
from zole.datagen.transforms import random_crop
from zole.loss.composite import ExampleLossReport, TrainingExample, composite_loss
from zole.loss.regularizer import build_patch_graphs
from zole.model.base import ModelParams, ParamGrad, StereoModel, mean_grad
from zole.model.optim import sgd_step
from zole.schemas.config import AdaptConfig, PretrainConfig
from zole.schemas.reports import IterationRecord, ValidationRecord

logger = logging.getLogger(__name__)

_PROGRESS_EVERY = 50


@dataclass
class EpochCursor:
    """Position in the shuffled list; reshuffles with the same stream when exhausted."""

    size: int
    rng: Rng
    order: list[int] = field(default_factory=list)
    position: int = 0
    epoch: int = 0

    def __post_init__(self) -> None:
        if self.size < 1:
            raise AdaptError("nothing to train on")
        self.order = shuffle(range(self.size), self.rng)

    def next_batch(self, n: int) -> list[int]:
        batch = []
        while len(batch) < n:
            if self.position == len(self.order):
                self.order = shuffle(range(self.size), self.rng)
                self.position = 0
                self.epoch += 1
            batch.append(self.order[self.position])
            self.position += 1
        return batch


@dataclass
class AdaptState:
    k: int
    theta: ModelParams
    best_theta: ModelParams
    best_psnr: Optional[float]
    cursor: EpochCursor

    def record_validation(self, value: float) -> bool:
        """Keep the current parameters if ``value`` beats the best PSNR so far."""
        if self.best_psnr is None or value > self.best_psnr:
            self.best_psnr = value
            self.best_theta = self.theta
            return True
        return False


def _check_pool(
    domain_pairs: Sequence[StereoPair], synth_pairs: Sequence[StereoPair], config: AdaptConfig
) -> list[StereoPair]:
    if any(p.origin is not Origin.DOMAIN for p in domain_pairs):
        raise AdaptError("domain training pairs must not carry ground truth")
    if any(p.origin is not Origin.SYNTHETIC for p in synth_pairs):
        raise AdaptError("synthetic training pairs need ground truth")
    pool = list(domain_pairs) + list(synth_pairs)
    if not pool:
        raise AdaptError("no training pairs (domain and synthetic sets are both empty)")
    for pair in pool:
        h, w = pair.shape
        if h < config.crop_size or w < config.crop_size:
            raise AdaptError(f"training pair {h}x{w} is smaller than crop_size {config.crop_size}")
    return pool


def _draw_example(pair: StereoPair, config: AdaptConfig, rng: Rng) -> StereoPair:
    pair = random_crop(pair, config.crop_size, rng)
    if config.augment and pair.origin is Origin.SYNTHETIC:
        pair = augment_synthetic(pair, rng)
    return pair


def example_step(
    model: StereoModel, theta: ModelParams, pair: StereoPair, *, config: AdaptConfig, grid: PatchGrid
) -> tuple[ExampleLossReport, ParamGrad]:
    """Loss report and parameter gradient of one drawn example."""
    pred = model.forward(pair, theta)
    if pair.origin is Origin.DOMAIN:
        target = zoom_target(model, theta, pair, config.r)
        graphs = build_patch_graphs(pair.left, pred, target, grid, config.weights)
        example = TrainingExample(pair, target, graphs, grid)
    else:
        example = TrainingExample(pair)
    report, cotangent = composite_loss(pred, example, config.weights)
    return report, model.backward(pair, theta, cotangent)


def _mean_or_zero(values: list[float]) -> float:
    return float(np.mean(values)) if values else 0.0


def _iteration_record(k: int, reports: list[ExampleLossReport]) -> IterationRecord:
    dom = [r for r in reports if r.origin is Origin.DOMAIN]
    syn = [r for r in reports if r.origin is Origin.SYNTHETIC]
    return IterationRecord(
        iter=k,
        l1_dom=_mean_or_zero([r.l1 for r in dom]),
        l1_syn=_mean_or_zero([r.l1 for r in syn]),
        reg=_mean_or_zero([r.reg_mean for r in dom]),
        total=float(np.mean([r.total for r in reports])),
    )


def _run_validation(state: AdaptState, model: StereoModel, val_pairs: Sequence[StereoPair], log: TrainingLog) -> None:
    value = validate(model, state.theta, val_pairs)
    improved = state.record_validation(value)
    log.log_validation(ValidationRecord(iter=state.k, psnr=value, best_psnr=state.best_psnr))
    logger.info(
        "[adapt] val iter=%d psnr=%.3f best=%.3f%s", state.k, value, state.best_psnr, " (new best)" if improved else ""
    )


def train(
    model: StereoModel,
    theta0: ModelParams,
    domain_pairs: Sequence[StereoPair],
    synth_pairs: Sequence[StereoPair],
    val_pairs: Optional[Sequence[StereoPair]],
    config: AdaptConfig,
    *,
    log: Optional[TrainingLog] = None,
) -> AdaptState:
    """Run ``config.k_max`` iterations; validation is skipped when ``val_pairs`` is empty."""
    pool = _check_pool(domain_pairs, synth_pairs, config)
    grid = PatchGrid.for_shape(config.crop_size, config.crop_size, config.weights.patch_side)
    rng = Rng(config.seed)
    draw_rng = rng.fork(1)
    state = AdaptState(k=0, theta=theta0, best_theta=theta0, best_psnr=None, cursor=EpochCursor(len(pool), rng.fork(0)))
    log = log or TrainingLog.discard()
    logger.info(
        "[adapt] start k_max=%d n=%d domain=%d synthetic=%d val=%d workers=%d",
        config.k_max, config.batch_size, len(domain_pairs), len(synth_pairs), len(val_pairs or ()), config.workers,
    )
    if val_pairs:
        _run_validation(state, model, val_pairs, log)

    executor = ThreadPoolExecutor(max_workers=config.workers) if config.workers > 1 else None
    try:
        for k in range(config.k_max):
            batch = [_draw_example(pool[i], config, draw_rng) for i in state.cursor.next_batch(config.batch_size)]
            step = partial(example_step, model, state.theta, config=config, grid=grid)
            try:
                results = list(executor.map(step, batch)) if executor else [step(p) for p in batch]
                record = _iteration_record(k, [report for report, _ in results])
                if not np.isfinite(record.total):
                    raise NonFiniteLossError(k)
                state.theta = sgd_step(state.theta, mean_grad([grad for _, grad in results]), config.lr)
            except NonFiniteLossError:
                raise
            except NumericalError as exc:
                raise NonFiniteLossError(k, str(exc)) from exc

            state.k = k + 1
            log.log_iteration(record)
            if state.k % _PROGRESS_EVERY == 0:
                logger.info("[adapt] iter=%d total=%.5f l1_dom=%.5f l1_syn=%.5f reg=%.5f",
                            state.k, record.total, record.l1_dom, record.l1_syn, record.reg)
            if val_pairs and state.k % config.validate_every == 0:
                _run_validation(state, model, val_pairs, log)
    finally:
        if executor is not None:
            executor.shutdown()

    if val_pairs and state.k % config.validate_every != 0:
        _run_validation(state, model, val_pairs, log)
    if not val_pairs:
        state.best_theta = state.theta
    return state


def adapt(
    model: StereoModel,
    theta0: ModelParams,
    domain_pairs: Sequence[StereoPair],
    synth_pairs: Sequence[StereoPair],
    val_pairs: Sequence[StereoPair],
    config: AdaptConfig,
    *,
    log: Optional[TrainingLog] = None,
) -> AdaptState:
    """Self-adapt Θ⁰ to the domain; ``state.best_theta`` is the result."""
    if not val_pairs:
        raise AdaptError("adaptation needs at least one validation pair")
    return train(model, theta0, domain_pairs, synth_pairs, val_pairs, config, log=log)


def pretrain(
    model: StereoModel,
    theta0: ModelParams,
    synth_pairs: Sequence[StereoPair],
    config: PretrainConfig,
    *,
    log: Optional[TrainingLog] = None,
) -> AdaptState:
    """Supervised L1 training on synthetic pairs only (no domain pairs, no graph term)."""
    if not synth_pairs:
        raise AdaptError("pretraining needs synthetic pairs with ground truth")
    return train(model, theta0, [], synth_pairs, None, config.as_adapt_config(), log=log)
