"""Subcommand handlers. Each takes the parsed namespace and returns an exit code."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Iterable, Optional

from zole.adapt.experiment import run_experiment
from zole.adapt.loop import adapt, pretrain
from zole.adapt.sweep import scale_sweep
from zole.adapt.training_log import TrainingLog
from zole.adapt.zoom import zoom_target
from zole.cli.config import build_config, flag_overrides
from zole.cli.errors import ConfigError
from zole.core.errors import DimensionError, ZoleError
from zole.core.files import write_json_manifest
from zole.core.patches import PatchGrid
from zole.core.types import DisparityMap, Origin, StereoPair
from zole.datagen.dataset import generate_samples, load_dataset, write_dataset
from zole.eval.report import aggregate, evaluate_pair, write_disparity_pgm
from zole.graph.dump import format_graph
from zole.graph.laplacian import build_graph
from zole.imgio.pfm import read_pfm, write_pfm
from zole.imgio.pnm import read_pnm
from zole.loss.regularizer import build_exemplars
from zole.model.checkpoint import Checkpoint, load_checkpoint, save_checkpoint
from zole.model.toy import ToyStereoModel
from zole.schemas.config import AdaptConfig, LossWeights, PretrainConfig
from zole.schemas.datasets import DatasetRole, GenDataSpec
from zole.schemas.experiment import ExperimentConfig
from zole.settings import get_settings

logger = logging.getLogger(__name__)

_VIEW_SUFFIXES = (".ppm", ".pgm")


def _env_defaults() -> dict:
    return {"workers": get_settings().workers}


def _workers(args: argparse.Namespace) -> int:
    return args.workers if args.workers is not None else get_settings().workers


def _emit(payload: str) -> None:
    sys.stdout.write(payload + "\n")


def _pairs_of(data_dir: Optional[str]) -> list[StereoPair]:
    if data_dir is None:
        return []
    _, samples = load_dataset(data_dir)
    return [s.pair for s in samples]


def _predict(ckpt: Checkpoint, pair: StereoPair, zoom: float) -> DisparityMap:
    if zoom == 1.0:
        return ckpt.model.forward(pair, ckpt.params)
    return zoom_target(ckpt.model, ckpt.params, pair, zoom)


# ---------------------------------------------------------------- gen-data


def cmd_gen_data(args: argparse.Namespace) -> int:
    spec = build_config(GenDataSpec, args.spec)
    role = DatasetRole(args.role)
    samples = generate_samples(role, spec, args.count, args.seed, _workers(args))
    manifest = write_dataset(args.out, role, spec, samples)
    _emit(json.dumps({"role": role.value, "count": len(manifest.entries), "out": str(args.out)}))
    return 0


# ---------------------------------------------------------------- training


def cmd_pretrain(args: argparse.Namespace) -> int:
    config = build_config(PretrainConfig, args.config, flag_overrides(args), base=_env_defaults())
    synth = _pairs_of(args.synth_dir)
    model = ToyStereoModel(config.model)
    theta = model.init_from_seed(config.seed)
    state = pretrain(model, theta, synth, config, log=TrainingLog(args.log) if args.log else None)
    save_checkpoint(args.out, model, state.best_theta, {"stage": "pretrain", "iterations": state.k, "seed": config.seed})
    return 0


def cmd_adapt(args: argparse.Namespace) -> int:
    config = build_config(AdaptConfig, args.config, flag_overrides(args), base=_env_defaults())
    ckpt = load_checkpoint(args.init)
    domain = _pairs_of(args.domain_dir)
    synth = _pairs_of(args.synth_dir)
    val = _pairs_of(args.val_dir)

    state = adapt(ckpt.model, ckpt.params, domain, synth, val, config, log=TrainingLog(args.log) if args.log else None)
    meta = {"stage": "adapt", "iterations": state.k, "best_val_psnr": state.best_psnr, "seed": config.seed}
    save_checkpoint(args.out, ckpt.model, state.best_theta, meta)
    return 0


def cmd_experiment(args: argparse.Namespace) -> int:
    config = build_config(ExperimentConfig, args.config, flag_overrides(args))
    report = run_experiment(config, args.out, workers=_workers(args))
    _emit(report.model_dump_json(by_alias=True, indent=2))
    return 0


# ---------------------------------------------------------------- inference


def _pair_files(pair_dir: Path) -> Iterable[tuple[str, Path, Path]]:
    for left in sorted(pair_dir.iterdir()):
        if left.suffix not in _VIEW_SUFFIXES or not left.stem.endswith("_left"):
            continue
        name = left.stem[: -len("_left")]
        yield name, left, left.with_name(f"{name}_right{left.suffix}")


def cmd_predict(args: argparse.Namespace) -> int:
    ckpt = load_checkpoint(args.checkpoint)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    pair_dir = Path(args.pair_dir)
    if not pair_dir.is_dir():
        raise ConfigError(f"{pair_dir}: not a directory")

    written, failed = 0, 0
    for name, left, right in _pair_files(pair_dir):
        try:
            pair = StereoPair(read_pnm(left), read_pnm(right), Origin.DOMAIN)
            pred = _predict(ckpt, pair, args.zoom)
            write_pfm(out_dir / f"{name}.pfm", pred)
            if args.pgm_scale is not None:
                write_disparity_pgm(out_dir / f"{name}.pgm", pred, args.pgm_scale)
            written += 1
        except ZoleError as exc:
            # 單一檔案失敗不中斷整批
            print(f"ERROR: {name}: {exc}", file=sys.stderr)
            failed += 1
    logger.info("[cli] predict: %d written, %d failed, zoom=%s", written, failed, args.zoom)
    if written == 0 and failed == 0:
        raise ConfigError(f"{pair_dir}: no <name>_left/<name>_right view pairs found")
    return 1 if failed else 0


def cmd_eval(args: argparse.Namespace) -> int:
    _, samples = load_dataset(args.data_dir)
    ckpt = load_checkpoint(args.checkpoint) if args.checkpoint else None
    records = []
    for sample in samples:
        if ckpt is not None:
            pred = _predict(ckpt, sample.pair, args.zoom)
        else:
            path = Path(args.pred_dir) / f"{sample.name}.pfm"
            if not path.is_file():
                raise ConfigError(f"{args.pred_dir}: missing prediction {path.name}")
            pred = read_pfm(path)
            if not isinstance(pred, DisparityMap):
                raise ConfigError(f"{path}: prediction must be a single-channel PFM")
        record = evaluate_pair(sample.name, sample.pair, pred, sample.ground_truth, sample.occlusion)
        _emit(record.model_dump_json(by_alias=True))
        records.append(record)

    summary = aggregate(records)
    _emit(summary.model_dump_json(by_alias=True))
    if args.out:
        write_json_manifest(
            Path(args.out),
            {
                "pairs": [r.model_dump(mode="json", by_alias=True) for r in records],
                "aggregate": summary.model_dump(mode="json", by_alias=True),
            },
        )
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    ckpt = load_checkpoint(args.checkpoint)
    _, samples = load_dataset(args.data_dir)
    labelled = [s for s in samples if s.ground_truth is not None]
    if not labelled:
        raise ConfigError(f"{args.data_dir}: sweep needs pairs with ground truth (synthetic or test role)")
    rows = scale_sweep(
        ckpt.model,
        ckpt.params,
        [s.pair for s in labelled],
        [s.ground_truth for s in labelled],
        args.ratios,
        [None if s.occlusion is None else ~s.occlusion for s in labelled],
    )
    for row in rows:
        _emit(row.model_dump_json(by_alias=True))
    return 0


# ---------------------------------------------------------------- debugging


def _read_map(path: str) -> DisparityMap:
    value = read_pfm(path)
    if not isinstance(value, DisparityMap):
        raise DimensionError(f"{path}: expected a single-channel PFM disparity map")
    return value


def cmd_graph_dump(args: argparse.Namespace) -> int:
    weights = build_config(LossWeights, args.config, flag_overrides(args))
    left = read_pnm(args.left)
    curr = _read_map(args.curr)
    fine = _read_map(args.fine)
    if not (left.shape == curr.shape == fine.shape):
        raise DimensionError(
            f"left {left.shape}, current {curr.shape} and fine {fine.shape} predictions differ in size"
        )
    grid = PatchGrid.for_shape(left.height, left.width, weights.patch_side)
    grid.check_index(args.patch)
    exemplars = build_exemplars(left, curr, fine, grid, args.patch, weights)
    text = format_graph(build_graph(exemplars, weights.alpha, weights.patch_side))
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0
