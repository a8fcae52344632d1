"""``zole`` command line: data generation, training, evaluation and graph debugging.

Usage:
    python -m zole gen-data --out data/synthetic --count 40 --role synthetic
    python -m zole pretrain --synth-dir data/synthetic --out runs/pretrained.ckpt
    python -m zole adapt --init runs/pretrained.ckpt --domain-dir data/domain \\
        --synth-dir data/synthetic --val-dir data/val --out runs/zole.ckpt --log runs/zole.jsonl
    python -m zole eval --checkpoint runs/zole.ckpt --data-dir data/test
    python -m zole experiment --out runs/experiment

Exit codes: 0 success, 1 user error, 2 internal error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional, Sequence

from dotenv import load_dotenv

from zole import __version__
from zole.cli import commands
from zole.cli.config import (
    ADAPT_FLAGS,
    GRAPH_FLAGS,
    MODEL_FLAGS,
    TRAINING_FLAGS,
    FieldFlag,
    add_field_flags,
)
from zole.core.errors import ZoleError
from zole.logging_config import configure_logging
from zole.schemas.config import AdaptConfig, LossWeights, PretrainConfig
from zole.schemas.datasets import DatasetRole
from zole.schemas.experiment import ExperimentConfig
from zole.settings import get_settings

logger = logging.getLogger(__name__)

_FORMATTER = argparse.ArgumentDefaultsHelpFormatter
DEFAULT_SWEEP_RATIOS = (1.0, 1.25, 1.5, 2.0, 3.0)


class _ArgumentParser(argparse.ArgumentParser):
    """Usage errors are user errors: exit 1 with a one-line diagnostic."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(1, f"ERROR: {message}\n")


def _ratio_list(text: str) -> tuple[float, ...]:
    try:
        ratios = tuple(float(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")
    if not ratios or any(r < 1.0 for r in ratios):
        raise argparse.ArgumentTypeError(f"ratios must be >= 1, got {text!r}")
    return ratios


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {text}")
    return value


def _add_workers(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--workers", type=int, default=None, help="thread count; unset falls back to ZOLE_WORKERS")


def _add_augment_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--no-augment",
        dest="cfg__augment",
        action="store_const",
        const=False,
        default=argparse.SUPPRESS,
        help="disable noise/brightness augmentation of synthetic examples (default: augment)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="zole", description="Zoom-and-learn self-adaptation for stereo matching.")
    parser.add_argument("--version", action="version", version=f"zole {__version__}")
    parser.add_argument("--log-level", default=None, help="console log level (default: ZOLE_LOG_LEVEL or INFO)")
    sub = parser.add_subparsers(dest="command", metavar="<command>", required=True)

    p = sub.add_parser("gen-data", help="generate a synthetic or degraded-domain dataset", formatter_class=_FORMATTER)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--count", type=int, required=True, help="number of pairs")
    p.add_argument("--role", required=True, choices=[r.value for r in DatasetRole], help="dataset role")
    p.add_argument("--spec", default=None, help="GenDataSpec JSON (scene, degradation, resize, disparity limit)")
    p.add_argument("--seed", type=int, default=0, help="base seed; each role and index gets its own scene seed")
    _add_workers(p)
    p.set_defaults(handler=commands.cmd_gen_data)

    p = sub.add_parser("pretrain", help="supervised L1 training on synthetic pairs", formatter_class=_FORMATTER)
    p.add_argument("--synth-dir", required=True, help="synthetic dataset directory")
    p.add_argument("--out", required=True, help="checkpoint to write")
    p.add_argument("--config", default=None, help="PretrainConfig JSON")
    p.add_argument("--log", default=None, help="JSON-lines training log")
    add_field_flags(p, PretrainConfig, TRAINING_FLAGS + MODEL_FLAGS)
    _add_augment_flag(p)
    p.set_defaults(handler=commands.cmd_pretrain)

    p = sub.add_parser("adapt", help="zoom-and-learn self-adaptation", formatter_class=_FORMATTER)
    p.add_argument("--init", required=True, help="checkpoint holding the pretrained parameters")
    p.add_argument("--domain-dir", default=None, help="unlabelled domain pairs (omit for synthetic finetuning)")
    p.add_argument("--synth-dir", default=None, help="synthetic pairs with ground truth")
    p.add_argument("--val-dir", required=True, help="domain validation pairs for PSNR model selection")
    p.add_argument("--out", required=True, help="checkpoint of the best validated parameters")
    p.add_argument("--config", default=None, help="AdaptConfig JSON")
    p.add_argument("--log", default=None, help="JSON-lines training log")
    add_field_flags(p, AdaptConfig, TRAINING_FLAGS + ADAPT_FLAGS)
    _add_augment_flag(p)
    p.set_defaults(handler=commands.cmd_adapt)

    p = sub.add_parser("eval", help="PSNR/SSIM and, with ground truth, EPE/3ER per pair", formatter_class=_FORMATTER)
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--checkpoint", default=None, help="predict with this checkpoint")
    source.add_argument("--pred-dir", default=None, help="read <name>.pfm predictions from this directory")
    p.add_argument("--data-dir", required=True, help="dataset directory")
    p.add_argument("--zoom", type=float, default=1.0, help="zoom ratio r for checkpoint predictions")
    p.add_argument("--out", default=None, help="also write all records to this JSON file")
    p.set_defaults(handler=commands.cmd_eval)

    p = sub.add_parser("predict", help="write disparity maps for every view pair", formatter_class=_FORMATTER)
    p.add_argument("--checkpoint", required=True, help="model checkpoint")
    p.add_argument("--pair-dir", required=True, help="directory of <name>_left/<name>_right PPM or PGM views")
    p.add_argument("--out-dir", required=True, help="directory for <name>.pfm outputs")
    p.add_argument("--zoom", type=float, default=1.0, help="zoom ratio r (1 = plain prediction)")
    p.add_argument("--pgm-scale", type=_positive_float, default=None, help="also write <name>.pgm at value*scale")
    p.set_defaults(handler=commands.cmd_predict)

    p = sub.add_parser("sweep", help="EPE/3ER of zoomed predictions per zoom ratio", formatter_class=_FORMATTER)
    p.add_argument("--checkpoint", required=True, help="model checkpoint")
    p.add_argument("--data-dir", required=True, help="dataset with ground truth (synthetic or test role)")
    p.add_argument(
        "--ratios", type=_ratio_list, default=DEFAULT_SWEEP_RATIOS, help="comma-separated zoom ratios"
    )
    p.set_defaults(handler=commands.cmd_sweep)

    p = sub.add_parser("graph-dump", help="print the exemplar graph of one patch", formatter_class=_FORMATTER)
    p.add_argument("--left", required=True, help="left view (PPM/PGM)")
    p.add_argument("--curr", required=True, help="current prediction (PFM)")
    p.add_argument("--fine", required=True, help="zoomed prediction (PFM)")
    p.add_argument("--patch", type=int, required=True, help="patch index j, row-major")
    p.add_argument("--config", default=None, help="LossWeights JSON")
    p.add_argument("--out", default=None, help="write the dump here instead of stdout")
    add_field_flags(p, LossWeights, GRAPH_FLAGS)
    p.set_defaults(handler=commands.cmd_graph_dump)

    p = sub.add_parser("experiment", help="desk-scale comparison of the adaptation variants", formatter_class=_FORMATTER)
    p.add_argument("--out", required=True, help="run directory (datasets, logs, checkpoints, report.json)")
    p.add_argument("--config", default=None, help="ExperimentConfig JSON")
    add_field_flags(p, ExperimentConfig, (FieldFlag("--seed", "seed", int, "seed for data generation"),))
    _add_workers(p)
    p.set_defaults(handler=commands.cmd_experiment)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    load_dotenv()
    settings = get_settings()
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level or settings.log_level, settings.log_dir, settings.log_retention_days)

    try:
        return args.handler(args)
    except ZoleError as exc:
        print(f"ERROR: {exc}", file=sys.stderr)
        return exc.exit_code
    except Exception:
        logger.exception("[cli] %s failed", args.command)
        return 2


if __name__ == "__main__":
    sys.exit(main())
