"""Generated datasets on disk.

Layout of a dataset directory::

    manifest.json
    <role>_0000_left.ppm   <role>_0000_right.ppm
    <role>_0000_gt.pfm     ground truth (synthetic and test roles)
    <role>_0000_occ.pgm    occluded left pixels (255) from the clean scene

Scene ``i`` of a role uses seed ``base + ROLE_SEED_STRIDE·role_index + i`` so
roles generated from the same base seed never share scenes.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

import numpy as np
from pydantic import ValidationError

from zole.core.files import write_json_manifest
from zole.core.rng import Rng
from zole.core.types import DisparityMap, Image, Origin, StereoPair
from zole.datagen.degrade import apply_degradation
from zole.datagen.errors import DatasetError
from zole.datagen.scene import generate_scene
from zole.datagen.transforms import filter_by_max_disparity, resize_pair
from zole.imgio.pfm import read_pfm, write_pfm
from zole.imgio.pnm import read_pgm, read_pnm, write_pgm, write_ppm
from zole.imgio.resample import resize_array
from zole.schemas.datasets import DatasetEntry, DatasetManifest, DatasetRole, GenDataSpec

logger = logging.getLogger(__name__)

MANIFEST_NAME = "manifest.json"
ROLE_SEED_STRIDE = 100_000
_ROLE_INDEX = {DatasetRole.SYNTHETIC: 0, DatasetRole.DOMAIN: 1, DatasetRole.VAL: 2, DatasetRole.TEST: 3}


@dataclass(frozen=True)
class Sample:
    name: str
    seed: int
    pair: StereoPair
    ground_truth: Optional[DisparityMap] = None
    occlusion: Optional[np.ndarray] = None


def scene_seed(base_seed: int, role: DatasetRole, index: int) -> int:
    return base_seed + ROLE_SEED_STRIDE * _ROLE_INDEX[role] + index


def make_sample(role: DatasetRole, spec: GenDataSpec, index: int, seed: int) -> Optional[Sample]:
    """One generated pair for ``role``; None when the disparity filter rejects it."""
    pair, occlusion = generate_scene(spec.scene.model_copy(update={"seed": seed}))
    if spec.resize_factor != 1.0:
        pair = resize_pair(pair, spec.resize_factor)
        occlusion = resize_array(occlusion.astype(np.float64), pair.shape[0], pair.shape[1]) > 0.5
    if spec.max_disparity_limit is not None and not filter_by_max_disparity([pair], spec.max_disparity_limit):
        return None

    name = f"{role.value}_{index:04d}"
    if role is DatasetRole.SYNTHETIC:
        return Sample(name, seed, pair, pair.ground_truth, occlusion)
    degraded = apply_degradation(pair, spec.degradation, Rng(seed, stream=(1,)))
    gt = pair.ground_truth if role.keeps_ground_truth else None
    return Sample(name, seed, degraded, gt, occlusion)


def generate_samples(
    role: DatasetRole, spec: GenDataSpec, count: int, base_seed: int, workers: int = 1
) -> list[Sample]:
    if count < 1:
        raise DatasetError(f"count must be >= 1, got {count}")
    indices = list(range(count))

    def build(i: int) -> Optional[Sample]:
        return make_sample(role, spec, i, scene_seed(base_seed, role, i))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(build, indices))
    else:
        results = [build(i) for i in indices]
    samples = [s for s in results if s is not None]
    if len(samples) < count:
        logger.info("[datagen] %s: %d of %d scenes dropped by max_disparity_limit", role.value, count - len(samples), count)
    return samples


def _write_view(path: Path, image: Image) -> None:
    if image.channels == 1:
        write_pgm(path, image)
    else:
        write_ppm(path, image)


def write_dataset(out_dir: Union[str, Path], role: DatasetRole, spec: GenDataSpec, samples: list[Sample]) -> DatasetManifest:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    entries = []
    for sample in samples:
        ext = "pgm" if sample.pair.left.channels == 1 else "ppm"
        entry = DatasetEntry(
            name=sample.name,
            seed=sample.seed,
            left=f"{sample.name}_left.{ext}",
            right=f"{sample.name}_right.{ext}",
        )
        _write_view(out / entry.left, sample.pair.left)
        _write_view(out / entry.right, sample.pair.right)
        if role.keeps_ground_truth and sample.ground_truth is not None:
            entry.ground_truth = f"{sample.name}_gt.pfm"
            write_pfm(out / entry.ground_truth, sample.ground_truth)
        if sample.occlusion is not None:
            entry.occlusion = f"{sample.name}_occ.pgm"
            write_pgm(out / entry.occlusion, Image(np.where(sample.occlusion, 255.0, 0.0)))
        entries.append(entry)

    manifest = DatasetManifest(role=role, spec=spec, entries=entries)
    write_json_manifest(out / MANIFEST_NAME, manifest.model_dump(mode="json"))
    logger.info("[datagen] wrote %d %s pairs to %s", len(entries), role.value, out)
    return manifest


def load_manifest(data_dir: Union[str, Path]) -> DatasetManifest:
    path = Path(data_dir) / MANIFEST_NAME
    if not path.is_file():
        raise DatasetError(f"{data_dir}: no {MANIFEST_NAME} (not a generated dataset)")
    try:
        return DatasetManifest.model_validate_json(path.read_text(encoding="utf-8"))
    except ValidationError as exc:
        raise DatasetError(f"{path}: invalid manifest: {exc.errors()[0]['msg']}") from exc


def load_sample(data_dir: Union[str, Path], role: DatasetRole, entry: DatasetEntry) -> Sample:
    root = Path(data_dir)
    for rel in (entry.left, entry.right, entry.ground_truth, entry.occlusion):
        if rel is not None and not (root / rel).is_file():
            raise DatasetError(f"{root}: missing file {rel}")
    left, right = read_pnm(root / entry.left), read_pnm(root / entry.right)
    gt = None
    if entry.ground_truth is not None:
        gt = read_pfm(root / entry.ground_truth)
        if not isinstance(gt, DisparityMap):
            raise DatasetError(f"{root / entry.ground_truth}: ground truth must be a single-channel PFM")
    occlusion = None
    if entry.occlusion is not None:
        occlusion = read_pgm(root / entry.occlusion).data[:, :, 0] > 127.0

    if role is DatasetRole.SYNTHETIC:
        if gt is None:
            raise DatasetError(f"{root}: synthetic pair {entry.name} has no ground truth")
        pair = StereoPair(left, right, Origin.SYNTHETIC, gt)
    else:
        pair = StereoPair(left, right, Origin.DOMAIN)
    return Sample(entry.name, entry.seed, pair, gt, occlusion)


def load_dataset(data_dir: Union[str, Path]) -> tuple[DatasetManifest, list[Sample]]:
    manifest = load_manifest(data_dir)
    samples = [load_sample(data_dir, manifest.role, entry) for entry in manifest.entries]
    logger.info("[datagen] loaded %d %s pairs from %s", len(samples), manifest.role.value, data_dir)
    return manifest, samples
