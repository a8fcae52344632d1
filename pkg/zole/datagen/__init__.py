from zole.datagen.dataset import (
    MANIFEST_NAME,
    Sample,
    generate_samples,
    load_dataset,
    load_manifest,
    make_sample,
    scene_seed,
    write_dataset,
)
from zole.datagen.degrade import apply_degradation, augment_synthetic
from zole.datagen.errors import AugmentationError, DatagenError, DatasetError, SceneSpecError
from zole.datagen.scene import Layer, generate_scene, label_maps, plan_scene, render_scene
from zole.datagen.transforms import filter_by_max_disparity, random_crop, resize_pair

__all__ = [
    "MANIFEST_NAME",
    "AugmentationError",
    "DatagenError",
    "DatasetError",
    "Layer",
    "Sample",
    "SceneSpecError",
    "apply_degradation",
    "augment_synthetic",
    "filter_by_max_disparity",
    "generate_samples",
    "generate_scene",
    "label_maps",
    "load_dataset",
    "load_manifest",
    "make_sample",
    "plan_scene",
    "random_crop",
    "render_scene",
    "resize_pair",
    "scene_seed",
    "write_dataset",
]
