from zole.schemas.config import AdaptConfig, LossWeights, PretrainConfig, ToyModelConfig, TrainingConfig
from zole.schemas.datasets import (
    AUGMENT_FACTORS,
    AUGMENT_SIGMAS,
    DatasetEntry,
    DatasetManifest,
    DatasetRole,
    DomainDegradation,
    GenDataSpec,
    SceneSpec,
)
from zole.schemas.experiment import DatasetCounts, ExperimentConfig
from zole.schemas.reports import (
    AggregateMetrics,
    ExperimentReport,
    ExperimentRow,
    IterationRecord,
    PairMetrics,
    SweepRow,
    ValidationRecord,
)

__all__ = [
    "AUGMENT_FACTORS",
    "AUGMENT_SIGMAS",
    "AdaptConfig",
    "AggregateMetrics",
    "DatasetCounts",
    "DatasetEntry",
    "DatasetManifest",
    "DatasetRole",
    "DomainDegradation",
    "ExperimentConfig",
    "ExperimentReport",
    "ExperimentRow",
    "GenDataSpec",
    "IterationRecord",
    "LossWeights",
    "PairMetrics",
    "PretrainConfig",
    "SceneSpec",
    "SweepRow",
    "ToyModelConfig",
    "TrainingConfig",
    "ValidationRecord",
]
