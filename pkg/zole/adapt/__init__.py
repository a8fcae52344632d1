from zole.adapt.errors import AdaptError, NonFiniteLossError
from zole.adapt.experiment import ExperimentData, generate_experiment_data, run_experiment
from zole.adapt.loop import AdaptState, EpochCursor, adapt, example_step, pretrain, train
from zole.adapt.sweep import scale_sweep
from zole.adapt.training_log import TrainingLog, read_training_log
from zole.adapt.validate import pair_psnr, validate
from zole.adapt.zoom import zoom_target

__all__ = [
    "AdaptError",
    "AdaptState",
    "EpochCursor",
    "ExperimentData",
    "NonFiniteLossError",
    "TrainingLog",
    "adapt",
    "example_step",
    "generate_experiment_data",
    "pair_psnr",
    "pretrain",
    "read_training_log",
    "run_experiment",
    "scale_sweep",
    "train",
    "validate",
    "zoom_target",
]
