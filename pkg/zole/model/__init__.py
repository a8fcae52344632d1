from zole.model.base import ModelParams, ParamGrad, ParamLayout, ParamSpec, StereoModel, mean_grad
from zole.model.checkpoint import Checkpoint, load_checkpoint, save_checkpoint
from zole.model.errors import CheckpointError, ModelError, ModelNumericsError
from zole.model.optim import sgd_step
from zole.model.toy import ToyStereoModel

__all__ = [
    "Checkpoint",
    "CheckpointError",
    "ModelError",
    "ModelNumericsError",
    "ModelParams",
    "ParamGrad",
    "ParamLayout",
    "ParamSpec",
    "StereoModel",
    "ToyStereoModel",
    "load_checkpoint",
    "mean_grad",
    "save_checkpoint",
    "sgd_step",
]
