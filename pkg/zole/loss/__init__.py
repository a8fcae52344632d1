from zole.loss.composite import ExampleLossReport, TrainingExample, composite_loss
from zole.loss.errors import LossError
from zole.loss.l1 import l1_loss
from zole.loss.regularizer import build_exemplars, build_patch_graphs, graph_loss, to_gray

__all__ = [
    "ExampleLossReport",
    "LossError",
    "TrainingExample",
    "build_exemplars",
    "build_patch_graphs",
    "composite_loss",
    "graph_loss",
    "l1_loss",
    "to_gray",
]
