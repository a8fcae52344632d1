from zole.core.errors import NumericalError, ZoleError


class ModelError(ZoleError):
    """Base class for model errors (bad inputs, layout mismatches)."""
    pass


class ModelNumericsError(NumericalError):
    """Non-finite activations or gradients; the message names the layer."""

    def __init__(self, layer: str, detail: str = "non-finite values"):
        self.layer = layer
        super().__init__(f"{detail} in layer '{layer}'")


class CheckpointError(ModelError):
    """Checkpoint file is malformed or does not match the model."""
    pass
