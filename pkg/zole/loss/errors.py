from zole.core.errors import ZoleError


class LossError(ZoleError):
    """Loss inputs are inconsistent (missing targets/graphs, shape mismatch)."""
    pass
