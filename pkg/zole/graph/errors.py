from zole.core.errors import ZoleError


class GraphError(ZoleError):
    """Invalid exemplars, edge lists or graph dumps."""
    pass
