from zole.core.errors import ZoleError


class MetricError(ZoleError):
    """A metric was asked for over an empty mask or mismatched inputs."""
    pass
