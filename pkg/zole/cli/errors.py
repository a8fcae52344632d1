from zole.core.errors import ZoleError


class ConfigError(ZoleError):
    """Config file unreadable, not JSON, or rejected by its schema."""
    pass
