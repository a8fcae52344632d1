from zole.cli.errors import ConfigError

__all__ = ["ConfigError"]
