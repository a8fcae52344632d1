"""Root exception hierarchy shared by every zole area."""


class ZoleError(Exception):
    """Base class for all zole errors.

    ``exit_code`` is what the CLI returns when the error escapes a subcommand:
    1 for user errors (bad input, bad config), 2 for internal/numerical failures.
    """

    exit_code = 1


class NumericalError(ZoleError):
    """Non-finite values appeared where the math guarantees finite ones."""

    exit_code = 2


class DimensionError(ZoleError):
    """Array or map dimensions disagree with what an operation requires."""
    pass


class PatchIndexError(ZoleError):
    """Patch index outside ``[0, M)``."""
    pass
