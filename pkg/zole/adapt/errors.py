from zole.core.errors import NumericalError, ZoleError


class AdaptError(ZoleError):
    """Training inputs are unusable (empty sets, wrong origins, bad sizes)."""
    pass


class NonFiniteLossError(NumericalError):
    def __init__(self, iteration: int, detail: str = "non-finite loss"):
        self.iteration = iteration
        super().__init__(f"{detail} at iteration {iteration}")
