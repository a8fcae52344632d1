from zole.core.errors import DimensionError, NumericalError, PatchIndexError, ZoleError
from zole.core.patches import PatchGrid, assemble, extract_all, extract_patch, scatter_patch_add
from zole.core.rng import Rng, shuffle
from zole.core.types import DisparityMap, Image, Origin, StereoPair

__all__ = [
    "DimensionError",
    "DisparityMap",
    "Image",
    "NumericalError",
    "Origin",
    "PatchGrid",
    "PatchIndexError",
    "Rng",
    "StereoPair",
    "ZoleError",
    "assemble",
    "extract_all",
    "extract_patch",
    "scatter_patch_add",
    "shuffle",
]
