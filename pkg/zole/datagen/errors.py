from zole.core.errors import ZoleError


class DatagenError(ZoleError):
    pass


class SceneSpecError(DatagenError):
    """The scene cannot be generated (e.g. disparities wider than the image)."""
    pass


class AugmentationError(DatagenError):
    pass


class DatasetError(DatagenError):
    """A dataset directory is missing files or its manifest is invalid."""
    pass
