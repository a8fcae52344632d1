from zole.core.errors import ZoleError


class ImgIOError(ZoleError):
    """Base class for image/disparity file errors."""
    pass


class ImageFormatError(ImgIOError):
    """Malformed header, unsupported variant, truncated payload or invalid values."""
    pass
