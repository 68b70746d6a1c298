__version__ = "0.1.0"


class HadacodecError(Exception):
    """Base class for every error raised by the hadacodec packages."""

    pass
