"""Exception hierarchy shared by the pipeline stages and the CLI."""


class MatrasegError(Exception):
    """Base class. ``stage`` names the pipeline step that failed."""

    stage = "pipeline"
    code = 1

    def __init__(self, message, stage=None):
        super().__init__(message)
        if stage is not None:
            self.stage = stage


class PGMError(MatrasegError):
    stage = "load"
    code = 4


class PGMHeaderError(PGMError):
    """Bad magic number, missing or non-numeric header field."""


class PGMMaxvalError(PGMError):
    """maxval outside 1..255."""


class PGMTruncatedError(PGMError):
    """Fewer pixel values than width * height."""


class EmptyImageError(MatrasegError):
    stage = "zones"
    code = 5


class NoMatraError(MatrasegError):
    stage = "headline"
    code = 6


class LayoutError(MatrasegError, ValueError):
    stage = "synth"
    code = 7


class MetricUndefinedError(MatrasegError, ValueError):
    stage = "eval"
    code = 8
