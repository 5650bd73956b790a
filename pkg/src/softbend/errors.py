"""Exception types shared across the package."""


class SoftbendError(Exception):
    """Base class for all package errors."""


class DomainError(SoftbendError, ValueError):
    """An argument is outside the range an operation is defined on."""


class DegenerateTriangleError(SoftbendError):
    """The three points do not form a usable triangle."""


class NoModuleDetectedError(SoftbendError):
    """The frame contains no usable module silhouette."""


class OutOfViewError(SoftbendError):
    """The module silhouette does not fit inside the camera frame."""


class ConfigError(SoftbendError, ValueError):
    """A scenario configuration file is invalid; message carries line info."""
