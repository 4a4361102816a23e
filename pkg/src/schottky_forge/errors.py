"""Exception hierarchy shared by every module of the package."""


class SchottkyError(Exception):
    """Base class for all errors raised by schottky_forge."""


class NestedRadicalError(SchottkyError):
    """An operation would leave the single-radical-layer representation."""


class PoleError(SchottkyError, ZeroDivisionError):
    """A Möbius map (or its derivative) was evaluated at its pole."""


class EllipticMapError(SchottkyError):
    """Fixed points were requested for an elliptic map (they are not real)."""


class DegenerateMapError(SchottkyError):
    """The operation is undefined for this map (e.g. identity, c == 0)."""


class GeometryError(SchottkyError):
    """Invalid geometric input."""


class CrossingCirclesError(GeometryError):
    """Two semicircles cross; every configuration in scope is non-crossing."""


class TangentialDegeneracyError(GeometryError):
    """A point lies exactly on a circle where a strict side was required."""


class PairingError(SchottkyError):
    """A generator does not map its source circle onto its target circle."""


class NotClassicalError(SchottkyError):
    """The operation needs a system that passes the classical check."""


class BoundError(SchottkyError):
    """A bound formula cannot be evaluated (e.g. a negative radicand)."""

    def __init__(self, message, value=None):
        super().__init__(message)
        self.value = value


class ConfigError(SchottkyError):
    """Base class for run-configuration errors; ``path`` names the key."""

    def __init__(self, message, path=""):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


class MalformedConfigError(ConfigError):
    pass


class UnknownKeyError(ConfigError):
    pass


class ConfigValueError(ConfigError):
    pass
