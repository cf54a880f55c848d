"""Exception types for geometric preconditions and parameter errors."""


class GeometryError(Exception):
    """Base class for all toolkit errors."""


class ZeroVector(GeometryError):
    pass


class NotOnDeSitter(GeometryError):
    pass


class NotInH2(GeometryError):
    pass


class NotSpacelike(GeometryError):
    """Tangent fails to be spacelike; carries the offending parameter value."""

    def __init__(self, message, t=None):
        super().__init__(message)
        self.t = t


class NotStrongSpacelike(GeometryError):
    pass


class InflectionPoint(GeometryError):
    pass


class NonIntegerWinding(GeometryError):
    pass


class NegativeRadius(GeometryError):
    pass


class RadiusTooSmall(GeometryError):
    pass


class BadParameter(GeometryError):
    pass


class WrongIndex(GeometryError):
    pass


class DegenerateDomain(GeometryError):
    pass
