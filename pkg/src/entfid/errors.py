"""Exception types raised across the package."""


class EntfidError(ValueError):
    """Base class for all validation and numerical errors."""


class DimensionMismatch(EntfidError):
    pass


class NotHermitian(EntfidError):
    pass


class NotPSD(EntfidError):
    pass


class TraceNotOne(EntfidError):
    pass


class NotNormalized(EntfidError):
    pass


class ZeroVector(EntfidError):
    pass


class NoConvergence(EntfidError):
    pass


class POutOfRange(EntfidError):
    pass


class OutOfRange(EntfidError):
    pass


class TooFewPoints(EntfidError):
    pass


class UnknownChannel(EntfidError):
    pass
