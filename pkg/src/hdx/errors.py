class HDXError(ValueError):
    """Base class for all errors raised by this package."""


class InvalidFacet(HDXError):
    pass


class DegreeOutOfRange(HDXError):
    pass


class DimensionMismatch(HDXError):
    pass


class NotSymmetric(HDXError):
    pass


class NegativeSpectrum(HDXError):
    pass


class ZeroVector(HDXError):
    pass


class ToleranceInconsistency(HDXError):
    """Floating-point kernel count disagrees with the exact rational rank."""


class UnknownGenerator(HDXError):
    pass


class InvalidPermutation(HDXError):
    pass


class InvalidGammaData(HDXError):
    pass


class NotSimplicial(HDXError):
    pass


class EmptyFamily(HDXError):
    pass


class InvalidParameter(HDXError):
    pass
