"""Exception hierarchy shared by all modules."""


class GaborCertError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(GaborCertError, ValueError):
    pass


class SingularGenerators(GaborCertError, ValueError):
    pass


class LiteralError(GaborCertError, ValueError):
    """An entry literal could not be parsed."""


class LatticeSpecError(GaborCertError, ValueError):
    """Malformed lattice-spec text."""


class NonPositiveScale(GaborCertError, ValueError):
    pass


class RadiusTooLarge(GaborCertError, ValueError):
    pass


class BadRange(GaborCertError, ValueError):
    pass


class BadFormIndex(GaborCertError, ValueError):
    pass


class WrongDimension(GaborCertError, ValueError):
    pass


class PrecisionLoss(GaborCertError, ArithmeticError):
    pass


class NotInSiegelHalfSpace(GaborCertError, ValueError):
    pass


class DegreeOverflow(GaborCertError, ValueError):
    pass


class TruncationCapExceeded(GaborCertError, ValueError):
    pass


class UnknownScenario(GaborCertError, KeyError):
    pass
