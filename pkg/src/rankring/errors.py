"""Exception hierarchy shared by every module of the package."""


class RankRingError(Exception):
    """Base class for all errors raised by rankring."""


class MixedRings(RankRingError):
    pass


class NotAUnit(RankRingError, ZeroDivisionError):
    pass


class NotMonic(RankRingError, ValueError):
    pass


class ReducibleResidue(RankRingError, ValueError):
    """The residue of the defining polynomial factors over F_p.

    ``witness`` holds a nontrivial factor (ascending coefficients) when one
    was found.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class DimensionMismatch(RankRingError, ValueError):
    pass


class NotFree(RankRingError, ValueError):
    pass


class RankTooSmall(RankRingError, ValueError):
    pass


class OutOfRange(RankRingError, ValueError):
    pass


class ShapeNotDominated(RankRingError, ValueError):
    pass


class TooLarge(RankRingError):
    pass


class ZeroCode(RankRingError, ValueError):
    pass


class ZeroProjection(RankRingError, ValueError):
    pass


class DependentRows(RankRingError, ValueError):
    pass


class InvalidParams(RankRingError, ValueError):
    pass


class TrialsExhausted(RankRingError):
    """Decoder gave up; ``report`` carries the tallies gathered so far."""

    def __init__(self, message, report=None, component=None):
        super().__init__(message)
        self.report = report
        self.component = component


class FormatError(RankRingError, ValueError):
    """Malformed input file; ``field`` names the offending entry."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field
