"""Exception hierarchy shared by all modules."""


class ArtinCohomError(Exception):
    """Base class for every error raised by the package."""


class RankTooSmall(ArtinCohomError):
    pass


class BadInclusion(ArtinCohomError):
    pass


class BadArg(ArtinCohomError, ValueError):
    pass


class TooLarge(ArtinCohomError):
    pass


class Unsupported(ArtinCohomError):
    pass


class BadSpecialization(ArtinCohomError):
    pass


class InternalInconsistency(ArtinCohomError):
    """An exactness or divisibility invariant failed; signals an arithmetic bug."""


class NotDivisible(ArtinCohomError):
    """Exact division left a nonzero remainder.

    The remainder is kept on the exception for diagnostics.
    """

    def __init__(self, message, remainder=None):
        super().__init__(message)
        self.remainder = remainder


class Failed(ArtinCohomError):
    """A verification run found a mismatch; carries the full report."""

    def __init__(self, report):
        super().__init__(f"verification failed: {report.get('theorem')} n={report.get('n')}")
        self.report = report
