"""Exception hierarchy shared by all lorpoly modules."""


class LorpolyError(Exception):
    """Base class for every error raised by this package."""


class DegeneratePair(LorpolyError):
    """u = 0 or t = 0: the frame parameter is infinite."""


class ZeroVector(LorpolyError):
    pass


class NonPositiveStep(LorpolyError):
    pass


class UnknownGenerator(LorpolyError, KeyError):
    pass


class BadSize(LorpolyError, ValueError):
    pass


class ZeroArea(LorpolyError, ValueError):
    pass


class DimensionMismatch(LorpolyError, ValueError):
    pass


class NotClosed(LorpolyError):
    pass


class ZeroTotalArea(LorpolyError):
    pass


class DegenerateNullSum(LorpolyError):
    """The z-sector or w-sector sum is null (det <= tol), so it cannot be boosted to rest."""


class CutoffTooSmall(LorpolyError, ValueError):
    pass


class NegativeM(LorpolyError, ValueError):
    pass


class BudgetExceeded(LorpolyError, MemoryError):
    pass
