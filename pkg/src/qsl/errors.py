"""Exception hierarchy shared by every qsl module."""


class QSLError(Exception):
    """Base class for all library errors."""


class ShapeError(QSLError, ValueError):
    """Matrix or index-set dimensions do not fit together."""


class CoefficientOverflow(QSLError, OverflowError):
    """A polynomial coefficient left the signed 64-bit range."""


class InvalidRankArray(QSLError, ValueError):
    """A rank array has a negative multiplicity.

    ``where`` is the first offending ``(i, j)`` and ``value`` the multiplicity
    computed there.
    """

    def __init__(self, where, value, message=None):
        self.where = where
        self.value = value
        i, j = where
        super().__init__(message or f"invalid rank array: m[{i},{j}] = {value} < 0")


class NotInImage(QSLError, ValueError):
    """A big-cell point is not of the form zeta(rep)."""

    def __init__(self, where, message=None):
        self.where = where
        super().__init__(message or f"block {where} breaks the product chain")


class NotInBigCell(QSLError, ValueError):
    """A flag meets one of the complementary coordinate subspaces."""

    def __init__(self, level, message=None):
        self.level = level
        super().__init__(message or f"U_{level} meets E'_{level} nontrivially")


class NotInOpenSet(QSLError, ValueError):
    """A degeneracy-shape representation fails the injective/surjective/bijective test."""

    def __init__(self, reason):
        self.reason = reason
        super().__init__(reason)


class CapExceeded(QSLError, RuntimeError):
    """An exhaustive enumeration would exceed its configured size cap."""
