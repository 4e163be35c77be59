"""Exception hierarchy shared by every qchab module."""


class QchabError(Exception):
    """Base class for all library errors."""


# padic
class NonUnit(QchabError, ArithmeticError):
    pass


class RingMismatch(QchabError, TypeError):
    pass


class ZeroResidue(QchabError, ValueError):
    pass


# series
class CapMismatch(QchabError, ValueError):
    pass


class CompositionDivergence(QchabError, ArithmeticError):
    pass


class BasisRankMismatch(QchabError, ValueError):
    pass


class IndeterminateTail(QchabError, ArithmeticError):
    pass


class UncertifiedTail(QchabError, ArithmeticError):
    pass


# formal
class NonIntegrableDifferential(QchabError, ArithmeticError):
    pass


class IntegralityUnverified(QchabError, RuntimeError):
    pass


# biext
class BaseMismatch(QchabError, ValueError):
    pass


class NonPrincipalSymbolicFiber(QchabError, ArithmeticError):
    pass


# chabauty
class NonUnitFiber(NonUnit):
    pass


# bound
class ArityMismatch(QchabError, ValueError):
    pass


# app
class SchemaError(QchabError, ValueError):
    pass


class InvariantViolation(QchabError, ValueError):
    def __init__(self, invariant, detail=""):
        self.invariant = invariant
        self.detail = detail
        msg = invariant if not detail else f"{invariant}: {detail}"
        super().__init__(msg)
