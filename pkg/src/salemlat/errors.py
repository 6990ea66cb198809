"""Domain errors, named after the invariant they report as violated."""

from __future__ import annotations


class DomainError(Exception):
    """Base class for all domain errors raised by this package."""


# -- lattice construction and arithmetic ------------------------------------

class NotSymmetric(DomainError):
    pass


class OddDiagonal(DomainError):
    pass


class Degenerate(DomainError):
    pass


class DimensionMismatch(DomainError):
    pass


class NotPrime(DomainError):
    pass


# -- root enumeration and Weyl walks -----------------------------------------

class NotNegativeDefinite(DomainError):
    pass


class NotARoot(DomainError):
    pass


class BudgetExceeded(DomainError):
    pass


class OnWall(DomainError):
    pass


# -- fibration analysis -------------------------------------------------------

class NotPrimitiveIsotropic(DomainError):
    pass


class InsufficientFibrations(DomainError):
    pass


class OddDimension(DomainError):
    pass


class DimensionTooSmall(DomainError):
    pass


# -- isometries ----------------------------------------------------------------

class NotFormPreserving(DomainError):
    pass


class NotUnimodular(DomainError):
    pass


class ReferenceNotPositive(DomainError):
    pass


class DoesNotFixE(DomainError):
    pass


class FiniteOrder(DomainError):
    pass


# -- polynomials ----------------------------------------------------------------

class NotMonic(DomainError):
    pass


class NotSquarefree(DomainError):
    pass


class EndpointIsRoot(DomainError):
    pass


class NotSpectrallySalem(DomainError):
    """The cyclotomic-free part of a characteristic polynomial is not Salem.

    Raised when the input cannot be the characteristic polynomial of a
    cone-preserving isometry of a hyperbolic lattice.
    """


# -- parabolic generators and search --------------------------------------------

class NotIsotropic(DomainError):
    pass


class NotOrthogonal(DomainError):
    pass


class ProportionalToE(DomainError):
    pass


class NoInfiniteClasses(DomainError):
    pass


class BudgetExhausted(DomainError):
    """Search budget ran out before the target Salem degree was reached.

    Carries the best report found so far in ``self.report``.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


# -- fibration transfer -----------------------------------------------------------

class NotIsometricEmbedding(DomainError):
    pass


class InfiniteIndex(DomainError):
    pass


class WalkBudgetExceeded(DomainError):
    pass


# -- CLI ----------------------------------------------------------------------------

class ParseError(DomainError):
    pass


class UnknownCommand(DomainError):
    pass
