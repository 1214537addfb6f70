"""Exception types raised by the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class InvalidCopulaError(ValueError):
    """A copula description violates its structural invariants."""


class InvalidDiagonalError(ValueError):
    """A diagonal function is not a valid symmetric diagonal."""


class NotDoublySymmetricError(ValueError):
    """The input copula is not doubly symmetric."""


class UnsupportedCopulaError(TypeError):
    """The requested exact computation is not available for this copula type."""


class QuadratureError(RuntimeError):
    """Adaptive quadrature did not reach the requested tolerance."""


class ReductionError(RuntimeError):
    """The mass-shifting driver hit a state its invariants rule out."""
