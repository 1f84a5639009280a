"""Exception types raised by sepscope."""


class SepscopeError(Exception):
    """Base class for all sepscope errors."""


class ValidationError(SepscopeError, ValueError):
    """Input violates a structural invariant (shape, Hermiticity, trace, range)."""


class DomainError(SepscopeError, ValueError):
    """A scalar function was evaluated outside its domain on a retained eigenvalue."""


class InconsistencyError(SepscopeError, ValueError):
    """Support inclusion Ran(rho_AB) ⊆ Ran(1 ⊗ rho_B) fails beyond tolerance."""


class RankError(SepscopeError, ArithmeticError):
    """An operator that must be invertible on a subspace is singular there."""
