"""Exception types shared across the package."""


class RecolleError(Exception):
    """Base class for all package errors."""


class DimError(RecolleError):
    """Matrix shapes do not match."""


class ContainmentError(RecolleError):
    """A subspace is not contained in the ambient span."""


class NonAdmissible(RecolleError):
    """A quiver relation involves paths of length < 2."""


class InfiniteDimensional(RecolleError):
    """Path basis keeps growing past the configured length cap."""

    def __init__(self, cap):
        super().__init__(f"new basis paths still appear at length cap {cap}")
        self.cap = cap


class EmptyIdempotent(RecolleError):
    """Corner taken at an empty idempotent set."""


class TrivialQuotient(RecolleError):
    """A/AeA is zero."""


class TrivialIdempotent(RecolleError):
    """Idempotent subset is empty or everything."""


class AlgebraMismatch(RecolleError):
    """Operands live over different algebras."""


class ZeroModule(RecolleError):
    """Operation needs a nonzero module."""


class LiftInconsistent(RecolleError):
    """A lifting system has no solution; the input map was not equivariant."""


class ShiftMismatch(RecolleError):
    """Cone of a chain map with nonzero shift."""


class NotStratifying(RecolleError):
    def __init__(self, status):
        super().__init__(f"idempotent ideal is not certified stratifying: {status}")
        self.status = status


class NotPerfect(RecolleError):
    def __init__(self, status):
        super().__init__(f"one-sided resolution did not terminate: {status}")
        self.status = status


class CapTooLarge(RecolleError):
    """Search space exceeds the configured budget."""


class RecursionLimit(RecolleError):
    """Stratification recursion went too deep."""


class RootMismatch(RecolleError):
    """Stratification trees with different root algebras."""


class NonMonomial(RecolleError):
    """Oracle path counting needs monomial relations."""


class ParseError(RecolleError):
    """Malformed input file."""


class InvariantViolation(RecolleError):
    """An internal cross-check failed; this is a bug, not a user error."""
