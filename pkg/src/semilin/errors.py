"""Exception hierarchy shared by all modules."""


class SemilinError(Exception):
    """Base class for all library errors."""


class InvalidPair(SemilinError):
    """Edge evaluation requested for a vertex paired with itself."""


class SymmetryError(SemilinError):
    """Edge formula is not invariant under swapping the two vertices."""


class NotPerturbed(SemilinError):
    """Operation requires x(i) != y(i) for every vertex and coordinate."""


class NotPartialOrder(SemilinError):
    """Relation handed to a chain decomposition is cyclic or reflexive."""


class DomainMismatch(SemilinError):
    """Inputs that must share a vertex set (or vertex classes) do not."""


class PreconditionViolated(SemilinError):
    """A stated precondition (clique bound, balance, ...) fails; carries a witness."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class ProofInvariantViolated(SemilinError):
    """A structural claim transcribed from the argument failed at runtime."""

    def __init__(self, message: str, counterexample=None):
        super().__init__(message)
        self.counterexample = counterexample


class InvalidCotree(SemilinError):
    """Malformed union/join tree (duplicate leaves, empty internal node, ...)."""


class SamplingFailed(SemilinError):
    """Randomized sparsifier exhausted its resample budget."""

    def __init__(self, message: str, stats=None, trace=None):
        super().__init__(message)
        self.stats = stats or {}
        self.trace = trace or []


class TooLarge(SemilinError):
    """Generator output would exceed the configured size cap."""


class DegenerateInput(SemilinError):
    """Geometry too degenerate to realize (coincident points, boundary contact)."""


class InvalidParams(SemilinError):
    """Generator parameters outside the documented range."""


class OverBudget(SemilinError):
    """Oracle refused an input above its exactness budget."""
