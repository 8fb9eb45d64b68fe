"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or out-of-range input (CLI exit code 2)."""


class SolverError(RuntimeError):
    """The polygon system did not converge (CLI exit code 3)."""

    def __init__(self, message, best_residual=float("nan")):
        super().__init__(message)
        self.best_residual = best_residual


class ConsistencyError(ArithmeticError):
    """An internal numerical invariant was violated beyond round-off."""
