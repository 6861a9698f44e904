"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Input does not satisfy an operation's precondition."""


class DegenerateStateError(ArithmeticError):
    """A density matrix is too close to the boundary for the Bures solver.

    Carries the offending minimum eigenvalue so callers can report it.
    """

    def __init__(self, message: str, min_eigenvalue: float | None = None):
        super().__init__(message)
        self.min_eigenvalue = min_eigenvalue
