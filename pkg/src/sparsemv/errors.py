"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """Raised when an argument violates a documented precondition."""


class UnsupportedPrimeError(InvalidInputError):
    """Raised when a prime lacks the required congruence property."""


class BudgetExceededError(RuntimeError):
    """Raised when an enumeration would exceed the configured budget."""

    def __init__(self, message: str, requested: int, budget: int):
        super().__init__(message)
        self.requested = requested
        self.budget = budget
