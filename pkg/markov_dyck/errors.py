class MarkovDyckError(Exception):
    """Base class for every error raised by the engine."""


class InputError(MarkovDyckError, ValueError):
    """Malformed data, unknown labels, or arguments outside an operation's domain."""


class VerificationError(MarkovDyckError):
    """An internal consistency check failed (a certified value disagreed with its oracle)."""


class BudgetExceeded(MarkovDyckError):
    def __init__(self, budget: int) -> None:
        super().__init__(f"Enumeration exceeded the budget of {budget} admissible prefixes")
        self.budget = budget
