"""Exception hierarchy shared by all modules."""


class MixeqError(Exception):
    """Base class for every error raised by mixeq."""


class InputError(MixeqError, ValueError):
    """Invalid argument: bad letter, wrong mode, unmet precondition."""


class BudgetError(MixeqError):
    """A word enumeration would exceed the configured budget."""

    def __init__(self, message, budget=None, requested=None):
        super().__init__(message)
        self.budget = budget
        self.requested = requested


class PartialResultError(BudgetError):
    """Search stopped before stabilizing; ``lower_bound`` holds what was reached."""

    def __init__(self, message, lower_bound):
        super().__init__(message)
        self.lower_bound = lower_bound


class UnsupportedRegimeError(MixeqError):
    """The tuple lies outside the hypotheses of the cyclic-structure analysis."""


class UnknownStructureError(MixeqError):
    """A structure search ran out of certified candidates (not the same as none-found)."""
