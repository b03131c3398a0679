"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input is outside the domain an operation is defined on."""


class WalkCapExceeded(DomainError):
    """A random-walk simulation hit its per-trial step cap."""

    def __init__(self, message, completed_trials, partial_mean):
        super().__init__(message)
        self.completed_trials = completed_trials
        self.partial_mean = partial_mean
