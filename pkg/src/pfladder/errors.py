class DomainError(ValueError):
    """An input lies outside the domain of an operation."""


class BudgetExhausted(RuntimeError):
    """A computation hit its resource cap before finishing.

    Raised instead of returning a possibly wrong answer.
    """


class AlreadyLinear(ValueError):
    """Every size in the ladder spec is 1; there is no biliaison step to take."""
