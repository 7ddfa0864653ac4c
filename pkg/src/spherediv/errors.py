"""Shared exception types."""


class BudgetExceeded(Exception):
    """A configured search or node budget ran out before an answer was found.

    Raised instead of ever returning a possibly-wrong answer; callers can
    retry with a larger budget.
    """
