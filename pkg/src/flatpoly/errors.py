"""Shared exception types."""


class BudgetError(RuntimeError):
    """A computation exceeded its documented desk-scale budget."""
