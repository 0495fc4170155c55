"""Node-count budgets for backtracking searches.

Budgets make "gave up" a distinct, reportable outcome instead of a silent
truncation: a search that exhausts its budget raises BudgetExceeded, which
callers surface separately from a negative result.
"""

from __future__ import annotations


class BudgetExceeded(Exception):
    """Raised when a search exceeds its node budget."""

    def __init__(self, limit: int):
        super().__init__(f"search budget of {limit} nodes exceeded")
        self.limit = limit


class Budget:
    """Counts search nodes against an optional limit.

    A limit of None means unlimited.
    """

    __slots__ = ("limit", "used")

    def __init__(self, limit: int | None = None):
        if limit is not None and limit <= 0:
            raise ValueError("budget limit must be positive")
        self.limit = limit
        self.used = 0

    def tick(self, cost: int = 1) -> None:
        self.used += cost
        if self.limit is not None and self.used > self.limit:
            raise BudgetExceeded(self.limit)
