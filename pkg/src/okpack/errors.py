"""Errors and cooperative budgets shared by the search routines."""

from __future__ import annotations


class CapExceeded(RuntimeError):
    """An enumeration produced more items than its cap allows."""

    def __init__(self, what: str, cap: int, found: int):
        super().__init__(f"{what}: cap {cap} exceeded ({found} found so far)")
        self.what = what
        self.cap = cap
        self.found = found


class BudgetExceeded(RuntimeError):
    """A search spent more nodes than its budget allows."""

    def __init__(self, what: str, limit: int):
        super().__init__(f"{what}: budget of {limit} nodes exhausted")
        self.what = what
        self.limit = limit


class SearchBudgetExceeded(BudgetExceeded):
    """Budget exhaustion inside a subgraph search (e.g. K_{t,t} at t >= 4)."""


class TooLarge(ValueError):
    """Input exceeds the hard size cap of a brute-force oracle."""


class EdgePlacementShortfall(RuntimeError):
    """Random edge placement could not place every requested edge.

    Carries the partially built graph so callers may still use it.
    """

    def __init__(self, requested: int, placed: int, graph):
        super().__init__(
            f"placed only {placed} of {requested} extra edges within the retry budget"
        )
        self.requested = requested
        self.placed = placed
        self.graph = graph


class Budget:
    """Mutable node counter raising :class:`BudgetExceeded` when spent.

    A single instance may be threaded through nested searches so that the
    caller's limit bounds the total work, not each stage separately.
    """

    __slots__ = ("what", "limit", "spent")

    def __init__(self, limit: int, what: str = "search"):
        if limit < 1:
            raise ValueError("budget must be positive")
        self.what = what
        self.limit = limit
        self.spent = 0

    def spend(self, amount: int = 1) -> None:
        self.spent += amount
        if self.spent > self.limit:
            raise BudgetExceeded(self.what, self.limit)

    def remaining(self) -> int:
        return max(0, self.limit - self.spent)
