"""Node budgets for the exponential-time searches.

Every backtracking procedure in this package counts decision nodes against
a budget and raises :class:`BudgetExceeded` when it runs out.  "Unknown" is
therefore always an explicit outcome, never a silent "no".
"""

DEFAULT_SOLVER_NODES = 50_000_000
DEFAULT_PACKING_NODES = 10_000_000
DEFAULT_RECOGNITION_NODES = 2_000_000


class BudgetExceeded(RuntimeError):
    def __init__(self, what: str, limit: int):
        super().__init__(f"{what}: node budget of {limit} exhausted")
        self.what = what
        self.limit = limit


class Budget:
    """A mutable decision-node counter shared across one logical search."""

    __slots__ = ("limit", "used", "what")

    def __init__(self, limit: int = DEFAULT_SOLVER_NODES, what: str = "search"):
        if limit < 1:
            raise ValueError("budget limit must be positive")
        self.limit = limit
        self.used = 0
        self.what = what

    def spend(self, amount: int = 1) -> None:
        self.used += amount
        if self.used > self.limit:
            raise BudgetExceeded(self.what, self.limit)

    def remaining(self) -> int:
        return max(0, self.limit - self.used)


def ensure_budget(budget, default_limit: int, what: str) -> Budget:
    """Accept a Budget, an int limit, or None (use the default)."""
    if budget is None:
        return Budget(default_limit, what)
    if isinstance(budget, int):
        return Budget(budget, what)
    return budget
