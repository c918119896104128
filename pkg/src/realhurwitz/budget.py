"""Node budget shared by the exhaustive searches.

Counts are exact or absent: a search that would exceed its budget raises
BudgetExceededError instead of returning a truncated result.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import BudgetExceededError

DEFAULT_NODE_BUDGET = 10**9


@dataclass
class Budget:
    limit: int = DEFAULT_NODE_BUDGET
    used: int = field(default=0, compare=False)

    def tick(self, n: int = 1):
        self.used += n
        if self.used > self.limit:
            raise BudgetExceededError(
                f"search budget exceeded ({self.used} > {self.limit} node expansions)"
            )


def ensure_budget(budget: Budget | None) -> Budget:
    return budget if budget is not None else Budget()
