"""Resource budgets shared by every module.

Budgets live in a context variable so a caller can tighten or relax them
for one computation without touching global state::

    with budget_scope(max_children=1 << 10):
        powerset(x)
"""
from __future__ import annotations

import contextlib
import contextvars
import dataclasses


@dataclasses.dataclass(frozen=True)
class Budget:
    max_rank: int = 8            # enumeration of V_n and Ackermann encoding
    max_children: int = 1 << 16  # widest set any generator may build
    max_code_bits: int = 1 << 20  # Ackermann code magnitude (bits)
    max_product: int = 1 << 16   # cardinality of dependent products
    max_finset: int = 3          # largest numeral in FinSet skeletons
    max_search: int = 1 << 20    # brute-force search spaces (Nat enumeration etc.)


_current: contextvars.ContextVar[Budget] = contextvars.ContextVar("hfcat_budget", default=Budget())


def budget() -> Budget:
    return _current.get()


@contextlib.contextmanager
def budget_scope(**overrides):
    token = _current.set(dataclasses.replace(_current.get(), **overrides))
    try:
        yield _current.get()
    finally:
        _current.reset(token)
