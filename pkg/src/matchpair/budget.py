"""Per-graph work budgets for the exponential searches.

Searches call :func:`check` periodically; inside a :func:`limit` block that
raises :class:`BudgetExceeded` once the deadline passes.
"""

from __future__ import annotations

import contextlib
import contextvars
import time
from typing import Iterator, Optional

_deadline: contextvars.ContextVar[Optional[float]] = contextvars.ContextVar("deadline", default=None)


class BudgetExceeded(RuntimeError):
    pass


def check() -> None:
    deadline = _deadline.get()
    if deadline is not None and time.monotonic() > deadline:
        raise BudgetExceeded("time limit exceeded")


@contextlib.contextmanager
def limit(seconds: Optional[float]) -> Iterator[None]:
    """Bound the searches run inside the block to ``seconds`` of wall time."""
    if seconds is None:
        yield
        return
    token = _deadline.set(time.monotonic() + seconds)
    try:
        yield
    finally:
        _deadline.reset(token)
