"""Ordered fan-out of per-prime work items over a process pool."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def run_ordered(func: Callable[[T], R], items: Iterable[T], jobs: int = 1) -> list[R]:
    """Apply ``func`` to every item; results come back in input order
    regardless of which worker finishes first."""
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [func(x) for x in items]
    chunk = max(1, len(items) // (4 * jobs))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, items, chunksize=chunk))
