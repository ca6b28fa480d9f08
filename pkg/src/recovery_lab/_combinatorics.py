"""Deterministic composition enumeration shared by lottery and weight grids."""

from __future__ import annotations

from math import comb
from typing import Iterator


def composition_count(total: int, parts: int) -> int:
    """Number of ways to write ``total`` as an ordered sum of ``parts`` >= 0 terms."""
    return comb(total + parts - 1, parts - 1)


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Yield all compositions of ``total`` into ``parts`` nonnegative integers.

    Order is lexicographically decreasing, so ``(total, 0, ..., 0)`` comes
    first and ``(0, ..., 0, total)`` last.
    """
    if parts < 1:
        raise ValueError("parts must be >= 1")
    if parts == 1:
        yield (total,)
        return
    for head in range(total, -1, -1):
        for tail in compositions(total - head, parts - 1):
            yield (head,) + tail
