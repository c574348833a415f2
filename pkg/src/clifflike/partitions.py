"""Integer partitions: enumeration, conjugation, counting."""

from __future__ import annotations

from functools import lru_cache

Partition = tuple  # weakly decreasing tuple of positive ints


def partitions_of(n: int) -> list[Partition]:
    """All partitions of ``n`` in lexicographically decreasing order.

    >>> partitions_of(3)
    [(3,), (2, 1), (1, 1, 1)]
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    return list(_gen(n, n))


def _gen(n: int, cap: int):
    if n == 0:
        yield ()
        return
    for first in range(min(n, cap), 0, -1):
        for rest in _gen(n - first, first):
            yield (first,) + rest


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > i) for i in range(lam[0]))


def weight(lam: Partition) -> int:
    return sum(lam)


@lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    """p(n) via Euler's pentagonal recurrence (independent of enumeration)."""
    if n < 0:
        return 0
    if n == 0:
        return 1
    total = 0
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        if g1 > n:
            break
        sign = 1 if k % 2 else -1
        total += sign * partition_count(n - g1)
        g2 = k * (3 * k + 1) // 2
        if g2 <= n:
            total += sign * partition_count(n - g2)
        k += 1
    return total
