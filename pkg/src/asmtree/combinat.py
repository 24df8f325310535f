"""Exact integer combinatorics: factorials, binomial and multinomial
coefficients, Stirling numbers, integer partitions, and counts of
compositions into parts 1 and 2.

Everything returns plain Python ints, so counts that outgrow machine words
(ordered set partitions pass 2**64 before n hits 21) stay exact.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterable, Iterator


def factorial(n: int) -> int:
    """n!; rejects negative n."""
    if n < 0:
        raise ValueError(f"factorial is undefined for n={n}")
    return math.factorial(n)


def binomial(n: int, k: int) -> int:
    """Binomial coefficient C(n, k), zero whenever k < 0 or k > n.

    Several recursions below rely on out-of-range terms vanishing rather
    than raising, so the convention lives here once.
    """
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def multinomial(parts: Iterable[int]) -> int:
    """Multinomial coefficient (sum parts)! / prod(p!)."""
    parts = list(parts)
    result = math.factorial(sum(parts))
    for p in parts:
        result //= math.factorial(p)
    return result


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind: set partitions of an n-set into
    exactly k nonempty blocks. Zero outside the triangle 0 <= k <= n,
    except stirling2(0, 0) == 1.
    """
    if n == 0 and k == 0:
        return 1
    if n < 0 or k < 1 or k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def partitions(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """Yield every partition of n into exactly k positive parts.

    Parts are weakly decreasing within each tuple, and tuples appear in
    reverse-lexicographic order, so output order is reproducible.
    """
    if k < 1 or k > n:
        raise ValueError(f"need 1 <= k <= n, got n={n} k={k}")
    return _partitions_capped(n, k, n)


def _partitions_capped(n: int, k: int, cap: int) -> Iterator[tuple[int, ...]]:
    if k == 1:
        if n <= cap:
            yield (n,)
        return
    # Below ceil(n/k) the remaining k-1 parts could not stay <= first.
    smallest_first = -(-n // k)
    for first in range(min(cap, n - k + 1), smallest_first - 1, -1):
        for rest in _partitions_capped(n - first, k - 1, first):
            yield (first, *rest)


def multiplicity(parts: Iterable[int], i: int) -> int:
    """How many parts equal i."""
    return sum(1 for p in parts if p == i)


def count_compositions_1_2(n: int, k: int) -> int:
    """Compositions of n into exactly k parts, each part 1 or 2.

    Such a composition has n - k twos among its k parts, so the count is
    C(k, n - k) = C(k, 2k - n), vanishing outside ceil(n/2) <= k <= n.
    """
    return binomial(k, 2 * k - n)
