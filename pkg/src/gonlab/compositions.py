"""Colexicographic enumeration of effective divisors of a fixed degree.

An effective divisor of degree d on n vertices is a composition of d into n
non-negative parts.  The enumeration order is ascending colex (vectors
compare at the last differing coordinate), so chips pile onto low-index
vertices first: (d,0,...,0) is rank 0.  Rank-window slicing lets degree
levels be partitioned statically across worker processes with a
deterministic global order.
"""

from __future__ import annotations

from math import comb


def count_compositions(total: int, parts: int) -> int:
    """Number of length-`parts` non-negative integer vectors summing to `total`."""
    if parts < 1 or total < 0:
        return 0
    return comb(total + parts - 1, parts - 1)


def compositions_colex(total: int, parts: int):
    """Yield all compositions of `total` into `parts` parts in ascending colex."""
    yield from compositions_colex_slice(total, parts, 0, count_compositions(total, parts))


def compositions_colex_slice(total: int, parts: int, start: int, stop: int):
    """Yield compositions with colex rank in [start, stop), in order.

    Whole subtrees outside the window are skipped using binomial counts, so
    seeking costs O(parts * total) rather than enumerating from rank 0.
    """
    if parts < 1 or total < 0 or start >= stop:
        return

    def rec(remaining: int, k: int, base: int):
        # base = rank of the first vector of this subtree
        if k == 1:
            if start <= base < stop:
                yield (remaining,)
            return
        for last in range(remaining + 1):
            block = count_compositions(remaining - last, k - 1)
            if base + block <= start:
                base += block
                continue
            if base >= stop:
                return
            for prefix in rec(remaining - last, k - 1, base):
                yield prefix + (last,)
            base += block

    yield from rec(total, parts, 0)
