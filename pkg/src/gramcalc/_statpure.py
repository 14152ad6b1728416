"""Pure-Python enumeration kernel for permutation statistic tables.

The compiled extension ``gramcalc._statcore`` implements the same interface;
``gramcalc.permstat`` picks whichever is available at import time.  Kind codes:
0 joint (exterior peaks, proper double descents), 1 joint (peaks, double
descents), 2 quadruple (peaks - 1, double descents, valleys, double rises).

Enumeration walks permutations in lexicographic order with constant extra
memory.  ``first`` restricts the walk to permutations with a fixed first
value, which is the unit of work for the optional multiprocess split.
"""

from __future__ import annotations

from itertools import permutations

KIND_EXTERIOR_PDD = 0
KIND_PEAK_DD = 1
KIND_CARLITZ = 2

IS_COMPILED = False


def _perms(n: int, first: int):
    if first:
        rest = [v for v in range(1, n + 1) if v != first]
        return ((first, *p) for p in permutations(rest))
    return permutations(range(1, n + 1))


def count_table(n: int, kind: int, first: int = 0) -> dict[tuple[int, ...], int]:
    """Tally the statistic key of every permutation of {1..n} (or a slice)."""
    if n < 1:
        raise ValueError("kernel requires n >= 1")
    counts: dict[tuple[int, ...], int] = {}
    if kind == KIND_EXTERIOR_PDD:
        for p in _perms(n, first):
            ep = 1 if n >= 2 and p[0] > p[1] else 0
            for i in range(1, n - 1):
                if p[i - 1] < p[i] > p[i + 1]:
                    ep += 1
            pdd = 0
            for i in range(2, n):
                if p[i - 2] > p[i - 1] > p[i]:
                    pdd += 1
            key = (ep, pdd)
            counts[key] = counts.get(key, 0) + 1
    elif kind == KIND_PEAK_DD:
        for p in _perms(n, first):
            padded = (0, *p, 0)
            pk = dd = 0
            for i in range(1, n + 1):
                if padded[i - 1] < padded[i] > padded[i + 1]:
                    pk += 1
                elif padded[i - 1] > padded[i] > padded[i + 1]:
                    dd += 1
            key = (pk, dd)
            counts[key] = counts.get(key, 0) + 1
    elif kind == KIND_CARLITZ:
        for p in _perms(n, first):
            padded = (0, *p, 0)
            pk = dd = vl = dr = 0
            for i in range(1, n + 1):
                left_up = padded[i - 1] < padded[i]
                right_down = padded[i] > padded[i + 1]
                if left_up and right_down:
                    pk += 1
                elif left_up:
                    dr += 1
                elif right_down:
                    dd += 1
                else:
                    vl += 1
            key = (pk - 1, dd, vl, dr)
            counts[key] = counts.get(key, 0) + 1
    else:
        raise ValueError(f"unknown statistic kind code {kind}")
    return counts
