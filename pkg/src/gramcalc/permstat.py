"""Brute-force permutation statistics: profiles, joint tables, marginals.

Statistics of a permutation ``p = p_1 .. p_n`` of ``{1..n}``:

* exterior peak: index 1 when ``p_1 > p_2``, or ``1 < i < n`` with
  ``p_{i-1} < p_i > p_{i+1}``,
* proper double descent: ``3 <= i <= n`` with ``p_{i-2} > p_{i-1} > p_i``,
* peak / valley / double descent / double rise: the four exhaustive classes
  of ``1 <= i <= n`` after padding with ``p_0 = p_{n+1} = 0`` (peak means
  up-down, valley down-up, double descent down-down, double rise up-up).

``stat_table`` enumerates the whole symmetric group and tallies one of three
key shapes:

* ``"exterior_pdd"``: ``(exterior peaks, proper double descents)``,
* ``"peak_dd"``: ``(peaks, double descents)``,
* ``"carlitz_quadruple"``: ``(peaks - 1, double descents, valleys, double rises)``.

The enumeration loop lives in a compiled extension when one was built
(``gramcalc._statcore``), with a pure-Python fallback; set ``GRAMCALC_PURE=1``
to force the fallback.  Both kernels accept a fixed first value so the walk
can be partitioned across processes (``jobs``).
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .laurent import LaurentPolynomial

if os.environ.get("GRAMCALC_PURE"):
    from . import _statpure as _kernel
else:
    try:
        from . import _statcore as _kernel  # type: ignore[attr-defined]
    except ImportError:
        from . import _statpure as _kernel

KERNEL_IS_COMPILED: bool = bool(_kernel.IS_COMPILED)

KIND_EXTERIOR_PDD = "exterior_pdd"
KIND_PEAK_DD = "peak_dd"
KIND_CARLITZ = "carlitz_quadruple"
TABLE_KINDS = (KIND_EXTERIOR_PDD, KIND_PEAK_DD, KIND_CARLITZ)

_KIND_CODES = {KIND_EXTERIOR_PDD: 0, KIND_PEAK_DD: 1, KIND_CARLITZ: 2}

#: Default bound on exhaustive enumeration (10! is 3.6M permutations).
DEFAULT_ENUM_CAP = 10

TRIANGLES = ("T", "U", "R", "W")


def enum_cap() -> int:
    """The enumeration bound: GRAMCALC_ENUM_CAP if set, else the default."""
    value = os.environ.get("GRAMCALC_ENUM_CAP")
    return int(value) if value else DEFAULT_ENUM_CAP


@dataclass(frozen=True)
class StatProfile:
    exterior_peaks: int
    proper_double_descents: int
    peaks: int
    double_descents: int
    valleys: int
    double_rises: int


@dataclass(frozen=True)
class StatTable:
    """Counts of a statistic key over all of S_n (they sum to n!)."""

    n: int
    kind: str
    counts: dict[tuple[int, ...], int]


def is_permutation(values: Sequence[int]) -> bool:
    return sorted(values) == list(range(1, len(values) + 1))


def stat_profile(values: Sequence[int]) -> StatProfile:
    """All six statistics of one permutation of {1..n}, n >= 1."""
    n = len(values)
    if n < 1:
        raise ValueError("stat_profile requires a nonempty permutation")
    if not is_permutation(values):
        raise ValueError(f"{values!r} is not a permutation of 1..{n}")
    ep = 1 if n >= 2 and values[0] > values[1] else 0
    for i in range(1, n - 1):
        if values[i - 1] < values[i] > values[i + 1]:
            ep += 1
    pdd = sum(
        1 for i in range(2, n) if values[i - 2] > values[i - 1] > values[i]
    )
    padded = (0, *values, 0)
    pk = dd = vl = dr = 0
    for i in range(1, n + 1):
        if padded[i - 1] < padded[i]:
            if padded[i] > padded[i + 1]:
                pk += 1
            else:
                dr += 1
        elif padded[i] > padded[i + 1]:
            dd += 1
        else:
            vl += 1
    return StatProfile(
        exterior_peaks=ep,
        proper_double_descents=pdd,
        peaks=pk,
        double_descents=dd,
        valleys=vl,
        double_rises=dr,
    )


def _count_slice(args: tuple[int, int, int]) -> dict[tuple[int, ...], int]:
    n, code, first = args
    return _kernel.count_table(n, code, first)


@lru_cache(maxsize=None)
def _counts(n: int, kind: str) -> dict[tuple[int, ...], int]:
    return _kernel.count_table(n, _KIND_CODES[kind])


def stat_table(
    n: int,
    kind: str,
    *,
    cap: int | None = None,
    jobs: int = 1,
) -> StatTable:
    """Exhaustively tally the statistic key of every permutation of {1..n}.

    ``n = 0`` is only meaningful for the exterior-peak table, where the empty
    permutation contributes the single key (0, 0); the peak-based tables start
    at n = 1.
    """
    if kind not in _KIND_CODES:
        raise ValueError(f"unknown table kind {kind!r} (choose from {TABLE_KINDS})")
    limit = enum_cap() if cap is None else cap
    if n > limit:
        raise ValueError(
            f"n = {n} exceeds the enumeration cap {limit} "
            "(raise it with --cap or GRAMCALC_ENUM_CAP)"
        )
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        if kind != KIND_EXTERIOR_PDD:
            raise ValueError(f"{kind} tables start at n = 1")
        return StatTable(n=0, kind=kind, counts={(0, 0): 1})
    if jobs > 1 and n >= 2:
        code = _KIND_CODES[kind]
        merged: dict[tuple[int, ...], int] = {}
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(
                _count_slice, [(n, code, first) for first in range(1, n + 1)]
            ):
                for key, count in part.items():
                    merged[key] = merged.get(key, 0) + count
        return StatTable(n=n, kind=kind, counts=merged)
    return StatTable(n=n, kind=kind, counts=dict(_counts(n, kind)))


def table_to_poly(table: StatTable) -> LaurentPolynomial:
    """Reassemble the four-variable generating polynomial from a table.

    The weights per key are, by kind:

    * ``exterior_pdd`` key (i, j):  x^i y^j z^(i+1) w^(n-2i-j),
    * ``peak_dd`` key (i, j):       x^i y^j z^i w^(n+1-2i-j),
    * ``carlitz_quadruple`` (a, b, c, d):  x^a y^b z^c w^d.
    """
    n = table.n
    terms = []
    if table.kind == KIND_EXTERIOR_PDD:
        for (i, j), count in table.counts.items():
            exps = {"x": i, "y": j, "z": i + 1, "w": n - 2 * i - j}
            terms.append((count, exps))
    elif table.kind == KIND_PEAK_DD:
        for (i, j), count in table.counts.items():
            exps = {"x": i, "y": j, "z": i, "w": n + 1 - 2 * i - j}
            terms.append((count, exps))
    else:
        for (a, b, c, d), count in table.counts.items():
            exps = {"x": a, "y": b, "z": c, "w": d}
            terms.append((count, exps))
    result = LaurentPolynomial.zero()
    for count, exps in terms:
        result = result + LaurentPolynomial.term(count, exps)
    return result


_TRIANGLE_SOURCE = {
    "T": (KIND_EXTERIOR_PDD, 0),  # permutations by number of exterior peaks
    "U": (KIND_EXTERIOR_PDD, 1),  # by number of proper double descents
    "R": (KIND_PEAK_DD, 0),       # by number of peaks
    "W": (KIND_PEAK_DD, 1),       # by number of double descents
}


def specialize_triangle(table: StatTable, which: str) -> list[tuple[int, int]]:
    """Marginal counts by one statistic: rows (k, count), k ascending."""
    if which not in _TRIANGLE_SOURCE:
        raise ValueError(f"unknown triangle {which!r} (choose from {TRIANGLES})")
    kind, axis = _TRIANGLE_SOURCE[which]
    if table.kind != kind:
        raise ValueError(
            f"triangle {which} needs a {kind} table, got {table.kind}"
        )
    marginal: dict[int, int] = {}
    for key, count in table.counts.items():
        k = key[axis]
        marginal[k] = marginal.get(k, 0) + count
    return sorted(marginal.items())


def triangle_poly(n: int, which: str, *, cap: int | None = None) -> LaurentPolynomial:
    """The marginal as a univariate polynomial (in x for T and R, y for U and W)."""
    kind, _ = _TRIANGLE_SOURCE[which]
    rows = specialize_triangle(stat_table(n, kind, cap=cap), which)
    var = "x" if which in ("T", "R") else "y"
    result = LaurentPolynomial.zero()
    for k, count in rows:
        result = result + LaurentPolynomial.term(count, {var: k})
    return result


def triangle_csv(n: int, rows: Iterable[tuple[int, int]]) -> str:
    """CSV export, one ``n,k,count`` row per marginal entry."""
    return "\n".join(f"{n},{k},{count}" for k, count in rows)


def table_json_dict(table: StatTable) -> dict[str, int]:
    """JSON export: keys are the comma-joined statistic tuples."""
    return {
        ",".join(map(str, key)): count
        for key, count in sorted(table.counts.items())
    }


def table_csv(table: StatTable) -> str:
    """CSV export, one ``key...,count`` row per entry, keys sorted."""
    return "\n".join(
        ",".join(map(str, (*key, count))) for key, count in sorted(table.counts.items())
    )
