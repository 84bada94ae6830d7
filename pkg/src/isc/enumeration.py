"""Facet counts of P(r) by recursion, and the generating-function identity."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product

from isc.complex import iter_executions
from isc.counter import RoundCounter


def count_key(r: RoundCounter) -> tuple[int, ...]:
    """Memo key: nonzero budgets sorted descending.

    Counts are invariant under permutation, relabeling and dropping
    passive processes, so this collapses equivalent counters.
    """
    return tuple(sorted((b for _, b in r.entries if b), reverse=True))


@lru_cache(maxsize=None)
def _count(key: tuple[int, ...]) -> int:
    if len(key) <= 1:
        return 1
    total = 0
    idx = range(len(key))
    for k in range(1, len(key) + 1):
        for S in combinations(idx, k):
            nxt = [b - (i in S) for i, b in enumerate(key)]
            total += _count(tuple(sorted((b for b in nxt if b), reverse=True)))
    return total


def count_facets(r: RoundCounter) -> int:
    """Number of top-dimensional simplices of P(r)."""
    return _count(count_key(r))


@lru_cache(maxsize=None)
def count_facets_2d(m: int, n: int) -> int:
    """f(m, n) = f(m, n-1) + f(m-1, n) + f(m-1, n-1), f(m, 0) = f(0, n) = 1."""
    if m < 0 or n < 0:
        raise ValueError("f(m, n) needs m, n >= 0")
    if m == 0 or n == 0:
        return 1
    return count_facets_2d(m, n - 1) + count_facets_2d(m - 1, n) + count_facets_2d(m - 1, n - 1)


def enumerate_count(r: RoundCounter) -> int:
    """Brute-force count by walking every execution."""
    return sum(1 for _ in iter_executions(r))


def _exponents(nvars: int, max_degree: int):
    for e in product(range(max_degree + 1), repeat=nvars):
        if sum(e) <= max_degree:
            yield e


def series_coefficients(nvars: int, max_degree: int) -> dict[tuple[int, ...], int]:
    """Coefficients of F(x_0..x_{k-1}) up to total degree ``max_degree``."""
    return {e: count_facets(RoundCounter.dense(e)) for e in _exponents(nvars, max_degree)}


def denominator(nvars: int) -> dict[tuple[int, ...], int]:
    """``1 - sum over nonempty S of prod_{j in S} x_j`` as exponent -> coefficient."""
    poly = {(0,) * nvars: 1}
    for k in range(1, nvars + 1):
        for S in combinations(range(nvars), k):
            poly[tuple(int(j in S) for j in range(nvars))] = -1
    return poly


def truncated_product(a, b, max_degree: int) -> dict[tuple[int, ...], int]:
    out: dict[tuple[int, ...], int] = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            if sum(e) <= max_degree:
                out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def verify_generating_function(max_degree: int, nvars: int) -> bool:
    """Check ``F * (1 - sum_S prod x_j) == 1`` coefficient-wise up to ``max_degree``."""
    if max_degree < 0 or nvars < 1:
        raise ValueError("need max_degree >= 0 and at least one variable")
    F = series_coefficients(nvars, max_degree)
    return truncated_product(F, denominator(nvars), max_degree) == {(0,) * nvars: 1}
