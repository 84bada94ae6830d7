"""The immediate snapshot complex P(r) of a round counter.

Simplices are witness structures satisfying the trace-length conditions
for ``r``; faces are obtained by ghosting. :func:`build` enumerates the
facets (one per execution) and closes them under single-process ghosting.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from itertools import combinations
from typing import Iterable, Iterator

from isc.counter import RoundCounter
from isc.errors import CapExceeded, StructureError
from isc.witness import (
    StructureClass,
    WitnessPrestructure,
    classify,
    ghost,
    relabel,
)

DEFAULT_MAX_CARDINALITY = 8
DEFAULT_MAX_PROCESSES = 4


def nonempty_subsets(items: Iterable[int]) -> Iterator[frozenset]:
    """All nonempty subsets, by size then lexicographically."""
    items = sorted(items)
    for k in range(1, len(items) + 1):
        for combo in combinations(items, k):
            yield frozenset(combo)


def subsets(items: Iterable[int]) -> Iterator[frozenset]:
    yield frozenset()
    yield from nonempty_subsets(items)


def iter_executions(r: RoundCounter) -> Iterator[tuple[frozenset, ...]]:
    """Every layer sequence ``(W_1, ..., W_t)`` using each ``p`` exactly ``r(p)`` times."""
    pids = [p for p, _ in r.entries]
    budgets = [b for _, b in r.entries]

    def rec(budgets):
        act = [i for i, b in enumerate(budgets) if b]
        if not act:
            yield ()
            return
        for k in range(1, len(act) + 1):
            for combo in combinations(act, k):
                nxt = list(budgets)
                for i in combo:
                    nxt[i] -= 1
                layer = frozenset(pids[i] for i in combo)
                for rest in rec(nxt):
                    yield (layer,) + rest

    yield from rec(budgets)


def execution_to_facet(r: RoundCounter, layers) -> WitnessPrestructure:
    return WitnessPrestructure(
        ((r.support, frozenset()),) + tuple((frozenset(w), frozenset()) for w in layers)
    )


def facets(r: RoundCounter) -> list[WitnessPrestructure]:
    """Top-dimensional simplices of P(r): all ``G_i`` empty, ``W_0 = supp r``."""
    if not r.support:
        raise StructureError("P(r) needs a nonempty support")
    return [execution_to_facet(r, ex) for ex in iter_executions(r)]


def is_simplex_of(s: WitnessPrestructure, r: RoundCounter) -> bool:
    if classify(s) != StructureClass.WITNESS:
        return False
    if s.support != r.support:
        return False
    budgets = r.as_dict()
    A = s.active_set
    for q in s.support:
        n = len(s.trace(q))
        if q in A and n != budgets[q] + 1:
            return False
        if q not in A and n > budgets[q] + 1:
            return False
    return True


def vertices(s: WitnessPrestructure) -> frozenset:
    """Ghost everything but one active process, for each active process."""
    A = s.active_set
    if not A:
        raise StructureError("the empty simplex has no vertices")
    return frozenset(ghost(s, A - {p}) for p in A)


def faces(s: WitnessPrestructure) -> frozenset:
    A = s.active_set
    return frozenset(ghost(s, S) for S in subsets(A))


def face_check(tau: WitnessPrestructure, sigma: WitnessPrestructure) -> bool:
    """Whether ``tau`` is a face of ``sigma``."""
    A_tau, A_sigma = tau.active_set, sigma.active_set
    if not A_tau <= A_sigma:
        return False
    return ghost(sigma, A_sigma - A_tau) == tau


def complete_to_facet(s: WitnessPrestructure, r: RoundCounter) -> WitnessPrestructure:
    """A facet of P(r) having ``s`` as the face obtained by ghosting ``G(s)``.

    Ghost rows are merged into the W rows, then each ghost ``p`` is
    appended to as many new trailing layers as it still has rounds left.
    """
    if not is_simplex_of(s, r):
        raise StructureError(f"{s} is not a simplex of P({r})")
    budgets = r.as_dict()
    missing = {p: budgets[p] + 1 - len(s.trace(p)) for p in s.ghost_set}
    q = max(missing.values(), default=0)
    layers = [w | g for w, g in s.pairs]
    layers += [frozenset(p for p, m in missing.items() if m >= i) for i in range(1, q + 1)]
    return WitnessPrestructure.from_layers(layers)


def check_caps(
    r: RoundCounter,
    max_cardinality: int = DEFAULT_MAX_CARDINALITY,
    max_processes: int = DEFAULT_MAX_PROCESSES,
):
    if r.cardinality > max_cardinality:
        raise CapExceeded(f"|r| = {r.cardinality} exceeds the cap {max_cardinality}")
    if len(r.support) > max_processes:
        raise CapExceeded(f"|supp r| = {len(r.support)} exceeds the cap {max_processes}")


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("ISC_MAX_THREADS", "1")))
    except ValueError:
        return 1


def _close(seeds: list[WitnessPrestructure]) -> dict[str, WitnessPrestructure]:
    found = {s.encode(): s for s in seeds}
    stack = list(seeds)
    while stack:
        s = stack.pop()
        for p in s.active_set:
            f = ghost(s, (p,))
            key = f.encode()
            if key not in found:
                found[key] = f
                stack.append(f)
    return found


class Complex:
    """Immutable set of simplices of P(r), keyed by canonical encoding."""

    def __init__(self, counter: RoundCounter, simplices: dict[str, WitnessPrestructure]):
        self.counter = counter
        self.dimension = len(counter.support) - 1
        order = sorted(simplices, key=lambda k: (simplices[k].dim, k))
        self._simplices = {k: simplices[k] for k in order}

    def __len__(self) -> int:
        return len(self._simplices)

    def __iter__(self) -> Iterator[WitnessPrestructure]:
        return iter(self._simplices.values())

    def __contains__(self, item) -> bool:
        key = item.encode() if isinstance(item, WitnessPrestructure) else item
        return key in self._simplices

    def __getitem__(self, key: str) -> WitnessPrestructure:
        return self._simplices[key]

    def keys(self) -> list[str]:
        return list(self._simplices)

    def items(self):
        return self._simplices.items()

    def of_dim(self, d: int) -> list[WitnessPrestructure]:
        return [s for s in self._simplices.values() if s.dim == d]

    def facets(self) -> list[WitnessPrestructure]:
        return self.of_dim(self.dimension)

    @property
    def empty(self) -> WitnessPrestructure:
        return WitnessPrestructure(((frozenset(), self.counter.support),))

    def __repr__(self) -> str:
        return f"Complex(P({self.counter}), {len(self)} simplices)"


def build(
    r: RoundCounter,
    *,
    max_cardinality: int = DEFAULT_MAX_CARDINALITY,
    max_processes: int = DEFAULT_MAX_PROCESSES,
    force: bool = False,
    workers: int | None = None,
) -> Complex:
    """Construct P(r), including the empty simplex.

    Facets are split round-robin over ``workers`` threads (default from
    ``ISC_MAX_THREADS``); each branch closes its share under ghosting and
    the branches are merged. The result does not depend on ``workers``.
    """
    if not r.support:
        raise StructureError("P(r) needs a nonempty support")
    if not force:
        check_caps(r, max_cardinality, max_processes)
    tops = facets(r)
    workers = workers or default_workers()
    if workers <= 1 or len(tops) < 2:
        found = _close(tops)
    else:
        chunks = [tops[i::workers] for i in range(workers)]
        found = {}
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_close, chunks):
                found.update(part)
    return Complex(r, found)


def f_vector(c: Complex, with_empty: bool = False) -> tuple[int, ...]:
    """Simplex counts ``(f_0, ..., f_n)``; ``with_empty`` prepends ``f_{-1}``."""
    lo = -1 if with_empty else 0
    counts = [0] * (c.dimension - lo + 1)
    for s in c:
        if s.dim >= lo:
            counts[s.dim - lo] += 1
    return tuple(counts)


def euler_characteristic(c: Complex) -> int:
    return sum((-1) ** d * n for d, n in enumerate(f_vector(c)))


def reconstruction_injective(c: Complex) -> bool:
    """Distinct nonempty simplices have distinct vertex sets."""
    seen = {}
    for key, s in c.items():
        if s.is_empty:
            continue
        vs = frozenset(v.encode() for v in vertices(s))
        if seen.setdefault(vs, key) != key:
            return False
    return True


def purity_check(c: Complex) -> bool:
    """Every simplex is recovered from its completed facet by ghosting its ghosts."""
    tops = {f.encode() for f in c.facets()}
    if not tops:
        return False
    for s in c:
        full = complete_to_facet(s, c.counter)
        if full.encode() not in tops or ghost(full, s.ghost_set) != s:
            return False
    return True


def relabel_complex(c: Complex, mapping) -> set[str]:
    """Keys of the simplices of ``c`` after renaming processes."""
    return {relabel(s, mapping).encode() for s in c}


def cone_split(s: WitnessPrestructure, apex: int) -> tuple[WitnessPrestructure, bool]:
    """Image of ``s`` under P(r) ~ P(r without apex) * {a}, for ``r(apex) = 0``.

    Returns the base simplex and whether the cone point is included.
    """
    (W0, G0), rest = s.pairs[0], s.pairs[1:]
    if apex in W0:
        return WitnessPrestructure(((W0 - {apex}, G0),) + rest), True
    if apex in G0:
        return WitnessPrestructure(((W0, G0 - {apex}),) + rest), False
    raise StructureError(f"{apex} not in the support of {s}")
