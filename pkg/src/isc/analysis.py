"""Canonical decomposition, facet graph, pseudomanifold structure, paths."""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

from isc.complex import Complex, build, faces, is_simplex_of, subsets
from isc.counter import RoundCounter
from isc.errors import StructureError
from isc.witness import WitnessPrestructure, ghost

# -- canonical decomposition -------------------------------------------------


def in_part(s: WitnessPrestructure, S: frozenset) -> bool:
    if s.t == 0:
        return True
    W1, G1 = s.pairs[1]
    return S <= G1 or (W1 | G1) == S


@dataclass(frozen=True)
class Decomposition:
    parent: Complex
    parts: dict  # frozenset S -> frozenset of simplex keys

    def part(self, S) -> frozenset:
        return self.parts[frozenset(S)]


def decompose(c: Complex) -> Decomposition:
    """The subcomplexes X_S for every ``S`` contained in the active set of the counter."""
    parts = {}
    for S in subsets(c.counter.active):
        parts[S] = frozenset(k for k, s in c.items() if in_part(s, S))
    return Decomposition(c, parts)


def _counter(c) -> RoundCounter:
    return c.counter if isinstance(c, Complex) else c


def decomposition_iso(
    c, S
) -> tuple[Callable[[WitnessPrestructure], WitnessPrestructure], Callable[[WitnessPrestructure], WitnessPrestructure]]:
    """Mutually inverse maps between X_S(r) and P(r executed at S)."""
    r = _counter(c)
    S = frozenset(S)
    if not S <= r.active:
        raise StructureError(f"{sorted(S - r.active)} not active in {r}")

    def forward(s: WitnessPrestructure) -> WitnessPrestructure:
        if s.t == 0:
            return s
        (W0, G0), (W1, G1), rest = s.pairs[0], s.pairs[1], s.pairs[2:]
        if (W1 | G1) == S:
            return WitnessPrestructure(((W0 - G1, G0 | G1),) + rest)
        if S <= G1:
            return WitnessPrestructure(((W0 - S, G0 | S), (W1, G1 - S)) + rest)
        raise StructureError(f"{s} is not in X_{sorted(S)}")

    def backward(s: WitnessPrestructure) -> WitnessPrestructure:
        (V0, H0), rest = s.pairs[0], s.pairs[1:]
        if V0 & S:
            return WitnessPrestructure(((V0 | (H0 & S), H0 - S), (V0 & S, H0 & S)) + rest)
        if s.t >= 1:
            (V1, H1), tail = rest[0], rest[1:]
            return WitnessPrestructure(((V0 | S, H0 - S), (V1, H1 | S)) + tail)
        return s

    return forward, backward


def verify_decomposition_iso(c: Complex, S, lower: Complex | None = None) -> bool:
    """Exhaustively check that the two maps are inverse simplicial bijections."""
    S = frozenset(S)
    r = c.counter
    gamma, rho = decomposition_iso(r, S)
    low_r = r.execute(S)
    if lower is None:
        lower = build(low_r, force=True)
    part = decompose_part(c, S)
    images = set()
    for key in part:
        s = c[key]
        g = gamma(s)
        if not is_simplex_of(g, low_r) or rho(g) != s:
            return False
        if (g.support, g.active_set, g.ghost_set) != (s.support, s.active_set, s.ghost_set):
            return False
        for p in s.active_set:
            if gamma(ghost(s, {p})) != ghost(g, {p}):
                return False
        images.add(g.encode())
    if images != set(lower.keys()):
        return False
    return all(rho(t).encode() in part and gamma(rho(t)) == t for t in lower)


def decompose_part(c: Complex, S) -> frozenset:
    S = frozenset(S)
    return frozenset(k for k, s in c.items() if in_part(s, S))


# -- facet graph and pseudomanifold ------------------------------------------


@dataclass
class FacetGraph:
    """Facets together with the ridge -> containing-facets incidence."""

    facets: list
    ridges: dict = field(default_factory=dict)  # ridge key -> sorted facet keys

    def edges(self):
        for ridge, fs in self.ridges.items():
            for a, b in combinations(fs, 2):
                yield a, b, ridge

    def components(self) -> int:
        adj = defaultdict(set)
        for a, b, _ in self.edges():
            adj[a].add(b)
            adj[b].add(a)
        seen, count = set(), 0
        for f in self.facets:
            if f in seen:
                continue
            count += 1
            queue = deque([f])
            seen.add(f)
            while queue:
                for nb in adj[queue.popleft()]:
                    if nb not in seen:
                        seen.add(nb)
                        queue.append(nb)
        return count


def facet_graph(c: Complex) -> FacetGraph:
    tops = c.facets()
    incidence = defaultdict(list)
    for f in tops:
        for p in sorted(f.active_set):
            incidence[ghost(f, {p}).encode()].append(f.encode())
    ridges = {k: sorted(v) for k, v in sorted(incidence.items())}
    return FacetGraph([f.encode() for f in tops], ridges)


def strongly_connected(c: Complex, graph: FacetGraph | None = None) -> bool:
    graph = graph or facet_graph(c)
    return graph.components() == 1


@dataclass
class PseudomanifoldReport:
    is_pseudomanifold: bool
    boundary_keys: frozenset
    ridge_degrees: dict
    boundary_matches: bool  # boundary == simplices with nonempty G_0


def pseudomanifold(c: Complex, graph: FacetGraph | None = None) -> PseudomanifoldReport:
    graph = graph or facet_graph(c)
    degrees = {s.encode(): 0 for s in c.of_dim(c.dimension - 1)}
    for ridge, fs in graph.ridges.items():
        degrees[ridge] = len(fs)
    ok = graph.components() == 1 and all(d in (1, 2) for d in degrees.values())
    boundary = set()
    for ridge, d in degrees.items():
        if d == 1:
            boundary |= {f.encode() for f in faces(c[ridge])}
    expected = {k for k, s in c.items() if s.pairs[0][1]}
    return PseudomanifoldReport(ok, frozenset(boundary), degrees, boundary == expected)


def b_v_subcomplex(c: Complex, V) -> frozenset:
    """Simplices whose ``G_0`` contains ``V``."""
    V = frozenset(V)
    if not V <= c.counter.support:
        raise StructureError(f"{sorted(V - c.counter.support)} not in the support")
    return frozenset(k for k, s in c.items() if V <= s.pairs[0][1])


# -- one-dimensional complexes -----------------------------------------------


def path_endpoints(m: int, n: int) -> tuple[WitnessPrestructure, WitnessPrestructure]:
    v0 = WitnessPrestructure((({0}, {1}),) + (({0}, ()),) * m)
    v1 = WitnessPrestructure((({1}, {0}),) + (({1}, ()),) * n)
    return v0, v1


def path_check(c: Complex) -> tuple[bool, tuple]:
    """Whether P(m, n) is a path whose ends are the two solo-run vertices."""
    r = c.counter
    if not (r.is_dense and len(r.support) == 2):
        raise StructureError(f"path_check needs a counter (m, n), got {r}")
    degree = {s.encode(): 0 for s in c.of_dim(0)}
    adj = defaultdict(set)
    edges = c.of_dim(1)
    for e in edges:
        a, b = sorted(v.encode() for v in faces(e) if v.dim == 0)
        degree[a] += 1
        degree[b] += 1
        adj[a].add(b)
        adj[b].add(a)
    ends = tuple(sorted(k for k, d in degree.items() if d == 1))
    start = next(iter(degree))
    seen, queue = {start}, deque([start])
    while queue:
        for nb in adj[queue.popleft()]:
            if nb not in seen:
                seen.add(nb)
                queue.append(nb)
    is_path = (
        len(seen) == len(degree)
        and len(degree) == len(edges) + 1
        and all(d in (1, 2) for d in degree.values())
        and len(ends) == 2
    )
    m, n = r[0], r[1]
    expected = tuple(sorted(v.encode() for v in path_endpoints(m, n)))
    return is_path and ends == expected, tuple(WitnessPrestructure.parse(k) for k in ends)
