"""Witness posets: the knowledge order on tokens ``z_{p,i}``.

The token ``(p, i)`` stands for what process ``p`` knows after its
``i``-th step. Relations are stored as pairs ``(x, y)`` meaning
``x < y``, always transitively closed.

A process may contribute no tokens at all (``k_p = -1``); this is what
ghosting a process that nobody has heard from produces.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

from isc.complex import check_caps, nonempty_subsets
from isc.counter import RoundCounter
from isc.correspondences.executions import Execution, executions
from isc.errors import StructureError
from isc.witness import StructureClass, WitnessPrestructure, classify

Token = tuple[int, int]


def transitive_closure(pairs) -> frozenset:
    below: dict = {}
    for x, y in pairs:
        below.setdefault(y, set()).add(x)
    changed = True
    while changed:
        changed = False
        for y, xs in below.items():
            extra = set()
            for x in xs:
                extra |= below.get(x, set())
            if not extra <= xs:
                xs |= extra
                changed = True
    return frozenset((x, y) for y, xs in below.items() for x in xs)


@dataclass(frozen=True)
class WitnessPoset:
    counter: RoundCounter
    elements: frozenset
    relation: frozenset

    def __post_init__(self):
        object.__setattr__(self, "elements", frozenset((int(p), int(i)) for p, i in self.elements))
        object.__setattr__(
            self,
            "relation",
            frozenset(((int(a), int(b)), (int(c), int(d))) for (a, b), (c, d) in self.relation),
        )

    @cached_property
    def _down(self) -> dict:
        down = {x: set() for x in self.elements}
        for x, y in self.relation:
            down.setdefault(y, set()).add(x)
        return {y: frozenset(xs) for y, xs in down.items()}

    def less(self, x: Token, y: Token) -> bool:
        return (x, y) in self.relation

    def down(self, x: Token) -> frozenset:
        """Strict lower set ``U``."""
        return self._down.get(x, frozenset())

    @cached_property
    def levels(self) -> dict:
        """``k_p`` for every process in the support; ``-1`` if it has no tokens."""
        k = {p: -1 for p in self.counter.support}
        for p, i in self.elements:
            k[p] = max(k.get(p, -1), i)
        return k

    @cached_property
    def active(self) -> frozenset:
        budgets = self.counter.as_dict()
        return frozenset(p for p, k in self.levels.items() if k == budgets.get(p))

    @property
    def dim(self) -> int:
        return len(self.active) - 1

    @property
    def complete(self) -> bool:
        return self.active == self.counter.support

    def maximal(self) -> frozenset:
        has_above = {x for x, _ in self.relation}
        return frozenset(self.elements - has_above)

    def to_json(self) -> dict:
        return {
            "elements": sorted([p, i] for p, i in self.elements),
            "relation": sorted([[a, b], [c, d]] for (a, b), (c, d) in self.relation),
        }

    def encode(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, obj, counter: RoundCounter) -> "WitnessPoset":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(
            counter,
            frozenset(tuple(x) for x in obj["elements"]),
            frozenset((tuple(x), tuple(y)) for x, y in obj["relation"]),
        )


def poset_problems(z: WitnessPoset) -> list[str]:
    """Every violated condition, as text; empty when ``z`` is a witness poset."""
    out = []
    r = z.counter.as_dict()
    supp = z.counter.support
    k = z.levels
    if any(p not in supp for p, _ in z.elements):
        return ["tokens of processes outside the support"]
    for p in supp:
        expect = {(p, i) for i in range(k[p] + 1)}
        if {x for x in z.elements if x[0] == p} != expect:
            out.append(f"tokens of {p} are not 0..k_p")
        if k[p] > r[p]:
            out.append(f"k_{p} exceeds the budget {r[p]}")
    if any(x not in z.elements or y not in z.elements for x, y in z.relation):
        out.append("relation mentions unknown tokens")
    if any(x == y for x, y in z.relation):
        out.append("relation is not irreflexive")
    if transitive_closure(z.relation) != z.relation:
        out.append("relation is not transitively closed")
    if out:
        return out
    # (1) each process's tokens form a chain
    for p, i in z.elements:
        if i >= 1 and not z.less((p, i - 1), (p, i)):
            out.append(f"(1) z_{p},{i - 1} < z_{p},{i} fails")
    # (2) the lower sets of non-initial tokens are linearly ordered, with the
    # matching knowledge of predecessors
    later = sorted(x for x in z.elements if x[1] >= 1)
    for a in later:
        for b in later:
            if b < a:
                continue
            (p, i), (q, j) = a, b
            Ua, Ub = z.down(a), z.down(b)
            b_knows = z.less((p, i - 1), b)
            a_knows = z.less((q, j - 1), a)
            if not (
                (Ub > Ua and b_knows and not a_knows)
                or (Ua > Ub and a_knows and not b_knows)
                or (Ua == Ub and a_knows and b_knows)
            ):
                out.append(f"(2) fails for z_{p},{i} and z_{q},{j}")
    # (3) maximal tokens are the final tokens of active processes
    if z.maximal() != {(p, r[p]) for p in z.active}:
        out.append("(3) maximal elements are not the final tokens of A(Z)")
    if not z.active:
        out.append("no process reached its budget")
    return out


def poset_validate(z: WitnessPoset) -> bool:
    return not poset_problems(z)


def exec_to_poset(e: Execution) -> WitnessPoset:
    """Tokens ``z_{q,j} < z_{p,i}`` iff the ``(j+1)``-th write of ``q`` precedes the ``i``-th step of ``p``."""
    r = e.counter.as_dict()
    elements = frozenset((p, i) for p, b in r.items() for i in range(b + 1))
    relation = set()
    for p, rp in r.items():
        for i in range(1, rp + 1):
            at = e.rho(p, i)
            for q, rq in r.items():
                for j in range(rq):
                    if at >= e.rho(q, j + 1):
                        relation.add(((q, j), (p, i)))
    return WitnessPoset(e.counter, elements, frozenset(relation))


def _layers(z: WitnessPoset) -> list[tuple[frozenset, set]]:
    """Group non-initial tokens by equal lower sets, in increasing order."""
    groups: dict = {}
    for x in z.elements:
        if x[1] >= 1:
            groups.setdefault(z.down(x), set()).add(x[0])
    ordered = sorted(groups.items(), key=lambda kv: len(kv[0]))
    for (U, _), (V, _) in zip(ordered, ordered[1:]):
        if not U < V:
            raise StructureError("lower sets are not a chain")
    return ordered


def poset_to_exec(z: WitnessPoset) -> Execution:
    bad = poset_problems(z)
    if bad:
        raise StructureError("not a witness poset: " + "; ".join(bad))
    if not z.complete:
        raise StructureError("only complete witness posets come from executions")
    return Execution(tuple(frozenset(ps) for _, ps in _layers(z)), z.counter)


def poset_ideal(z: WitnessPoset, A) -> WitnessPoset:
    """Lower ideal generated by the final tokens of the processes in ``A``."""
    A = frozenset(A)
    if not A or not A <= z.active:
        raise StructureError(f"{sorted(A)} must be a nonempty subset of A(Z) = {sorted(z.active)}")
    r = z.counter.as_dict()
    keep = set()
    for v in A:
        top = (v, r[v])
        keep.add(top)
        keep |= z.down(top)
    keep = frozenset(keep)
    rel = frozenset((x, y) for x, y in z.relation if x in keep and y in keep)
    return WitnessPoset(z.counter, keep, rel)


def witness_to_poset(s: WitnessPrestructure, r: RoundCounter) -> WitnessPoset:
    """Tokens ordered by the rows in which each process occurs among ``W_i`` and ``G_i``."""
    if classify(s) != StructureClass.WITNESS or s.support != r.support:
        raise StructureError(f"{s} is not a witness structure over the support of {r}")
    elements, rows = set(), {}
    for p in s.support:
        rows[p] = sorted(s.trace(p))  # rows[p][k] is the k-th occurrence, row 0 included
        k_p = sum(p in w for w, _ in s.pairs) - 1
        elements |= {(p, i) for i in range(k_p + 1)}
    relation = set()
    for p, i in elements:
        if i == 0:
            continue
        at = rows[p][i]
        for q, j in elements:
            if j + 1 < len(rows[q]) and at >= rows[q][j + 1]:
                relation.add(((q, j), (p, i)))
    return WitnessPoset(r, frozenset(elements), frozenset(relation))


def poset_to_witness(z: WitnessPoset) -> WitnessPrestructure:
    bad = poset_problems(z)
    if bad:
        raise StructureError("not a witness poset: " + "; ".join(bad))
    supp = z.counter.support
    r = z.counter.as_dict()
    W0 = frozenset(p for p, i in z.elements if i == 0)
    layers = _layers(z)
    G = [set() for _ in range(len(layers) + 1)]
    G[0] = set(supp - W0)
    for p, k in z.levels.items():
        if 0 <= k < r[p]:
            hits = [m for m, (U, _) in enumerate(layers, start=1) if (p, k) in U]
            if not hits:
                raise StructureError(f"token ({p}, {k}) is maximal but {p} is not active")
            G[hits[0]].add(p)
    pairs = [(W0, G[0])] + [(ps, G[m]) for m, (_, ps) in enumerate(layers, start=1)]
    return WitnessPrestructure(tuple(pairs))


class PosetComplex:
    """All witness posets with a given parameter, keyed by serialization."""

    def __init__(self, counter: RoundCounter, posets: dict):
        self.counter = counter
        self.dimension = len(counter.support) - 1
        order = sorted(posets, key=lambda k: (posets[k].dim, k))
        self._posets = {k: posets[k] for k in order}

    def __len__(self):
        return len(self._posets)

    def __iter__(self):
        return iter(self._posets.values())

    def __contains__(self, item):
        key = item.encode() if isinstance(item, WitnessPoset) else item
        return key in self._posets

    def vertices(self) -> list[WitnessPoset]:
        return [z for z in self if z.dim == 0]

    def facets(self) -> list[WitnessPoset]:
        return [z for z in self if z.dim == self.dimension]

    def f_vector(self) -> tuple[int, ...]:
        counts = [0] * (self.dimension + 1)
        for z in self:
            counts[z.dim] += 1
        return tuple(counts)


def build_c(r: RoundCounter, *, force: bool = False, **caps) -> PosetComplex:
    """Complete posets of all executions, closed under taking ideals."""
    if not force:
        check_caps(r, **caps)
    seeds = [exec_to_poset(e) for e in executions(r)]
    found = {z.encode(): z for z in seeds}
    stack = list(seeds)
    while stack:
        z = stack.pop()
        if len(z.active) < 2:
            continue
        for v in z.active:
            w = poset_ideal(z, z.active - {v})
            key = w.encode()
            if key not in found:
                found[key] = w
                stack.append(w)
    return PosetComplex(r, found)


def local_views(e: Execution) -> dict:
    """Process -> its final view, the ideal below its last token."""
    z = exec_to_poset(e)
    return {p: poset_ideal(z, {p}) for p in sorted(e.counter.support)}


def build_q(r: RoundCounter) -> set[frozenset]:
    """Protocol complex: sets of local views that co-occur in some execution."""
    simplices = set()
    for e in executions(r):
        views = local_views(e)
        for S in nonempty_subsets(views):
            simplices.add(frozenset(views[p].encode() for p in S))
    return simplices
