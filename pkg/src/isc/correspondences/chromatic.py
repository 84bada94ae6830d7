"""Standard chromatic subdivision of the n-simplex and its identification with P(1,...,1)."""

from __future__ import annotations

from dataclasses import dataclass

from isc.complex import nonempty_subsets
from isc.errors import StructureError
from isc.witness import WitnessPrestructure


@dataclass(frozen=True)
class ChromaticSimplex:
    """``((B_1..B_t), (C_1..C_t))`` with disjoint nonempty ``B_i`` and nonempty ``C_i`` in ``B_i``."""

    B: tuple
    C: tuple

    def __post_init__(self):
        B = tuple(frozenset(b) for b in self.B)
        C = tuple(frozenset(c) for c in self.C)
        if len(B) != len(C):
            raise StructureError("B and C must have the same length")
        seen = frozenset()
        for b, c in zip(B, C):
            if not c or not b:
                raise StructureError("chromatic cells must be nonempty")
            if not c <= b:
                raise StructureError(f"{sorted(c)} is not contained in {sorted(b)}")
            if b & seen:
                raise StructureError("the B sets must be disjoint")
            seen |= b
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "C", C)

    @property
    def colors(self) -> frozenset:
        return frozenset().union(*self.C)

    @property
    def dim(self) -> int:
        return sum(len(c) for c in self.C) - 1

    def to_json(self) -> dict:
        return {"B": [sorted(b) for b in self.B], "C": [sorted(c) for c in self.C]}

    @classmethod
    def from_json(cls, obj) -> "ChromaticSimplex":
        return cls(tuple(obj["B"]), tuple(obj["C"]))


def chromatic_faces(tau: ChromaticSimplex, p: int) -> ChromaticSimplex:
    """Delete the vertex of color ``p``."""
    for k, c in enumerate(tau.C):
        if p in c:
            break
    else:
        raise StructureError(f"color {p} does not occur in {tau.to_json()}")
    B, C = list(tau.B), list(tau.C)
    if len(c) >= 2:
        C[k] = c - {p}
    elif k < len(C) - 1:
        B[k : k + 2] = [B[k] | B[k + 1]]
        del C[k]
    else:
        del B[k], C[k]
    return ChromaticSimplex(tuple(B), tuple(C))


def chromatic_to_witness(tau: ChromaticSimplex, n: int) -> WitnessPrestructure:
    everyone = frozenset(range(n + 1))
    W0 = frozenset().union(*tau.B)
    if not W0 <= everyone:
        raise StructureError(f"{sorted(W0 - everyone)} outside [{n}]")
    return WitnessPrestructure(
        ((W0, everyone - W0),) + tuple((c, b - c) for b, c in zip(tau.B, tau.C))
    )


def witness_to_chromatic(s: WitnessPrestructure) -> ChromaticSimplex:
    too_long = sorted(p for p in s.support if len(s.trace(p)) > 2)
    if too_long:
        raise StructureError(f"{too_long} have traces longer than 2 in {s}")
    rows = s.pairs[1:]
    return ChromaticSimplex(tuple(w | g for w, g in rows), tuple(w for w, _ in rows))


def iter_chromatic(n: int):
    """Every simplex of the chromatic subdivision of the n-simplex, the empty one included."""

    def rec(left):
        yield (), ()
        for b in nonempty_subsets(left):
            for c in nonempty_subsets(b):
                for B, C in rec(left - b):
                    yield (b,) + B, (c,) + C

    for B, C in rec(frozenset(range(n + 1))):
        yield ChromaticSimplex(B, C)


def chromatic_f_vector(n: int, with_empty: bool = False) -> tuple[int, ...]:
    lo = -1 if with_empty else 0
    counts = [0] * (n - lo + 1)
    for tau in iter_chromatic(n):
        if tau.dim >= lo:
            counts[tau.dim - lo] += 1
    return tuple(counts)
