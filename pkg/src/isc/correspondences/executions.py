"""Layered immediate snapshot executions ``(W_1, ..., W_t)``."""

from __future__ import annotations

from dataclasses import dataclass

from isc.complex import execution_to_facet, iter_executions
from isc.counter import RoundCounter
from isc.errors import StructureError
from isc.witness import WitnessPrestructure


@dataclass(frozen=True)
class Execution:
    layers: tuple
    counter: RoundCounter

    def __post_init__(self):
        layers = tuple(frozenset(w) for w in self.layers)
        object.__setattr__(self, "layers", layers)
        if any(not w for w in layers):
            raise StructureError("execution layers must be nonempty")
        supp = self.counter.support
        for w in layers:
            if not w <= supp:
                raise StructureError(f"{sorted(w - supp)} outside the support of {self.counter}")
        for p, b in self.counter:
            if sum(p in w for w in layers) != b:
                raise StructureError(f"process {p} does not run exactly {b} rounds")

    @classmethod
    def infer(cls, layers) -> "Execution":
        """Counter read off the layers over the dense support ``0..max``."""
        layers = [frozenset(w) for w in layers]
        top = max((max(w) for w in layers if w), default=-1)
        return cls(tuple(layers), RoundCounter.dense(sum(p in w for w in layers) for p in range(top + 1)))

    @property
    def t(self) -> int:
        return len(self.layers)

    def M(self, p: int, k: int) -> int:
        """Occurrences of ``p`` in ``W_1, ..., W_k``."""
        if p not in self.counter.support or not 0 <= k <= self.t:
            raise StructureError(f"M({p}, {k}) out of range")
        return sum(p in w for w in self.layers[:k])

    def rho(self, p: int, k: int) -> int:
        """Layer index (1-based) of the ``k``-th occurrence of ``p``."""
        budget = self.counter[p]
        if budget is None or not 1 <= k <= budget:
            raise StructureError(f"rho({p}, {k}) out of range")
        seen = 0
        for i, w in enumerate(self.layers, start=1):
            seen += p in w
            if seen == k:
                return i
        raise AssertionError("unreachable: counts were validated")

    def to_facet(self) -> WitnessPrestructure:
        return execution_to_facet(self.counter, self.layers)

    @classmethod
    def from_facet(cls, s: WitnessPrestructure, counter: RoundCounter) -> "Execution":
        if s.ghost_set:
            raise StructureError(f"{s} is not a facet")
        return cls(tuple(w for w, _ in s.pairs[1:]), counter)

    def to_json(self) -> dict:
        return {"layers": [sorted(w) for w in self.layers], "counter": self.counter.to_json()}


def exec_occurrence(e: Execution, p: int, k: int) -> tuple[int, int]:
    return e.M(p, k), e.rho(p, k)


def executions(r: RoundCounter) -> list[Execution]:
    return [Execution(ex, r) for ex in iter_executions(r)]
