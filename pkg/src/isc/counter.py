"""Round counters: finitely supported maps from process ids to round budgets.

An undefined budget is represented by the key being absent. Counters are
immutable and hashable, so they can be used as cache keys.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping

from isc.errors import StructureError


@dataclass(frozen=True)
class Permutation:
    """A bijection of the nonnegative integers moving finitely many points.

    Stored as the sorted pairs ``(i, p(i))`` with ``p(i) != i``; every
    other point is fixed.
    """

    pairs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        moved = tuple(sorted((int(a), int(b)) for a, b in self.pairs if a != b))
        domain = [a for a, _ in moved]
        image = [b for _, b in moved]
        if len(set(domain)) != len(domain):
            raise StructureError(f"not a function: repeated source in {moved}")
        if set(domain) != set(image) or len(set(image)) != len(image):
            raise StructureError(f"not a bijection: {moved}")
        if any(a < 0 or b < 0 for a, b in moved):
            raise StructureError("permutations act on nonnegative integers")
        object.__setattr__(self, "pairs", moved)

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, int]) -> "Permutation":
        return cls(tuple(mapping.items()))

    @classmethod
    def swap(cls, a: int, b: int) -> "Permutation":
        return cls(((a, b), (b, a)))

    def __call__(self, i: int) -> int:
        return dict(self.pairs).get(i, i)

    def inverse(self) -> "Permutation":
        return Permutation(tuple((b, a) for a, b in self.pairs))


@dataclass(frozen=True)
class RoundCounter:
    """Map ``process id -> round budget`` with finite support.

    ``entries`` holds ``(pid, budget)`` pairs sorted by pid.
    """

    entries: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        items = tuple(sorted((int(p), int(b)) for p, b in self.entries))
        pids = [p for p, _ in items]
        if len(set(pids)) != len(pids):
            raise StructureError(f"duplicate process id in {items}")
        for p, b in items:
            if p < 0:
                raise StructureError(f"negative process id {p}")
            if b < 0:
                raise StructureError(f"negative budget {b} for process {p}")
        object.__setattr__(self, "entries", items)

    # construction

    @classmethod
    def dense(cls, budgets: Iterable[int]) -> "RoundCounter":
        """The counter ``(r_0, ..., r_n)``."""
        return cls(tuple(enumerate(budgets)))

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, int]) -> "RoundCounter":
        return cls(tuple((int(k), int(v)) for k, v in mapping.items()))

    @classmethod
    def from_json(cls, obj) -> "RoundCounter":
        """Accept the dense array form ``[2,1,1]`` or the sparse ``{"1":2}``."""
        if isinstance(obj, str):
            obj = json.loads(obj)
        if isinstance(obj, Mapping):
            return cls.from_mapping({int(k): v for k, v in obj.items()})
        if isinstance(obj, (list, tuple)):
            return cls.dense(obj)
        raise StructureError(f"cannot read a round counter from {obj!r}")

    @classmethod
    def parse(cls, text: str) -> "RoundCounter":
        """Parse ``"2,1,1"``, a JSON array or a JSON object."""
        text = text.strip()
        if text.startswith(("[", "{")):
            return cls.from_json(text)
        if not text:
            return cls()
        try:
            return cls.dense(int(x) for x in text.split(","))
        except ValueError as exc:
            raise StructureError(f"bad counter {text!r}") from exc

    # queries

    def __getitem__(self, p: int) -> int | None:
        """Budget of ``p``, or ``None`` when undefined."""
        return dict(self.entries).get(p)

    def __contains__(self, p: int) -> bool:
        return any(q == p for q, _ in self.entries)

    def __iter__(self):
        return iter(self.entries)

    def as_dict(self) -> dict[int, int]:
        return dict(self.entries)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(p for p, _ in self.entries)

    @property
    def cardinality(self) -> int:
        return sum(b for _, b in self.entries)

    @property
    def active(self) -> frozenset[int]:
        return frozenset(p for p, b in self.entries if b >= 1)

    @property
    def passive(self) -> frozenset[int]:
        return frozenset(p for p, b in self.entries if b == 0)

    def active_passive(self) -> tuple[frozenset[int], frozenset[int]]:
        return self.active, self.passive

    @property
    def is_dense(self) -> bool:
        return [p for p, _ in self.entries] == list(range(len(self.entries)))

    # operations

    def canonical(self) -> "RoundCounter":
        """Re-index the support order-preservingly onto ``0..k-1``."""
        return RoundCounter.dense(b for _, b in self.entries)

    def permute(self, perm: Permutation) -> "RoundCounter":
        """``result(i) = self(perm(i))``."""
        inv = perm.inverse()
        return RoundCounter(tuple((inv(p), b) for p, b in self.entries))

    def execute(self, S: Iterable[int]) -> "RoundCounter":
        """Decrement the budget of every member of ``S``."""
        S = frozenset(S)
        if not S <= self.active:
            raise StructureError(
                f"{sorted(S - self.active)} not active in {self.to_json()}"
            )
        return RoundCounter(tuple((p, b - (p in S)) for p, b in self.entries))

    # serialization

    def to_json(self):
        if self.is_dense:
            return [b for _, b in self.entries]
        return {str(p): b for p, b in self.entries}

    def __str__(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))
