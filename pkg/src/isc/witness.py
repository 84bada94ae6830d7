"""Witness prestructures, their trace form, and the ghosting calculus.

A prestructure is a sequence of pairs ``(W_i, G_i)`` of finite sets of
process ids. ``stabilize_mod`` and ``canonical_form`` compose to the
ghosting operator ``ghost``, which encodes taking faces in an immediate
snapshot complex.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import Iterable, Mapping

from isc.errors import StructureError

Pair = tuple[frozenset, frozenset]


class StructureClass(IntEnum):
    """Strictest class a pair sequence belongs to; ordered by strength."""

    INVALID = 0
    PRESTRUCTURE = 1
    STABLE = 2
    WITNESS = 3


def _fmt(cell) -> str:
    return ",".join(str(x) for x in sorted(cell))


def _read(text: str) -> frozenset:
    text = text.strip()
    return frozenset(int(x) for x in text.split(",")) if text else frozenset()


@dataclass(frozen=True)
class WitnessPrestructure:
    """The sequence ``((W_0, G_0), ..., (W_t, G_t))``.

    Construction only normalizes the cells to frozensets; it does not
    check (P1)-(P4). Use :func:`classify` for that.
    """

    pairs: tuple[Pair, ...]

    def __post_init__(self):
        pairs = tuple((frozenset(w), frozenset(g)) for w, g in self.pairs)
        if not pairs:
            raise StructureError("a prestructure has at least the pair (W_0, G_0)")
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def of(cls, *pairs) -> "WitnessPrestructure":
        return cls(tuple(pairs))

    @classmethod
    def from_layers(cls, layers: Iterable[Iterable[int]]) -> "WitnessPrestructure":
        """Short-hand ``(W_0, W_1, ..., W_t)`` with every ``G_i`` empty."""
        return cls(tuple((w, ()) for w in layers))

    @classmethod
    def parse(cls, text: str) -> "WitnessPrestructure":
        """Inverse of :meth:`encode`."""
        pairs = []
        for chunk in text.strip().split(";"):
            if chunk.count("|") != 1:
                raise StructureError(f"bad pair {chunk!r} in {text!r}")
            w, g = chunk.split("|")
            try:
                pairs.append((_read(w), _read(g)))
            except ValueError as exc:
                raise StructureError(f"bad cell in {text!r}") from exc
        return cls(tuple(pairs))

    def encode(self) -> str:
        """Canonical text key, e.g. ``"0,1,2,3|4;2|0;1|2,3"``."""
        return ";".join(f"{_fmt(w)}|{_fmt(g)}" for w, g in self.pairs)

    def __str__(self) -> str:
        return self.encode()

    def __repr__(self) -> str:
        return f"WitnessPrestructure({self.encode()!r})"

    @property
    def t(self) -> int:
        return len(self.pairs) - 1

    def W(self, i: int) -> frozenset:
        return self.pairs[i][0]

    def G(self, i: int) -> frozenset:
        return self.pairs[i][1]

    @property
    def support(self) -> frozenset:
        return self.pairs[0][0] | self.pairs[0][1]

    @property
    def ghost_set(self) -> frozenset:
        return frozenset().union(*(g for _, g in self.pairs))

    @property
    def active_set(self) -> frozenset:
        return self.support - self.ghost_set

    @property
    def dim(self) -> int:
        return len(self.active_set) - 1

    @property
    def is_empty(self) -> bool:
        return not self.pairs[0][0]

    def trace(self, p: int) -> frozenset:
        return trace(self, p)

    def last(self, p: int) -> int:
        return last(self, p)


Simplex = WitnessPrestructure


def classify(s: WitnessPrestructure) -> StructureClass:
    pairs = s.pairs
    W0 = pairs[0][0]
    for w, g in pairs[1:]:
        if not (w <= W0 and g <= W0):
            return StructureClass.INVALID  # (P1)
        if not (w or g):
            return StructureClass.INVALID  # (P4)
    seen = frozenset()
    for i, (_, g) in enumerate(pairs):
        if g & seen:
            return StructureClass.INVALID  # (P2)
        seen |= g
        if any(g & w for w, _ in pairs[i:]):
            return StructureClass.INVALID  # (P3)
    if all(w for w, _ in pairs[1:]):
        return StructureClass.WITNESS
    if pairs[-1][0]:
        return StructureClass.STABLE
    return StructureClass.PRESTRUCTURE


def _require(s: WitnessPrestructure, at_least: StructureClass, what: str):
    got = classify(s)
    if got < at_least:
        raise StructureError(f"{what} needs a {at_least.name.lower()}, got {got.name.lower()}: {s}")


def derived_sets(s: WitnessPrestructure) -> tuple[frozenset, frozenset, frozenset, int]:
    """``(support, ghost set, active set, dimension)``."""
    _require(s, StructureClass.PRESTRUCTURE, "derived_sets")
    return s.support, s.ghost_set, s.active_set, s.dim


def trace(s: WitnessPrestructure, p: int) -> frozenset:
    """Round indices ``i`` with ``p`` in ``W_i`` or ``G_i``."""
    if p not in s.support:
        raise StructureError(f"{p} is not in the support of {s}")
    return frozenset(i for i, (w, g) in enumerate(s.pairs) if p in w or p in g)


def last(s: WitnessPrestructure, p: int) -> int:
    """Largest ``i`` with ``p`` in ``W_i``; ``-1`` if ``p`` only occurs in ``G_0``."""
    if p not in s.support:
        raise StructureError(f"{p} is not in the support of {s}")
    return max((i for i, (w, _) in enumerate(s.pairs) if p in w), default=-1)


@dataclass(frozen=True)
class TraceForm:
    """``(A, G, {Tr(p)})``: active set, ghost set and per-process traces."""

    active: frozenset
    ghosts: frozenset
    traces: tuple[tuple[int, frozenset], ...]

    def __post_init__(self):
        object.__setattr__(self, "active", frozenset(self.active))
        object.__setattr__(self, "ghosts", frozenset(self.ghosts))
        items = self.traces.items() if isinstance(self.traces, Mapping) else self.traces
        object.__setattr__(
            self, "traces", tuple(sorted((int(p), frozenset(tr)) for p, tr in items))
        )

    def trace(self, p: int) -> frozenset:
        return dict(self.traces)[p]

    @property
    def t(self) -> int:
        return max((max(tr) for _, tr in self.traces if tr), default=0)

    def problems(self) -> list[str]:
        out = []
        if self.active & self.ghosts:
            out.append("A and G intersect")
        if {p for p, _ in self.traces} != self.active | self.ghosts:
            out.append("traces are not indexed by A and G")
        if not self.traces:
            out.append("no processes")
            return out
        if any(0 not in tr for _, tr in self.traces):
            out.append("(T1) some trace misses 0")
        covered = frozenset().union(*(tr for _, tr in self.traces))
        if covered != frozenset(range(self.t + 1)):
            out.append("(T2) traces do not cover [t]")
        return out


def to_trace_form(s: WitnessPrestructure) -> TraceForm:
    _require(s, StructureClass.PRESTRUCTURE, "to_trace_form")
    traces = {p: trace(s, p) for p in s.support}
    return TraceForm(s.active_set, s.ghost_set, traces)


def from_trace_form(tf: TraceForm) -> WitnessPrestructure:
    bad = tf.problems()
    if bad:
        raise StructureError("invalid trace form: " + "; ".join(bad))
    traces = dict(tf.traces)
    t = tf.t
    pairs = []
    for k in range(t + 1):
        G_k = frozenset(p for p in tf.ghosts if max(traces[p]) == k)
        W_k = frozenset(p for p, tr in traces.items() if k in tr) - G_k
        pairs.append((W_k, G_k))
    return WitnessPrestructure(tuple(pairs))


def _truncate(tf: TraceForm, active, ghosts, q: int) -> WitnessPrestructure:
    cut = frozenset(range(q + 1))
    return from_trace_form(
        TraceForm(active, ghosts, tuple((p, tr & cut) for p, tr in tf.traces))
    )


def stabilize(s: WitnessPrestructure) -> WitnessPrestructure:
    """Truncate every trace at the last round an active process appears in.

    Stable input is returned unchanged.
    """
    tf = to_trace_form(s)
    traces = dict(tf.traces)
    q = max((max(traces[p]) for p in tf.active), default=0)
    return _truncate(tf, tf.active, tf.ghosts, q)


def stabilize_mod(s: WitnessPrestructure, S: Iterable[int]) -> WitnessPrestructure:
    """Move ``S`` to the ghost set and re-stabilize."""
    S = frozenset(S)
    tf = to_trace_form(s)
    if not S <= tf.active:
        raise StructureError(f"{sorted(S - tf.active)} not in the active set of {s}")
    traces = dict(tf.traces)
    q = max((max(traces[p]) for p in tf.active - S), default=0)
    return _truncate(tf, tf.active - S, tf.ghosts | S, q)


def canonical_form(s: WitnessPrestructure) -> WitnessPrestructure:
    """Delete empty ``W`` columns, merging their ghosts into the next kept column."""
    _require(s, StructureClass.STABLE, "canonical_form")
    out = [s.pairs[0]]
    pending = frozenset()
    for w, g in s.pairs[1:]:
        pending |= g
        if w:
            out.append((w, pending))
            pending = frozenset()
    return WitnessPrestructure(tuple(out))


def ghost(s: WitnessPrestructure, S: Iterable[int]) -> WitnessPrestructure:
    """The face of ``s`` obtained by removing ``S`` from the active set."""
    S = frozenset(S)
    _require(s, StructureClass.WITNESS, "ghost")
    if not S:
        return s
    return canonical_form(stabilize_mod(s, S))


def relabel(s: WitnessPrestructure, mapping) -> WitnessPrestructure:
    """Apply a process renaming (callable or dict) to every cell."""
    f = mapping.get if isinstance(mapping, Mapping) else mapping
    return WitnessPrestructure(
        tuple((frozenset(map(f, w)), frozenset(map(f, g))) for w, g in s.pairs)
    )
