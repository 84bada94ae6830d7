import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isc.errors import StructureError
from isc.witness import (
    StructureClass,
    TraceForm,
    WitnessPrestructure,
    canonical_form,
    classify,
    derived_sets,
    from_trace_form,
    ghost,
    last,
    stabilize,
    stabilize_mod,
    to_trace_form,
    trace,
)

from strategies import prestructures, stable_prestructures, with_disjoint_subsets, witness_structures

WP = WitnessPrestructure.of
R = lambda n: set(range(n + 1))  # noqa: E731  [n] = {0..n}

SIGMA1 = WP((R(4), {5}), ({1}, ()), ((), {1}), ({2, 3}, {4}), ((), {3}))
SIGMA2 = WP((R(3), {4}), ((), {0}), ({2}, ()), ((), {2}), ({1}, {3}))
SIGMA3 = WP((R(3), {4}), ({2}, {0}), ({1}, {2, 3}))
GHOST_EXAMPLE = WP((R(3), ()), ({3}, ()), ({1, 2}, ()), ({3}, {0}), ({3}, {1}))


# -- oracles -----------------------------------------------------------------


def st_recursive(s, S):
    """Stabilization modulo S through the three recursive clauses."""
    S = frozenset(S)
    if s.t == 0:
        W0, G0 = s.pairs[0]
        return WitnessPrestructure(((W0 - S, G0 | S),))
    Wt, Gt = s.pairs[-1]
    if Wt <= S:
        return st_recursive(WitnessPrestructure(s.pairs[:-1]), S | Gt)
    tf = to_trace_form(s)
    return from_trace_form(TraceForm(tf.active - S, tf.ghosts | S, tf.traces))


def st_explicit(s, S):
    """Stabilization modulo S through the explicit J_i sets."""
    S = frozenset(S)
    rest = s.active_set - S
    q = max((max(s.trace(p)) for p in rest), default=0)
    pairs = s.pairs[: q + 1]
    G = s.ghost_set
    out = []
    for i, (w, g) in enumerate(pairs):
        later = frozenset().union(*(a | b for a, b in pairs[i + 1 :]))
        J = (S | G) & (w - later)
        out.append((w - J, g | J))
    return WitnessPrestructure(tuple(out))


# -- classification and derived sets ------------------------------------------


def test_golden_classes():
    assert classify(SIGMA1) == StructureClass.PRESTRUCTURE
    assert classify(SIGMA2) == StructureClass.STABLE
    assert classify(SIGMA3) == StructureClass.WITNESS


@pytest.mark.parametrize(
    "pairs",
    [
        ((R(1), ()), ({2}, ())),  # P1
        ((R(2), {0}), ((), {0})),  # P2
        ((R(2), ()), ({1}, {0}), ({0}, ())),  # P3
        ((R(2), ()), ((), ())),  # P4
    ],
)
def test_invalid(pairs):
    assert classify(WitnessPrestructure(pairs)) == StructureClass.INVALID


def test_derived_sets():
    assert derived_sets(SIGMA1) == (R(5), {1, 3, 4, 5}, {0, 2}, 1)
    assert derived_sets(SIGMA3) == (R(4), {0, 2, 3, 4}, {1}, 0)
    assert derived_sets(WP(((), {0, 1}))) == ({0, 1}, {0, 1}, set(), -1)


def test_derived_sets_rejects_invalid():
    with pytest.raises(StructureError):
        derived_sets(WP(({0}, ()), ({1}, ())))


def test_traces():
    assert trace(SIGMA1, 1) == {0, 1, 2}
    assert trace(SIGMA1, 3) == {0, 3, 4}
    assert trace(SIGMA1, 5) == {0}
    assert last(SIGMA1, 5) == -1
    assert last(SIGMA1, 2) == 3
    with pytest.raises(StructureError):
        trace(SIGMA1, 9)


def test_encoding():
    assert SIGMA3.encode() == "0,1,2,3|4;2|0;1|2,3"
    assert WitnessPrestructure.parse("0,1,2,3|4;2|0;1|2,3") == SIGMA3
    assert WP(((), {0})).encode() == "|0"
    with pytest.raises(StructureError):
        WitnessPrestructure.parse("0,1;2")


# -- trace form --------------------------------------------------------------


def test_trace_form_of_sigma1():
    tf = to_trace_form(SIGMA1)
    assert tf.active == {0, 2} and tf.ghosts == {1, 3, 4, 5}
    assert dict(tf.traces) == {0: {0}, 1: {0, 1, 2}, 2: {0, 3}, 3: {0, 3, 4}, 4: {0, 3}, 5: {0}}


def test_trace_form_round_trip_examples():
    for s in (SIGMA1, SIGMA2, SIGMA3):
        assert from_trace_form(to_trace_form(s)) == s
    tf = TraceForm({0}, (), {0: {0, 1}})
    assert from_trace_form(tf) == WP(({0}, ()), ({0}, ()))


def test_trace_form_rejects_bad_input():
    with pytest.raises(StructureError):
        from_trace_form(TraceForm({0}, (), {0: {1}}))  # T1
    with pytest.raises(StructureError):
        from_trace_form(TraceForm({0}, (), {0: {0, 2}}))  # T2


@given(prestructures())
def test_trace_form_bijection(s):
    assert classify(s) >= StructureClass.PRESTRUCTURE
    assert from_trace_form(to_trace_form(s)) == s


# -- stabilization -----------------------------------------------------------


def test_stabilize_golden():
    s = WP((R(4), ()), ({1}, ()), ({0, 3, 4}, ()), ({2, 3}, ()), ({1}, {3}), ({1}, {2}), ((), {1}))
    assert stabilize(s).encode() == "0,1,3,4|2;|1;0,4|3"


def test_stabilize_trivial_cases():
    assert stabilize(SIGMA2) == SIGMA2
    assert stabilize(WP(((), {0}))) == WP(((), {0}))


def test_stabilize_mod_golden():
    assert stabilize_mod(GHOST_EXAMPLE, {3}).encode() == "1,2,3|0;|3;2|1"


def test_stabilize_mod_everything():
    # every trace is cut to round 0, so all processes end up in G_0
    assert stabilize_mod(SIGMA3, SIGMA3.active_set) == WP(((), R(4)))
    facet = WP(({0, 1}, ()), ({0}, ()), ({1}, ()))
    assert stabilize_mod(facet, {0, 1}) == WP(((), {0, 1}))


def test_stabilize_mod_rejects_non_active():
    with pytest.raises(StructureError):
        stabilize_mod(SIGMA3, {0})


@given(prestructures())
def test_stabilize_properties(s):
    out = stabilize(s)
    assert classify(out) >= StructureClass.STABLE
    assert derived_sets(out) == derived_sets(s)


@given(stable_prestructures())
def test_stabilize_fixes_stable(s):
    assert stabilize(s) == s
    assert stabilize_mod(s, ()) == s


@given(with_disjoint_subsets(prestructures()))
def test_stabilize_mod_matches_oracles(case):
    s, S, T = case
    got = stabilize_mod(s, S | T)
    assert got == st_recursive(s, S | T)
    assert got == st_explicit(s, S | T)


@given(with_disjoint_subsets(prestructures()))
def test_stabilize_mod_sets(case):
    s, S, _ = case
    out = stabilize_mod(s, S)
    assert classify(out) >= StructureClass.STABLE
    assert out.support == s.support
    assert out.ghost_set == s.ghost_set | S
    assert out.active_set == s.active_set - S
    assert out.dim == s.dim - len(S)


@given(with_disjoint_subsets(prestructures()))
def test_stabilize_mod_composes(case):
    s, S, T = case
    assert stabilize_mod(stabilize_mod(s, S), T) == stabilize_mod(s, S | T)


# -- canonical form ----------------------------------------------------------


def test_canonical_form_goldens():
    assert canonical_form(SIGMA2) == SIGMA3
    assert canonical_form(SIGMA3) == SIGMA3
    assert canonical_form(WitnessPrestructure.parse("1,2,3|0;|3;2|1")).encode() == "1,2,3|0;2|1,3"


def test_canonical_form_rejects_unstable():
    with pytest.raises(StructureError):
        canonical_form(SIGMA1)


@given(stable_prestructures())
def test_canonical_form_properties(s):
    c = canonical_form(s)
    assert classify(c) == StructureClass.WITNESS
    assert derived_sets(c) == derived_sets(s)
    assert (c == s) == (classify(s) == StructureClass.WITNESS)


@given(with_disjoint_subsets(stable_prestructures()))
def test_canonical_form_absorbs_stabilization(case):
    s, S, _ = case
    assert canonical_form(stabilize_mod(s, S)) == canonical_form(stabilize_mod(canonical_form(s), S))


# -- ghosting ----------------------------------------------------------------


def test_ghost_golden():
    assert ghost(GHOST_EXAMPLE, {3}).encode() == "1,2,3|0;2|1,3"


def test_ghost_simple_case():
    s = WP(({0, 1}, ()), ({0, 1}, ()))
    assert ghost(s, {1}) == WP(({0, 1}, ()), ({0}, {1}))


def test_ghost_identity_and_errors():
    assert ghost(SIGMA3, ()) == SIGMA3
    empty = WP(((), {0, 1}))
    assert ghost(empty, ()) == empty
    with pytest.raises(StructureError):
        ghost(SIGMA2, ())
    with pytest.raises(StructureError):
        ghost(SIGMA3, {0})


@given(with_disjoint_subsets(witness_structures()))
def test_ghost_composes(case):
    s, S, T = case
    assert ghost(ghost(s, S), T) == ghost(s, S | T)


@given(with_disjoint_subsets(witness_structures()))
def test_ghost_sets(case):
    s, S, _ = case
    g = ghost(s, S)
    assert classify(g) == StructureClass.WITNESS
    assert g.support == s.support
    assert g.ghost_set == s.ghost_set | S
    assert g.dim == s.dim - len(S)


@settings(max_examples=200)
@given(witness_structures(), st.data())
def test_ghost_shrinks_traces(s, data):
    if not s.active_set:
        return
    p = data.draw(st.sampled_from(sorted(s.active_set)))
    g = ghost(s, {p})
    lone = s.pairs[-1][0] == {p}
    for q in s.support:
        assert len(g.trace(q)) <= len(s.trace(q))
        if not lone:
            assert len(g.trace(q)) == len(s.trace(q))


@given(witness_structures())
def test_single_ghost_when_column_shared(s):
    for p in s.active_set:
        l = s.last(p)
        if l >= 1 and len(s.W(l)) >= 2:
            expect = list(s.pairs)
            expect[l] = (s.W(l) - {p}, s.G(l) | {p})
            assert ghost(s, {p}) == WitnessPrestructure(tuple(expect))


@given(witness_structures())
def test_dimension_minus_one(s):
    assert (s.dim == -1) == (s.t == 0 and not s.pairs[0][0])
