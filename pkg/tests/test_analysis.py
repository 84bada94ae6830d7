import pytest

from isc.analysis import (
    b_v_subcomplex,
    decompose,
    decomposition_iso,
    facet_graph,
    in_part,
    path_check,
    path_endpoints,
    pseudomanifold,
    strongly_connected,
    verify_decomposition_iso,
)
from isc.complex import build, faces
from isc.counter import RoundCounter
from isc.enumeration import count_facets_2d
from isc.errors import StructureError
from isc.witness import WitnessPrestructure

D = RoundCounter.dense
P = WitnessPrestructure.parse


def test_decompose_011():
    c = build(D([0, 1, 1]))
    parts = decompose(c).parts
    assert set(parts) == {frozenset(), frozenset({1}), frozenset({2}), frozenset({1, 2})}
    assert parts[frozenset()] == set(c.keys())
    for S in ({1}, {2}, {1, 2}):
        assert len(parts[frozenset(S)]) == 8
        assert verify_decomposition_iso(c, S)


def test_parts_closed_under_faces():
    c = build(D([2, 1, 1]))
    for S, part in decompose(c).parts.items():
        for key in part:
            assert {f.encode() for f in faces(c[key])} <= part


def test_facets_in_one_part():
    c = build(D([2, 1, 1]))
    parts = decompose(c).parts
    for f in c.facets():
        homes = [S for S, part in parts.items() if S and f.encode() in part]
        assert homes == [f.W(1) | f.G(1)]


def test_in_part_rules():
    f = P("0,1|;0|;1|")
    assert in_part(f, frozenset({0}))
    assert not in_part(f, frozenset({1}))
    assert not in_part(f, frozenset({0, 1}))
    assert in_part(P("0,1|"), frozenset({0, 1}))


def test_iso_maps():
    gamma, rho = decomposition_iso(D([1, 1]), {0})
    assert gamma(P("0|1")) == P("0|1")
    assert gamma(P("0,1|;0|;1|")) == P("0,1|;1|")
    c = build(D([1, 1]))
    low = build(D([0, 1]))
    part = decompose(c).part({0})
    assert {gamma(c[k]).encode() for k in part} == set(low.keys())
    for s in low:
        assert gamma(rho(s)) == s
    for k in part:
        assert rho(gamma(c[k])) == c[k]
    with pytest.raises(StructureError):
        decomposition_iso(D([0, 1]), {0})


@pytest.mark.parametrize("budgets", [[3, 0], [1, 1], [2, 1, 1]])
def test_strongly_connected(budgets):
    assert strongly_connected(build(D(budgets)))


def test_facet_graph_of_11():
    g = facet_graph(build(D([1, 1])))
    assert len(g.facets) == 3
    assert len(list(g.edges())) == 2


def test_pseudomanifold_00():
    rep = pseudomanifold(build(D([0, 0])))
    assert rep.is_pseudomanifold and rep.boundary_matches
    assert rep.ridge_degrees == {"0|1": 1, "1|0": 1}
    assert rep.boundary_keys == {"0|1", "1|0", "|0,1"}


def test_pseudomanifold_11():
    rep = pseudomanifold(build(D([1, 1])))
    ends = {v.encode() for v in path_endpoints(1, 1)}
    assert {k for k, d in rep.ridge_degrees.items() if d == 1} == ends
    assert {k for k, d in rep.ridge_degrees.items() if d == 2} == {"0,1|;0|1", "0,1|;1|0"}


def test_pseudomanifold_111():
    c = build(D([1, 1, 1]))
    rep = pseudomanifold(c)
    assert rep.is_pseudomanifold and rep.boundary_matches
    # the boundary of the subdivided triangle is a 9-cycle
    assert sum(1 for k in rep.boundary_keys if c[k].dim == 1) == 9
    assert sum(1 for k in rep.boundary_keys if c[k].dim == 0) == 9


def test_b_v():
    c = build(D([0, 0]))
    assert b_v_subcomplex(c, set()) == set(c.keys())
    assert b_v_subcomplex(c, {0}) == {"1|0", "|0,1"}
    with pytest.raises(StructureError):
        b_v_subcomplex(c, {5})


def test_b_v_union_is_boundary():
    c = build(D([1, 1]))
    union = b_v_subcomplex(c, {0}) | b_v_subcomplex(c, {1})
    assert union == pseudomanifold(c).boundary_keys


def test_paths():
    ok, ends = path_check(build(D([1, 0])))
    assert ok and len(build(D([1, 0])).of_dim(1)) == 1
    ok, ends = path_check(build(D([1, 1])))
    assert ok
    assert {e.encode() for e in ends} == {"0|1;0|", "1|0;1|"}
    c = build(D([2, 2]))
    assert path_check(c)[0] and len(c.of_dim(1)) == count_facets_2d(2, 2) == 13
    with pytest.raises(StructureError):
        path_check(build(D([1, 1, 1])))
