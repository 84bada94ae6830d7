"""Named structural properties of a built complex, run in a fixed order.

Each check returns ``(status, detail)`` where status is PASS, FAIL or SKIP.
"""

from __future__ import annotations

from collections import Counter

from isc.analysis import decompose, facet_graph, path_check, pseudomanifold, verify_decomposition_iso
from isc.complex import Complex, euler_characteristic, f_vector, purity_check, reconstruction_injective
from isc.enumeration import count_facets, count_facets_2d

PASS, FAIL, SKIP = "PASS", "FAIL", "SKIP"


def _status(ok: bool) -> str:
    return PASS if ok else FAIL


def check_pure(c: Complex):
    return _status(purity_check(c)), f"dimension {c.dimension}, {len(c.facets())} facets"


def check_strong(c: Complex):
    g = facet_graph(c)
    n = g.components()
    edges = sum(1 for _ in g.edges())
    return _status(n == 1), f"{len(g.facets)} facets, {edges} adjacencies, {n} component(s)"


def check_pseudo(c: Complex):
    rep = pseudomanifold(c)
    degrees = Counter(rep.ridge_degrees.values())
    detail = "ridge degrees " + ", ".join(f"{d}:{n}" for d, n in sorted(degrees.items()))
    return _status(rep.is_pseudomanifold), detail


def check_boundary(c: Complex):
    rep = pseudomanifold(c)
    return _status(rep.boundary_matches), f"{len(rep.boundary_keys)} boundary simplices, all with G0 nonempty"


def check_euler(c: Complex):
    chi = euler_characteristic(c)
    return _status(chi == 1), f"chi = {chi}, f = {f_vector(c)}"


def check_reconstruction(c: Complex):
    return _status(reconstruction_injective(c)), f"{len(c) - 1} nonempty simplices"


def check_decomposition(c: Complex):
    parts = decompose(c).parts
    bad = [S for S in parts if S and not verify_decomposition_iso(c, S)]
    detail = f"{len(parts) - 1} nonempty parts"
    if bad:
        detail += ", failing " + " ".join(str(sorted(S)) for S in bad)
    return _status(not bad), detail


def check_count(c: Complex):
    got, want = len(c.facets()), count_facets(c.counter)
    return _status(got == want), f"{got} facets, recursion gives {want}"


def check_path(c: Complex):
    r = c.counter
    if not (r.is_dense and len(r.support) == 2):
        return SKIP, "needs a two-process counter"
    ok, ends = path_check(c)
    m, n = r[0], r[1]
    ok = ok and len(c.of_dim(1)) == count_facets_2d(m, n)
    return _status(ok), "ends " + " and ".join(e.encode() for e in ends)


PROPERTIES = {
    "pure": check_pure,
    "strong": check_strong,
    "pseudo": check_pseudo,
    "boundary": check_boundary,
    "euler": check_euler,
    "reconstruction": check_reconstruction,
    "decomposition": check_decomposition,
    "count": check_count,
    "path": check_path,
}


def run_checks(c: Complex, names=None) -> list[tuple[str, str, str]]:
    """Run the named checks in the order of ``PROPERTIES``."""
    wanted = set(PROPERTIES) if names is None else set(names)
    unknown = wanted - set(PROPERTIES)
    if unknown:
        raise KeyError(", ".join(sorted(unknown)))
    return [(name, *fn(c)) for name, fn in PROPERTIES.items() if name in wanted]
