"""Command-line front end.

Exit codes: 0 success, 1 a property failed, 2 usage or input error,
3 the counter is over the size caps (pass --force to go ahead anyway).
"""

from __future__ import annotations

import argparse
import json
import sys

from isc.analysis import decompose, verify_decomposition_iso
from isc.checks import FAIL, PROPERTIES, run_checks
from isc.complex import (
    DEFAULT_MAX_CARDINALITY,
    DEFAULT_MAX_PROCESSES,
    build,
    check_caps,
    euler_characteristic,
    f_vector,
    is_simplex_of,
)
from isc.correspondences.chromatic import ChromaticSimplex, chromatic_to_witness, witness_to_chromatic
from isc.correspondences.executions import Execution
from isc.correspondences.posets import WitnessPoset, poset_to_witness, witness_to_poset
from isc.counter import RoundCounter
from isc.enumeration import count_facets, enumerate_count
from isc.errors import CapExceeded, StructureError
from isc.export import complex_to_json, facet_graph_dot
from isc.witness import WitnessPrestructure

EPILOG = """\
counters: a comma list of budgets for processes 0..n ("2,1,1"), inline
JSON (a list, or an object {"pid": budget} for sparse supports), or
@file.json holding either form.

simplices (convert): the text form "w,..|g,..;..." of a witness
structure, or JSON for a chromatic simplex {"B":..,"C":..}, an execution
{"layers":[[..],..]} or a poset {"elements":..,"relation":..}.

Relabelings of processes are permutations moving only finitely many
ids, that is p(i) != i for finitely many i.

exit codes: 0 ok, 1 property FAIL, 2 usage error, 3 cap exceeded.
"""


class UsageError(Exception):
    pass


def _read_arg(text: str) -> str:
    if text.startswith("@"):
        try:
            with open(text[1:], encoding="utf-8") as fh:
                return fh.read().strip()
        except OSError as exc:
            raise UsageError(f"cannot read {text[1:]}: {exc.strerror}") from exc
    return text


def parse_counter(text: str) -> RoundCounter:
    try:
        r = RoundCounter.parse(_read_arg(text))
    except (ValueError, TypeError, KeyError) as exc:
        raise UsageError(str(exc) or f"bad counter {text!r}") from exc
    if not r.support:
        raise UsageError("the counter needs at least one process")
    return r


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), sort_keys=True)


def _caps(args) -> dict:
    return {"max_cardinality": args.max_cardinality, "max_processes": args.max_processes}


def _build(args):
    return build(args.counter, force=args.force, **_caps(args))


def cmd_build(args, out) -> int:
    c = _build(args)
    if args.format == "json":
        out.write(complex_to_json(c))
        return 0
    fv = f_vector(c)
    out.write(f"P({c.counter}): dimension {c.dimension}\n")
    out.write("f-vector: " + " ".join(map(str, fv)) + "\n")
    out.write(f"simplices: {len(c) - 1} nonempty\n")
    out.write(f"euler characteristic: {euler_characteristic(c)}\n")
    if args.list:
        for key, s in c.items():
            if not s.is_empty:
                out.write(f"{s.dim} {key}\n")
    return 0


def cmd_count(args, out) -> int:
    r = args.counter
    n = count_facets(r)
    out.write(f"{n}\n")
    if args.verify:
        if not args.force:
            check_caps(r, **_caps(args))
        m = enumerate_count(r)
        out.write(f"verify: {'PASS' if m == n else 'FAIL'} ({m} executions enumerated)\n")
        return 0 if m == n else 1
    return 0


def cmd_check(args, out) -> int:
    if args.props == "all":
        names = list(PROPERTIES)
    else:
        names = [p.strip() for p in args.props.split(",") if p.strip()]
        unknown = [p for p in names if p not in PROPERTIES]
        if unknown:
            raise UsageError(f"unknown properties {', '.join(unknown)}; known: {', '.join(PROPERTIES)}")
    c = _build(args)
    code = 0
    for name, status, detail in run_checks(c, names):
        out.write(f"{name}: {status} ({detail})\n")
        if status == FAIL:
            code = 1
    return code


def cmd_decompose(args, out) -> int:
    c = _build(args)
    parts = decompose(c).parts
    rows = []
    for S, keys in parts.items():
        if not S:
            continue
        ok = verify_decomposition_iso(c, S)
        rows.append((S, keys, ok))
    if args.format == "json":
        obj = {
            "counter": c.counter.to_json(),
            "parts": [
                {"S": sorted(S), "lower": c.counter.execute(S).to_json(), "simplices": sorted(keys), "iso": ok}
                for S, keys, ok in rows
            ],
        }
        out.write(json.dumps(obj, indent=1, sort_keys=True) + "\n")
    else:
        for S, keys, ok in rows:
            label = ",".join(map(str, sorted(S)))
            lower = c.counter.execute(S)
            out.write(f"X_{{{label}}}: {len(keys)} simplices, iso to P({lower}): {'PASS' if ok else 'FAIL'}\n")
    return 0 if all(ok for *_, ok in rows) else 1


def _ones(r: RoundCounter) -> bool:
    return all(b == 1 for _, b in r)


def _read_simplex(text: str, r: RoundCounter) -> WitnessPrestructure:
    text = _read_arg(text)
    if text[:1] not in "[{":
        return WitnessPrestructure.parse(text)
    obj = json.loads(text)
    if isinstance(obj, list):
        obj = {"layers": obj}
    if "B" in obj:
        if not _ones(r):
            raise UsageError("chromatic simplices live in P(1,...,1)")
        return chromatic_to_witness(ChromaticSimplex.from_json(obj), max(r.support))
    if "layers" in obj:
        return Execution(tuple(obj["layers"]), r).to_facet()
    if "elements" in obj:
        return poset_to_witness(WitnessPoset.from_json(obj, r))
    raise UsageError("unrecognized simplex JSON")


def cmd_convert(args, out) -> int:
    r = args.counter
    try:
        s = _read_simplex(args.simplex, r)
    except json.JSONDecodeError as exc:
        raise UsageError(f"bad simplex JSON: {exc}") from exc
    if not is_simplex_of(s, r):
        raise UsageError(f"{s.encode()} is not a simplex of P({r})")
    if args.to == "witness":
        out.write(s.encode() + "\n")
    elif args.to == "chromatic":
        if not _ones(r):
            raise UsageError("chromatic simplices live in P(1,...,1)")
        out.write(_dump(witness_to_chromatic(s).to_json()) + "\n")
    elif args.to == "poset":
        out.write(_dump(witness_to_poset(s, r).to_json()) + "\n")
    else:
        out.write(_dump({"layers": Execution.from_facet(s, r).to_json()["layers"]}) + "\n")
    return 0


def cmd_export(args, out) -> int:
    c = _build(args)
    text = complex_to_json(c) if args.format == "json" else facet_graph_dot(c)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        out.write(text)
    return 0


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--counter", required=True, type=parse_counter, help="round counter, e.g. 2,1,1")
    common.add_argument("--max-cardinality", type=int, default=DEFAULT_MAX_CARDINALITY)
    common.add_argument("--max-processes", type=int, default=DEFAULT_MAX_PROCESSES)
    common.add_argument("--force", action="store_true", help="ignore the size caps")

    parser = argparse.ArgumentParser(
        prog="isc",
        description="Build and analyze immediate snapshot complexes P(r).",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", parents=[common], help="build P(r) and summarize it")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--list", action="store_true", help="print every nonempty simplex")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("count", parents=[common], help="number of facets")
    p.add_argument("--verify", action="store_true", help="compare against brute-force enumeration")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser(
        "check",
        parents=[common],
        help="structural properties",
        description="Properties run in this order: " + ", ".join(PROPERTIES) + ".",
    )
    p.add_argument("--props", default="all", help="comma list of properties, or all")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("decompose", parents=[common], help="canonical decomposition into the parts X_S")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("convert", parents=[common], help="translate a simplex between encodings")
    p.add_argument("--simplex", required=True, help="simplex text or JSON, or @file")
    p.add_argument("--to", choices=["witness", "chromatic", "poset", "execution"], required=True)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("export", parents=[common], help="write the complex as JSON or the facet graph as DOT")
    p.add_argument("--format", choices=["json", "dot"], default="json")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    except UsageError as exc:
        print(f"isc: error: {exc}", file=sys.stderr)
        return 2
    try:
        return args.func(args, out)
    except CapExceeded as exc:
        print(f"isc: {exc}; pass --force to build anyway", file=sys.stderr)
        return 3
    except (UsageError, StructureError) as exc:
        print(f"isc: error: {exc}", file=sys.stderr)
        return 2


run = main

if __name__ == "__main__":
    sys.exit(main())
