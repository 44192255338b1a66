"""Command-line front end.

Subcommands: em, k0, dk-check, slices, knit, check, verify.  All reports go
to stdout as JSON (deterministically ordered); graph artifacts (DOT) and
bulk artifacts go to the --out directory.  Exit codes: 0 success, 1 a check
failed, 2 parse or schema error, 3 truncation too shallow, 4 orbit cap
exceeded, 5 input not a functor.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .abelian import parse_group_spec
from .errors import (
    CapExceeded,
    DeltakError,
    NotAFunctor,
    SchemaError,
    ShapeMismatch,
    TruncationTooShallow,
)
from .k0 import basis_simplices, k0_invariants, k0_presentation, lattices_agree
from .qchain import betti
from .sdiagram import (
    check_membership,
    corner_from_json,
    diagram_betti,
    knit_from_corner,
    sdiagram_from_json,
    sdiagram_to_json,
)
from .simplicial import compare_via, dold_kan_unit_maps, gamma, homotopy_group, na1
from .slices import DEFAULT_ORBIT_CAP, mutation_orbit, orbit_dot
from .verify import run_all

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_SHALLOW = 3
EXIT_CAP = 4
EXIT_NOT_FUNCTOR = 5


def _emit(doc):
    print(json.dumps(doc, indent=2, sort_keys=True))


def _out_dir(args):
    if args.out is None:
        return None
    path = Path(args.out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _default_cap():
    raw = os.environ.get("DELTAK_CAP")
    if raw is None:
        return DEFAULT_ORBIT_CAP
    try:
        return int(raw)
    except ValueError:
        raise SchemaError(f"DELTAK_CAP is not an integer: {raw!r}")


def cmd_em(args):
    try:
        A = parse_group_spec(args.group)
    except DeltakError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if args.L < args.m + 1:
        print(
            f"error: truncation {args.L} certifies no degree >= {args.m}",
            file=sys.stderr,
        )
        return EXIT_SHALLOW
    X = gamma(A, args.m, args.L)
    groups = {}
    for n in range(args.L):
        try:
            pi = homotopy_group(X, n)
        except TruncationTooShallow:
            break
        free, torsion = pi.invariant_factors()
        groups[str(n)] = {"free_rank": free, "torsion": torsion}
    _emit({"group": args.group, "m": args.m, "L": args.L, "pi": groups})
    return EXIT_OK


def cmd_k0(args):
    if args.m < 1 or args.n < 0:
        print("error: need m >= 1 and n >= 0", file=sys.stderr)
        return EXIT_PARSE
    free, torsion = k0_invariants(args.m, args.n)
    doc = {
        "m": args.m,
        "n": args.n,
        "rank": free,
        "torsion": torsion,
        "lattices_agree": lattices_agree(args.m, args.n),
        "generators": [
            list(s.values) for s in k0_presentation(args.m, args.n, "euler").generators
        ],
        "basis": [list(s.values) for s in basis_simplices(args.m, args.n)],
    }
    _emit(doc)
    if args.dump_matrix:
        out = _out_dir(args) or Path(".")
        for flavor in ("euler", "ar"):
            pres = k0_presentation(args.m, args.n, flavor)
            path = out / f"k0_{args.m}_{args.n}_{flavor}.txt"
            with open(path, "w") as fh:
                for row in pres.relations.data:
                    fh.write(" ".join(str(x) for x in row) + "\n")
    return EXIT_OK


def cmd_dk_check(args):
    try:
        A = parse_group_spec(args.group)
    except DeltakError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    N = na1(A, args.L)
    maps = dold_kan_unit_maps(N, A, 1)
    ok = compare_via(gamma(A, 1, args.L), N, maps)
    _emit({"group": args.group, "L": args.L, "array_model_matches_gamma": ok})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_slices(args):
    cap = args.cap if args.cap is not None else _default_cap()
    partial = False
    try:
        graph = mutation_orbit(args.m, args.n, cap)
    except CapExceeded as exc:
        graph = exc.partial
        partial = True
    doc = {
        "m": args.m,
        "n": args.n,
        "nodes": [[list(s.values) for s in S.sorted_members()] for S in graph.nodes],
        "edges": [
            [i, k, list(move.pivot.values), move.direction]
            for i, k, move in graph.edges
        ],
        "complete": graph.complete,
    }
    out = _out_dir(args)
    if out is not None:
        with open(out / f"orbit_{args.m}_{args.n}.dot", "w") as fh:
            fh.write(orbit_dot(graph))
        with open(out / f"orbit_{args.m}_{args.n}.json", "w") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
    print(
        f"orbit of ({args.m},{args.n}): {len(graph.nodes)} nodes, "
        f"{len(graph.edges)} edges" + (" (partial)" if partial else "")
    )
    return EXIT_CAP if partial else EXIT_OK


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read {path}: {exc}")


def cmd_knit(args):
    doc = _load_json(args.input)
    corner = corner_from_json(doc)
    X = knit_from_corner(corner)
    full = sdiagram_to_json(X)
    table = {
        ",".join(map(str, v)): {str(k): d for k, d in sorted(b.items())}
        for v, b in diagram_betti(X).items()
    }
    out = _out_dir(args)
    if out is not None:
        with open(out / "knitted.json", "w") as fh:
            json.dump(full, fh, indent=2, sort_keys=True)
        _emit({"written": str(out / "knitted.json"), "betti": table})
    else:
        _emit({"diagram": full, "betti": table})
    return EXIT_OK


def cmd_check(args):
    doc = _load_json(args.input)
    X = sdiagram_from_json(doc)
    rep = check_membership(X)
    _emit(
        {
            "degenerate_ok": rep.degenerate_ok,
            "degenerate_failures": [list(v) for v in rep.degenerate_failures],
            "euler_failures": [list(v) for v in rep.euler_failures],
            "ar_failures": [list(v) for v in rep.ar_failures],
            "passes": rep.passes,
        }
    )
    return EXIT_OK if rep.passes else EXIT_FAIL


def cmd_verify(args):
    results = run_all(args.profile)
    ok = True
    for r in results:
        status = "pass" if r["passed"] else "FAIL"
        ok = ok and r["passed"]
        print(
            f"criterion {r['criterion']:>2} [{status}] {r['seconds']:7.2f}s  "
            f"{r['name']}: {r['detail']}"
        )
    _emit({"profile": args.profile, "passed": ok})
    return EXIT_OK if ok else EXIT_FAIL


def build_parser():
    p = argparse.ArgumentParser(prog="deltak", description=__doc__)
    p.add_argument("--out", help="directory for artifacts (DOT, JSON dumps)")
    sub = p.add_subparsers(dest="command", required=True)

    em = sub.add_parser("em", help="homotopy groups of the Eilenberg-Mac Lane object")
    em.add_argument("--group", required=True, help='e.g. "Z", "Z/4", "Z+Z/2"')
    em.add_argument("--m", type=int, required=True)
    em.add_argument("--L", type=int, required=True)
    em.set_defaults(fn=cmd_em)

    k0 = sub.add_parser("k0", help="K0 presentation invariants")
    k0.add_argument("--m", type=int, required=True)
    k0.add_argument("--n", type=int, required=True)
    k0.add_argument("--dump-matrix", action="store_true")
    k0.set_defaults(fn=cmd_k0)

    dk = sub.add_parser("dk-check", help="array model vs Dold-Kan comparison")
    dk.add_argument("--group", required=True)
    dk.add_argument("--L", type=int, default=4)
    dk.set_defaults(fn=cmd_dk_check)

    sl = sub.add_parser("slices", help="mutation orbit of the initial slice")
    sl.add_argument("--m", type=int, required=True)
    sl.add_argument("--n", type=int, required=True)
    sl.add_argument("--cap", type=int, default=None)
    sl.set_defaults(fn=cmd_slices)

    kn = sub.add_parser("knit", help="knit a full diagram from corner data JSON")
    kn.add_argument("input")
    kn.set_defaults(fn=cmd_knit)

    ch = sub.add_parser("check", help="membership report for a diagram JSON")
    ch.add_argument("input")
    ch.set_defaults(fn=cmd_check)

    ve = sub.add_parser("verify", help="run the acceptance suite")
    ve.add_argument("--profile", choices=("quick", "full"), default="quick")
    ve.set_defaults(fn=cmd_verify)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad flags, which matches the parse-error code
        raise exc
    try:
        return args.fn(args)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except TruncationTooShallow as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SHALLOW
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except NotAFunctor as exc:
        detail = f" (square {exc.square})" if exc.square else ""
        print(f"error: {exc}{detail}", file=sys.stderr)
        return EXIT_NOT_FUNCTOR
    except ShapeMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DeltakError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
