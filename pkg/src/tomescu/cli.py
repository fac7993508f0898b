"""Command-line front end.

Exit codes: 0 the checked statement holds, 1 a counterexample or failed
check, 2 usage or input error, 3 a resource cap was hit.
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys

from . import bounds, claims
from .colorings import OracleCapError, chromatic_polynomial, count_colorings, count_colorings_bruteforce
from .decomposition import decompose, p_series
from .families import (
    FamilyError,
    make_clique,
    make_complete_bipartite,
    make_cycle,
    make_G1,
    make_G_nk,
    make_path,
)
from .graph import CapacityError, Graph, GraphError
from .graph6 import GraphFormatError, parse, to_graph6
from .search import SearchError, SearchTask, run_task

EXIT_HOLDS, EXIT_COUNTEREXAMPLE, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3

_SHORTHAND = [
    (re.compile(r"^K(\d+)$"), lambda m: make_clique(int(m[1]))),
    (re.compile(r"^C(\d+)$"), lambda m: make_cycle(int(m[1]))),
    (re.compile(r"^P(\d+)$"), lambda m: make_path(int(m[1]))),
    (re.compile(r"^K(\d+),(\d+)$"), lambda m: make_complete_bipartite(int(m[1]), int(m[2]))),
    (re.compile(r"^G(\d+),(\d+)$"), lambda m: make_G_nk(int(m[1]), int(m[2]))),
    (re.compile(r"^G1:(\d+),(\d+),(\d+)$"), lambda m: make_G1(int(m[1]), int(m[2]), int(m[3]))),
]


def parse_graph(text: str) -> Graph:
    """Family shorthand (K4, C5, P3, K2,3, G6,4, G1:10,4,3) or graph6/sparse6.

    Prefix ``g6:`` to force graph6 when a string also reads as shorthand.
    """
    text = text.strip()
    if text.startswith("g6:"):
        return parse(text[3:])
    for rx, build in _SHORTHAND:
        m = rx.match(text)
        if m:
            return build(m)
    return parse(text)


def _emit(obj, out_path=None):
    text = json.dumps(obj, indent=2)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    print(text)


def _params(args, names):
    return {n: getattr(args, n) for n in names if getattr(args, n, None) is not None}


# -- commands ----------------------------------------------------------------


def cmd_eval(args):
    g = parse_graph(args.graph)
    val = count_colorings(g, args.k)
    if args.json:
        d = {"graph6": to_graph6(g), "k": str(args.k), "P": str(val)}
        if args.poly:
            d["coefficients"] = [str(c) for c in chromatic_polynomial(g).coeffs]
        if args.oracle:
            d["oracle"] = str(count_colorings_bruteforce(g, args.k))
        _emit(d, args.out)
    else:
        print(val)
        if args.poly:
            print(chromatic_polynomial(g))
        if args.oracle:
            print(count_colorings_bruteforce(g, args.k))
    return EXIT_HOLDS


def cmd_construct(args):
    p = _params(args, ["n", "k", "delta", "ell", "type"])
    p["check_flow"] = args.validate
    g = claims.build_family(args.family, p)
    if args.validate:
        from .families import validate_nkd

        k = p.get("k") or 4
        validate_nkd(g, k, g.min_degree(), args.family)
    print(to_graph6(g))
    return EXIT_HOLDS


def cmd_decompose(args):
    g = parse_graph(args.graph)
    d = decompose(g, args.k, args.delta)
    if d is None:
        print("no (X, Y, Z) decomposition", file=sys.stderr)
        return EXIT_COUNTEREXAMPLE
    ps = p_series(g, d, args.k)
    _emit(
        {
            "X": [str(v) for v in d.x_set],
            "Y": [str(v) for v in d.y_set],
            "Z": [str(v) for v in d.z_set],
            "type": None if d.type_tag is None else str(d.type_tag),
            "signature": [[str(y) for y in s] for s in d.signature.as_lists()] if d.signature else None,
            "P_terms": [str(t) for t in ps.terms],
            "total": str(ps.total()),
        },
        args.out,
    )
    return EXIT_HOLDS


_BOUNDS = {
    "tomescu": (bounds.tomescu_bound, ["n", "k"]),
    "ear-clique": (bounds.P_n_formula, ["n", "k"]),
    "cycle": (bounds.two_connected_bound, ["n", "k"]),
    "theta": (bounds.theta_bound, ["n", "k"]),
    "three-chromatic": (bounds.three_chromatic_bound, ["n", "k"]),
    "critical": (bounds.critical_Ck_bound, ["n", "k"]),
    "four-critical": (bounds.four_critical_bound, ["n"]),
    "second-order": (bounds.second_order_term, ["type", "n", "k", "delta"]),
    "lconn-second": (bounds.lconn_second_order_constant, ["k", "ell"]),
    "lconn-blocks-third": (bounds.lconn_third_order_constant_d, ["k"]),
}


def cmd_bounds(args):
    names = list(_BOUNDS) if args.name == "all" else [args.name]
    if args.name == "c-max":
        val, wit = bounds.c_max(args.r, args.s, args.t, jobs=args.jobs)
        _emit({"name": "c-max", "value": str(val), "witness": [[str(e) for e in x] for x in wit]}, args.out)
        return EXIT_HOLDS
    results = []
    for name in names:
        fn, keys = _BOUNDS[name]
        vals = [getattr(args, a) for a in keys]
        if any(v is None for v in vals):
            if args.name == "all":
                continue
            raise GraphError(f"bound {name} needs --{' --'.join(keys)}")
        try:
            res = bounds.BoundResult(name, dict(zip(keys, vals)), fn(*vals))
        except bounds.BoundRangeError as e:
            if args.name == "all":
                continue
            raise e
        results.append(res.as_json())
    _emit(results, args.out)
    return EXIT_HOLDS


def cmd_search(args):
    if args.claim:
        r = claims.run_claim(args.claim, dict(_params(args, ["n", "k", "ell", "delta"]), jobs=args.jobs))
        _emit(r.to_json(), args.out)
        return EXIT_HOLDS if r.verdict == "holds" else EXIT_COUNTEREXAMPLE
    task = SearchTask(
        n=args.n,
        k=args.k if args.k is not None else 4,
        filters=list(args.filter or []),
        objective=args.objective,
        mode=args.mode,
        ell=args.ell if args.ell is not None else 2,
        delta=args.delta or 0,
        allow_large=args.allow_large,
        keep_survivors=not args.no_survivors,
    )
    ckpt = args.resume or args.checkpoint
    out = run_task(task, jobs=args.jobs, checkpoint=ckpt, resume=bool(args.resume))
    _emit(out.to_json(), args.out)
    return EXIT_HOLDS if out.verdict == "holds" else EXIT_COUNTEREXAMPLE


def cmd_verify(args):
    if args.claim not in claims.REGISTRY:
        print(f"unknown claim {args.claim!r}; registered claims:", file=sys.stderr)
        for c in claims.CLAIMS:
            print(f"  {c.claim_id:24s} {c.statement}", file=sys.stderr)
        return EXIT_USAGE
    p = _params(args, ["n", "k", "delta", "ell", "type", "family"])
    p["jobs"] = args.jobs
    r = claims.run_claim(args.claim, p)
    _emit(r.to_json(), args.out)
    return EXIT_HOLDS if r.verdict == "holds" else EXIT_COUNTEREXAMPLE


def cmd_report(args):
    ids = args.claims.split(",") if args.claims else [c.claim_id for c in claims.CLAIMS]
    reports = [claims.run_claim(i).to_json() for i in ids]
    _emit({"reports": reports}, args.out)
    return EXIT_HOLDS if all(r["verdict"] == "holds" for r in reports) else EXIT_COUNTEREXAMPLE


# -- parser ------------------------------------------------------------------


def build_parser():
    ap = argparse.ArgumentParser(prog="tomescu", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p, *, need_k=False):
        p.add_argument("--n", type=int)
        p.add_argument("--k", type=int, required=need_k)
        p.add_argument("--delta", type=int)
        p.add_argument("--ell", type=int)
        p.add_argument("--type", type=int)
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--out", help="also write the JSON to this path")

    p = sub.add_parser("eval", help="count k-colorings of a graph")
    p.add_argument("graph", help="graph6/sparse6 or shorthand like K4, C5, G6,4")
    p.add_argument("k", type=int)
    p.add_argument("--poly", action="store_true", help="print the chromatic polynomial")
    p.add_argument("--oracle", action="store_true", help="also run the brute-force counter")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("construct", help="print a family member as graph6")
    p.add_argument("family", help="gnk | g1 | type | gstar-mindeg | gstar-lconn | k4-lconn")
    common(p)
    p.add_argument("--validate", action="store_true")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("decompose", help="(X, Y, Z) decomposition and P^(i) series")
    p.add_argument("graph")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--delta", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("bounds", help="evaluate a closed-form bound")
    p.add_argument("name", choices=sorted(_BOUNDS) + ["all", "c-max"])
    common(p)
    p.add_argument("--r", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--t", type=int)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("search", help="exhaustive search over small graphs")
    common(p)
    p.add_argument("--filter", action="append", help="repeatable; see search.FILTERS")
    p.add_argument("--objective", default="count")
    p.add_argument("--mode", default="verify-all")
    p.add_argument("--claim", help="run a registered claim instead of a raw task")
    p.add_argument("--checkpoint", help="write progress to this file")
    p.add_argument("--resume", help="resume from (and keep writing) this checkpoint")
    p.add_argument("--allow-large", action="store_true", help="permit n = 11")
    p.add_argument("--no-survivors", action="store_true", help="omit the survivor list")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify", help="run one registered claim")
    p.add_argument("claim")
    common(p)
    p.add_argument("--family")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("report", help="run several claims into one JSON report")
    p.add_argument("--claims", help="comma-separated ids (default: all)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_report)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    if args.cmd == "search" and not args.claim and args.n is None:
        ap.error("search needs --n (or --claim)")
    try:
        return args.func(args)
    except GraphFormatError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (CapacityError, OracleCapError, bounds.BudgetError) as e:
        print(f"resource cap: {e}", file=sys.stderr)
        return EXIT_CAP
    except (FamilyError, SearchError, GraphError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
