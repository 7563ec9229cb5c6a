"""Command-line front end.

Subcommands: catalog, info, dmax, pair, search-aut, semidirect, subgroups,
iso, reproduce.  Exit code 0 on pass/true, 1 on fail/false, 2 on error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .engine import (
    DEFAULT_ELEMENT_CAP,
    exponent,
    is_isomorphic,
    is_regular,
    lower_central_series,
)
from .actions import search_automorphisms, map_order
from .subgroups import all_subgroups, min_generators
from .maximality import is_d_maximal, check_pair, build_group_from_pair, \
    structural_report
from .catalog import list_catalog, get_automorphism, CatalogError
from .serialize import resolve_group, save_group, parse_aut_literal
from .reproduce import run_suite

PASS, FAIL, ERROR = 0, 1, 2


def _emit(args, doc: dict, text_lines):
    if args.json:
        print(json.dumps(doc, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _resolve_aut(G, ref: str):
    if ref.startswith("catalog:"):
        return get_automorphism(G.label, ref.split(":", 1)[1])
    return parse_aut_literal(G, ref)


def cmd_catalog(args):
    entries = list_catalog()
    doc = []
    lines = []
    for e in entries:
        rec = {"id": e.id, "description": e.description,
               "extension_slot": e.extension_slot}
        if e.expected:
            rec["order"] = e.expected["order"]
        doc.append(rec)
        tag = " [extension slot]" if e.extension_slot else ""
        order = e.expected["order"] if e.expected else "?"
        lines.append(f"{e.id:16s} order {order:>6}  {e.description}{tag}")
    _emit(args, {"schema": "maxpair-catalog-v1", "entries": doc}, lines)
    return PASS


def cmd_info(args):
    G = resolve_group(args.group, p=args.p)
    series = lower_central_series(G)
    doc = {
        "label": G.label,
        "order": G.n,
        "d": min_generators(G),
        "exponent": exponent(G),
        "nilpotency_class": series.nilpotency_class,
        "regular": is_regular(G)[0] if G.p_group_prime() else None,
    }
    lines = [f"{k}: {v}" for k, v in doc.items()]
    if args.series:
        doc["lower_central_orders"] = series.orders()
        lines.append(f"lower_central_orders: {series.orders()}")
    _emit(args, doc, lines)
    return PASS


def cmd_dmax(args):
    G = resolve_group(args.group, p=args.p)
    rep = is_d_maximal(G, cap=args.cap)
    doc = {
        "schema": "maxpair-dmax-v1",
        "label": G.label,
        "d": rep.d,
        "verdict": rep.is_d_maximal,
        "witness": None if rep.witness is None
        else [int(x) for x in rep.witness.elements()],
        "witness_d": rep.witness_d,
        "timing": {"seconds": rep.seconds},
    }
    lines = [f"{G.label}: d = {rep.d}, "
             f"{'is' if rep.is_d_maximal else 'is NOT'} d-maximal"]
    if rep.witness is not None:
        lines.append(f"witness: subgroup of order {rep.witness.order} "
                     f"with d = {rep.witness_d}")
    _emit(args, doc, lines)
    return PASS if rep.is_d_maximal else FAIL


def cmd_pair(args):
    G = resolve_group(args.group, p=args.p)
    alpha = _resolve_aut(G, args.aut)
    rep = check_pair(G, alpha, args.q, cap=args.cap)
    doc = {
        "schema": "maxpair-pair-v1",
        "label": G.label,
        "p": rep.p,
        "q": rep.q,
        "d": rep.d,
        "conditions": {"a": rep.cond_a, "b": rep.cond_b, "c": rep.cond_c},
        "verdict": rep.verdict,
        "character": None if rep.character is None else {
            "modulus": rep.character.modulus,
            "value": rep.character.value,
            "order": rep.character.order,
        },
        "witnesses": {
            "a": None if rep.witness_a is None
            else [int(x) for x in rep.witness_a.elements()],
            "c": None if rep.witness_c is None
            else [int(x) for x in rep.witness_c.elements()],
        },
        "timing": {"seconds": rep.seconds},
    }
    lines = [
        f"{G.label}: (p, q) = ({rep.p}, {rep.q}), rank {rep.d}",
        f"conditions: a={rep.cond_a} b={rep.cond_b} c={rep.cond_c}",
        f"verdict: {'pair' if rep.verdict else 'NOT a pair'}",
    ]
    if args.structural:
        srep = structural_report(G, alpha, args.q)
        doc["assertions"] = [
            {"id": r.ident, "status": r.status, "detail": r.detail}
            for r in srep.records
        ]
        for r in srep.records:
            lines.append(f"  {r.ident:4s} {r.status:8s} {r.detail}")
        lines.append(f"structural: {'pass' if srep.all_pass else 'FAIL'}")
        if not srep.all_pass:
            _emit(args, doc, lines)
            return FAIL
    _emit(args, doc, lines)
    return PASS if rep.verdict else FAIL


def cmd_search_aut(args):
    G = resolve_group(args.group, p=args.p)
    found = search_automorphisms(G, args.order, args.scalar, limit=args.limit)
    doc = {
        "schema": "maxpair-autsearch-v1",
        "label": G.label,
        "order": args.order,
        "scalar": args.scalar,
        "count": len(found),
        "matches": [[int(f.table[g]) for g in G.gens] for f in found],
    }
    lines = [f"{len(found)} automorphism(s) of order {args.order} acting as "
             f"scalar {args.scalar} on the Frattini quotient"]
    for f in found:
        lines.append("  gens -> " + " ".join(str(int(f.table[g])) for g in G.gens))
    _emit(args, doc, lines)
    return PASS if found else FAIL


def cmd_semidirect(args):
    G = resolve_group(args.group, p=args.p)
    alpha = _resolve_aut(G, args.aut)
    q = map_order(alpha)
    qt = args.qt
    t = 0
    m = qt
    while m % q == 0 and m > 1:
        m //= q
        t += 1
    if m != 1 or t < 1:
        print(f"error: --qt {qt} is not a power of the action order {q}",
              file=sys.stderr)
        return ERROR
    S = build_group_from_pair(G, alpha, q, t=t, cap=args.cap)
    save_group(S, args.out)
    _emit(args, {"schema": "maxpair-semidirect-v1", "label": S.label,
                 "order": S.n, "out": args.out},
          [f"wrote order-{S.n} group to {args.out}"])
    return PASS


def cmd_subgroups(args):
    G = resolve_group(args.group, p=args.p)
    lat = all_subgroups(G, cap=args.cap)
    counts = {str(k): v for k, v in lat.order_counts().items()}
    doc = {"schema": "maxpair-subgroups-v1", "label": G.label,
           "total": len(lat), "by_order": counts}
    lines = [f"{G.label}: {len(lat)} subgroups"]
    lines += [f"  order {k:>6}: {v}" for k, v in counts.items()]
    if args.full:
        doc["subgroups"] = [[int(x) for x in s.elements()] for s in lat.all]
    _emit(args, doc, lines)
    return PASS


def cmd_iso(args):
    G = resolve_group(args.group)
    H = resolve_group(args.other)
    ok, _ = is_isomorphic(G, H, cap=args.cap)
    _emit(args, {"schema": "maxpair-iso-v1", "left": G.label, "right": H.label,
                 "isomorphic": ok},
          [f"{G.label} and {H.label} are "
           f"{'isomorphic' if ok else 'NOT isomorphic'}"])
    return PASS if ok else FAIL


def cmd_reproduce(args):
    rep = run_suite(filters=args.filter or None, workers=args.workers)
    records = [
        {"id": r.id, "description": r.description, "category": r.category,
         "status": r.status, "measured": r.measured}
        for r in rep.records
    ]
    doc = {
        "schema": "maxpair-repro-v1",
        "version": rep.version,
        "overall_pass": rep.overall_pass,
        "records": records,
        "timing": {r.id: r.seconds for r in rep.records},
    }
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(doc, fh, sort_keys=True, indent=2)
    lines = [f"{r.id:8s} {r.status:5s} {r.seconds:7.1f}s  {r.description}"
             for r in rep.records]
    lines.append(f"overall: {'PASS' if rep.overall_pass else 'FAIL'} "
                 f"({len(rep.records)} records)")
    _emit(args, doc, lines)
    return PASS if rep.overall_pass else FAIL


def _build_parser():
    top = argparse.ArgumentParser(prog="maxpair")
    top.add_argument("--json", action="store_true",
                     help="emit machine-readable JSON on stdout")
    top.add_argument("--cap", type=int, default=DEFAULT_ELEMENT_CAP,
                     help="element-count cap for constructed groups")
    top.add_argument("--workers", type=int, default=1,
                     help="worker threads for the reproduce suite")
    sub = top.add_subparsers(dest="command", required=True)

    def group_cmd(name, fn, **kw):
        p = sub.add_parser(name, **kw)
        p.add_argument("group", help="catalog id or presentation/JSON file")
        p.add_argument("--p", type=int, default=None,
                       help="prime parameter for catalog families")
        p.set_defaults(fn=fn)
        return p

    p = sub.add_parser("catalog", help="list built-in groups")
    p.set_defaults(fn=cmd_catalog)

    p = group_cmd("info", cmd_info, help="order, rank, exponent, class")
    p.add_argument("--series", action="store_true",
                   help="include lower central series orders")

    group_cmd("dmax", cmd_dmax, help="test d-maximality")

    p = group_cmd("pair", cmd_pair, help="test the pair conditions")
    p.add_argument("--aut", required=True,
                   help='"catalog:<name>" or literal "g1->word, ..."')
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--structural", action="store_true",
                   help="also run the structural assertion suite")

    p = group_cmd("search-aut", cmd_search_aut,
                  help="find automorphisms with a given Frattini scalar")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--scalar", type=int, required=True)
    p.add_argument("--limit", type=int, default=None)

    p = group_cmd("semidirect", cmd_semidirect,
                  help="extend by a cyclic group acting as an automorphism")
    p.add_argument("--aut", required=True)
    p.add_argument("--qt", type=int, required=True,
                   help="order q^t of the extending cyclic group")
    p.add_argument("--out", required=True)

    p = group_cmd("subgroups", cmd_subgroups, help="subgroup lattice summary")
    p.add_argument("--full", action="store_true",
                   help="include every subgroup as an element list (JSON)")

    p = group_cmd("iso", cmd_iso, help="isomorphism test")
    p.add_argument("other", help="second group reference")

    p = sub.add_parser("reproduce", help="run the verification suite")
    p.add_argument("--filter", action="append", default=[],
                   help="category name or record-id prefix (repeatable)")
    p.add_argument("--out", default=None, help="write the JSON report here")
    p.set_defaults(fn=cmd_reproduce)
    return top


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (CatalogError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
