"""The verification suite: instance-level checks of the classification and
structure results, runnable as a batch with machine-readable output.

Each record checks one concrete fact about one concrete group or pair.
Records are grouped by criterion number and tagged with a category used by
``--filter``.  Facts that would require an external group database are
emitted as explicit "skip" records rather than silently omitted.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .engine import (
    centralizer,
    exponent,
    gamma,
    omega_n,
    commutator_subgroup,
    subgroup_as_group,
)
from .actions import map_order
from .subgroups import (
    all_subgroups,
    brute_force_subgroups,
    brute_force_min_generators,
    min_generators,
)
from .maximality import (
    is_d_maximal,
    check_pair,
    build_group_from_pair,
    strip_pair,
    quotient_pair,
    product_pair,
    structural_report,
)
from .catalog import get_group, get_automorphism, list_catalog

SUITE_VERSION = "1"

__all__ = ["SUITE_VERSION", "CriterionRecord", "ReproReport", "run_suite"]


@dataclass(eq=False)
class CriterionRecord:
    id: str
    description: str
    category: str
    status: str = "pending"     # pass | fail | skip | error
    measured: dict = field(default_factory=dict)
    seconds: float = 0.0


@dataclass(eq=False)
class ReproReport:
    version: str
    records: list

    @property
    def overall_pass(self) -> bool:
        return all(r.status in ("pass", "skip") for r in self.records)


def _pair(ident, q=None, aut=None):
    if aut is None:
        aut = f"scalar-{q}"
    f = get_automorphism(ident, aut)
    return f.source, f


# ---------------------------------------------------------------------------
# individual checks; each returns (ok: bool, measured: dict)

def _chk_dmax(ident, want_d, want_verdict=True):
    def run():
        G, _ = get_group(ident)
        rep = is_d_maximal(G)
        ok = rep.is_d_maximal == want_verdict and rep.d == want_d
        m = {"d": rep.d, "verdict": rep.is_d_maximal}
        if rep.witness is not None:
            m["witness"] = [int(x) for x in rep.witness.elements()]
            m["witness_d"] = rep.witness_d
        return ok, m
    return run


def _chk_pair_pass(ident, q, aut=None, want_d=None):
    def run():
        P, f = _pair(ident, q, aut)
        rep = check_pair(P, f, q)
        ok = rep.verdict and (want_d is None or rep.d == want_d)
        return ok, {"d": rep.d, "conditions": [rep.cond_a, rep.cond_b, rep.cond_c]}
    return run


def _chk_pair_fail_c(ident, q, aut):
    def run():
        P, f = _pair(ident, q, aut)
        rep = check_pair(P, f, q)
        ok = (not rep.verdict) and rep.cond_a and rep.cond_b and not rep.cond_c \
            and rep.witness_c is not None
        m = {"d": rep.d, "conditions": [rep.cond_a, rep.cond_b, rep.cond_c]}
        if rep.witness_c is not None:
            m["witness"] = [int(x) for x in rep.witness_c.elements()]
        return ok, m
    return run


def _chk_built_dmax(ident, q, aut=None, t=1):
    def run():
        P, f = _pair(ident, q, aut)
        d = min_generators(P)
        G = build_group_from_pair(P, f, q, t=t)
        rep = is_d_maximal(G)
        ok = rep.is_d_maximal and rep.d == d + 1
        return ok, {"order": G.n, "d": rep.d, "verdict": rep.is_d_maximal}
    return run


def _chk_roundtrip(ident, q, aut=None):
    def run():
        P, f = _pair(ident, q, aut)
        d = min_generators(P)
        G = build_group_from_pair(P, f, q, t=1)
        rep = is_d_maximal(G)
        P2, beta, q2 = strip_pair(G)
        rep2 = check_pair(P2, beta, q2)
        ok = rep.is_d_maximal and rep.d == d + 1 and q2 == q and rep2.verdict
        return ok, {"built_order": G.n, "built_d": rep.d,
                    "recovered_q": q2, "recovered_verdict": rep2.verdict}
    return run


def _chk_structural(ident, q, aut=None, expect_fired=()):
    def run():
        P, f = _pair(ident, q, aut)
        rep = structural_report(P, f, q)
        fired = {r.ident for r in rep.records if r.status != "vacuous"}
        ok = rep.all_pass and all(e in fired for e in expect_fired)
        return ok, {
            "fired": sorted(fired),
            "failures": [r.ident for r in rep.failures()],
        }
    return run


def _chk_rank3_product():
    def run():
        f1 = get_automorphism("c3", "scalar-2")
        f2 = get_automorphism("sg-81-10", "alpha")
        D, g = product_pair(f1.source, f1, f2.source, f2)
        rep = check_pair(D, g, 2)
        return rep.verdict and rep.d == 3, {"order": D.n, "d": rep.d,
                                            "verdict": rep.verdict}
    return run


def _chk_p5_structure():
    def run():
        P, f = _pair("p5-unique-5", aut="alpha")
        g2, g3 = gamma(P, 2), gamma(P, 3)
        om = omega_n(P, 1)
        g2sub, _ = subgroup_as_group(P, g2)
        cp = centralizer(P, g2)
        cpg, _ = subgroup_as_group(P, cp)
        m = {
            "gamma2_order": g2.order, "gamma2_exponent": exponent(g2sub),
            "gamma3_order": g3.order, "omega1_order": om.order,
            "gamma2_of_omega1_is_gamma2": commutator_subgroup(P, om, om).same(g2),
            "centralizer_order": cp.order, "centralizer_exponent": exponent(cpg),
            "centralizer_d": min_generators(cpg), "q": map_order(f),
        }
        ok = (m["gamma2_order"] == 25 and m["gamma2_exponent"] == 5
              and m["gamma3_order"] == 5 and m["omega1_order"] == 625
              and m["gamma2_of_omega1_is_gamma2"]
              and m["centralizer_order"] == 625
              and m["centralizer_exponent"] == 25
              and m["centralizer_d"] == 3 and m["q"] == 2)
        return ok, m
    return run


def _chk_oracle_lattice():
    def run():
        m = {"checked": [], "counts": {}}
        for e in list_catalog():
            if e.extension_slot or e.expected["order"] > 200:
                continue
            G, _ = get_group(e.id)
            lat = all_subgroups(G)
            oracle = brute_force_subgroups(G)
            if len(lat) != len(oracle):
                return False, {"mismatch": e.id, "lattice": len(lat),
                               "oracle": len(oracle)}
            keys = {s.key() for s in lat.all}
            if any(s.key() not in keys for s in oracle):
                return False, {"mismatch": e.id, "reason": "different subgroups"}
            if min_generators(G) != brute_force_min_generators(G):
                return False, {"mismatch": e.id, "reason": "min_generators"}
            m["checked"].append(e.id)
            m["counts"][e.id] = len(lat)
        ok = m["counts"].get("ea-2-2") == 5 and m["counts"].get("q8") == 6
        return ok, m
    return run


def _chk_quotient_closure():
    def run():
        P, f = _pair("sg-81-10", aut="alpha")
        Q, beta = quotient_pair(P, f, 2, gamma(P, 3))
        rep = check_pair(Q, beta, 2)
        return rep.verdict and rep.d == 2, {"order": Q.n, "d": rep.d,
                                            "verdict": rep.verdict}
    return run


def _chk_product_ranks(id1, aut1, id2, aut2, q, want_d):
    def run():
        f1 = get_automorphism(id1, aut1)
        f2 = get_automorphism(id2, aut2)
        D, g = product_pair(f1.source, f1, f2.source, f2)
        rep = check_pair(D, g, q)
        return rep.verdict and rep.d == want_d, {"order": D.n, "d": rep.d,
                                                 "verdict": rep.verdict}
    return run


def _criteria():
    out = []

    def add(cid, desc, cat, fn):
        out.append((CriterionRecord(id=cid, description=desc, category=cat), fn))

    for p in (2, 3, 5, 7):
        add(f"1{'abcd'[(2, 3, 5, 7).index(p)]}",
            f"C{p} is 1-maximal", "rank1", _chk_dmax(f"c{p}", 1))
    add("1e", "C4 is not 1-maximal", "rank1", _chk_dmax("c4", 1, want_verdict=False))
    add("1f", "C9 is not 1-maximal", "rank1", _chk_dmax("c9", 1, want_verdict=False))

    add("2a", "C3 x C3 is 2-maximal", "2-maximal", _chk_dmax("ea-3-2", 2))
    add("2b", "C5 x C5 is 2-maximal", "2-maximal", _chk_dmax("ea-5-2", 2))
    add("2c", "Q8 is 2-maximal", "2-maximal", _chk_dmax("q8", 2))
    add("2d", "C7 : C3 is 2-maximal", "2-maximal", _chk_dmax("c7-sd-c3", 2))

    for tag, (p, q) in zip("abc", [(3, 2), (5, 2), (7, 3)]):
        add(f"3{tag}", f"(C{p} x C{p}, scalar of order {q}) is a rank-2 pair",
            "rank2", _chk_pair_pass(f"ea-{p}-2", q, want_d=2))
    for tag, (p, q) in zip("def", [(3, 2), (5, 2), (7, 3)]):
        add(f"3{tag}", f"(Heisenberg {p}^3, scalar pair of order {q}) is a rank-2 pair",
            "rank2", _chk_pair_pass(f"heis-{p}", q, want_d=2))
    add("3g", "(order-81 maximal-class group, alpha) is a rank-2 pair",
        "rank2", _chk_pair_pass("sg-81-10", 2, aut="alpha", want_d=2))

    add("4a", "(C9 x C3, inversion) fails condition (c) with witness",
        "rank2", _chk_pair_fail_c("c9xc3", 2, "inv"))
    add("4b", "(C9, inversion) fails condition (c) with witness",
        "rank2", _chk_pair_fail_c("c9", 2, "inv"))

    add("5a", "C2^3 is 3-maximal", "3-maximal", _chk_dmax("ea-2-3", 3))
    add("5b", "C2 x Q8 is 3-maximal", "3-maximal", _chk_dmax("c2xq8", 3))
    add("5c", "C4 * Q8 is 3-maximal", "3-maximal", _chk_dmax("c4oq8", 3))
    add("5d", "the order-32 group is 3-maximal", "3-maximal", _chk_dmax("g32", 3))
    add("5e", "C3^3 is 3-maximal", "3-maximal", _chk_dmax("ea-3-3", 3))
    add("5f", "C5^3 is 3-maximal", "3-maximal", _chk_dmax("ea-5-3", 3))
    add("5g", "the order-3^4 mixed-exponent group is 3-maximal",
        "3-maximal", _chk_dmax("p4-3", 3))
    add("5h", "the order-5^4 mixed-exponent group is 3-maximal",
        "3-maximal", _chk_dmax("p4-5", 3))
    add("5i", "(C3 x C3) : C2 is 3-maximal", "3-maximal",
        _chk_built_dmax("ea-3-2", 2))
    add("5j", "(Heisenberg 27) : C2 is 3-maximal", "3-maximal",
        _chk_built_dmax("heis-3", 2))
    add("5k", "(Heisenberg 343) : C3 is 3-maximal", "3-maximal",
        _chk_built_dmax("heis-7", 3))
    add("5l", "the order-162 group is 3-maximal", "3-maximal",
        _chk_dmax("sg-162-22", 3))
    add("5m", "(C3 x C3) : C4 (t = 2) is 3-maximal", "3-maximal",
        _chk_built_dmax("ea-3-2", 2, t=2))

    add("6a", "C3 x (order-81 group) with componentwise action is a rank-3 pair",
        "rank3", _chk_rank3_product())
    add("6b", "the order-3^5 group with its order-2 automorphism is a rank-3 pair",
        "rank3", _chk_pair_pass("p5-unique-3", 2, aut="alpha", want_d=3))
    add("6c", "the order-5^5 group with its order-2 automorphism is a rank-3 pair",
        "rank3", _chk_pair_pass("p5-unique-5", 2, aut="alpha", want_d=3))
    add("6d", "series/omega/centralizer structure of the order-5^5 pair",
        "rank3", _chk_p5_structure())

    roundtrips = [
        ("7a", "ea-3-2", 2, None), ("7b", "ea-5-2", 2, None),
        ("7c", "ea-7-2", 3, None), ("7d", "heis-3", 2, None),
        ("7e", "heis-5", 2, None), ("7f", "sg-81-10", 2, "alpha"),
        ("7g", "p5-unique-3", 2, "alpha"),
    ]
    for cid, ident, q, aut in roundtrips:
        add(cid, f"extension of {ident} by order {q} round-trips",
            "roundtrip", _chk_roundtrip(ident, q, aut))

    structs = [
        ("8a", "ea-3-2", 2, None, ()),
        ("8b", "ea-5-2", 2, None, ()),
        ("8c", "ea-7-2", 3, None, ()),
        ("8d", "heis-3", 2, None, ()),
        ("8e", "heis-5", 2, None, ()),
        ("8f", "heis-7", 2, None, ()),
        ("8g", "heis-7", 3, None, ("A7",)),
        ("8h", "sg-81-10", 2, "alpha", ()),
        ("8i", "p5-unique-3", 2, "alpha", ()),
        ("8j", "p5-unique-5", 2, "alpha", ("A9",)),
    ]
    for cid, ident, q, aut, fired in structs:
        add(cid, f"structural assertions hold for the ({ident}, q={q}) pair",
            "structural", _chk_structural(ident, q, aut, expect_fired=fired))

    add("9a", "subgroup lattice and rank agree with independent oracles "
        "on all catalog groups of order <= 200",
        "oracle", _chk_oracle_lattice())

    add("10a", "quotient of the order-81 pair by gamma3 is again a rank-2 pair",
        "closure", _chk_quotient_closure())
    add("10b", "product of a rank-2 and a rank-1 pair is a rank-3 pair",
        "closure", _chk_product_ranks("heis-3", "scalar-2", "c3", "scalar-2", 2, 3))
    add("10c", "product of two rank-1 pairs is a rank-2 pair",
        "closure", _chk_product_ranks("c3", "scalar-2", "c3", "scalar-2", 2, 2))

    skips = [
        ("skip-a", "exhaustiveness over all groups of order 2^8"),
        ("skip-b", "exhaustiveness over all groups of order 3^4 "
                   "(three maximal-class companions lack presentations)"),
        ("skip-c", "exhaustiveness over all groups of order 3^6 and 3^7"),
        ("skip-d", "claims about the order-243 and order-729 named groups "
                   "(extension slots without presentations)"),
        ("skip-e", "claims about the four named order-1458 groups "
                   "(extension slots without presentations)"),
    ]
    for cid, desc in skips:
        rec = CriterionRecord(id=cid, description=desc, category="skip",
                              status="skip")
        out.append((rec, None))
    return out


def run_suite(filters=None, workers: int = 1) -> ReproReport:
    """Run the whole suite, or the categories/id-prefixes in ``filters``."""
    selected = []
    for rec, fn in _criteria():
        if filters and not any(
            rec.category == f or rec.id.startswith(f) for f in filters
        ):
            continue
        selected.append((rec, fn))

    def execute(item):
        rec, fn = item
        if fn is None:
            return rec
        t0 = time.perf_counter()
        try:
            ok, measured = fn()
            rec.status = "pass" if ok else "fail"
            rec.measured = measured
        except Exception as exc:   # noqa: BLE001 - reported, not swallowed
            rec.status = "error"
            rec.measured = {"error": f"{type(exc).__name__}: {exc}"}
        rec.seconds = time.perf_counter() - t0
        return rec

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(execute, selected))
    else:
        records = [execute(item) for item in selected]
    return ReproReport(version=SUITE_VERSION, records=records)
