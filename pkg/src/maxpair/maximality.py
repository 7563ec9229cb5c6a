"""The two central predicates (d-maximality and maximal (p,q)-pair
conditions), pair constructions, and the structural assertion suite."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from ._kernels import power_table
from .engine import (
    DEFAULT_ELEMENT_CAP,
    ConcreteGroup,
    SubgroupSet,
    agemo_n,
    center,
    closure,
    commutator_subgroup,
    direct_product,
    exponent,
    frattini_p,
    frattini_subgroup,
    gamma,
    is_regular,
    lower_central_series,
    normal_in,
    quotient_group,
    semidirect_product,
    subgroup_as_group,
    whole_group,
)
from .actions import (
    CharacterValue,
    GroupMap,
    acts_through_character,
    frattini_scalar,
    hom_from_images,
    map_order,
)
from .subgroups import (
    _intlog,
    all_subgroups,
    min_generators,
    subgroup_min_generators,
)

# Above this order for the would-be semidirect product, the A11 round-trip
# assertion is recorded as vacuous (the full lattice of the built group
# would dominate the runtime budget).
A11_ORDER_LIMIT = 2000

__all__ = [
    "MaximalityReport",
    "PairCheckReport",
    "StructuralReport",
    "AssertionRecord",
    "is_d_maximal",
    "check_pair",
    "build_group_from_pair",
    "strip_pair",
    "quotient_pair",
    "product_pair",
    "structural_report",
]


@dataclass(eq=False)
class MaximalityReport:
    label: str
    d: int
    is_d_maximal: bool
    witness: SubgroupSet = None
    witness_d: int = None
    seconds: float = 0.0


@dataclass(eq=False)
class PairCheckReport:
    p: int
    q: int
    d: int
    cond_a: bool
    cond_b: bool
    cond_c: bool
    character: CharacterValue = None
    witness_a: SubgroupSet = None
    witness_c: SubgroupSet = None
    seconds: float = 0.0

    @property
    def verdict(self) -> bool:
        return self.cond_a and self.cond_b and self.cond_c


@dataclass(eq=False)
class AssertionRecord:
    ident: str
    status: str            # "pass" | "fail" | "vacuous"
    detail: str = ""


@dataclass(eq=False)
class StructuralReport:
    label: str
    records: list = field(default_factory=list)

    def add(self, ident, status, detail=""):
        self.records.append(AssertionRecord(ident, status, detail))

    @property
    def all_pass(self) -> bool:
        return all(r.status != "fail" for r in self.records)

    def fired(self):
        return [r.ident for r in self.records if r.status == "pass"]

    def failures(self):
        return [r for r in self.records if r.status == "fail"]


def is_d_maximal(G: ConcreteGroup, cap: int = DEFAULT_ELEMENT_CAP) -> MaximalityReport:
    """d(G) together with a full-lattice scan for a proper subgroup that
    needs as many generators."""
    t0 = time.perf_counter()
    d = min_generators(G)
    lat = all_subgroups(G, cap=cap)
    for H in lat.all:
        if H.order == G.n:
            continue
        dh = subgroup_min_generators(G, H)
        if dh >= d:
            return MaximalityReport(G.label, d, False, witness=H, witness_d=dh,
                                    seconds=time.perf_counter() - t0)
    return MaximalityReport(G.label, d, True, seconds=time.perf_counter() - t0)


def _alpha_invariant(alpha: GroupMap, H: SubgroupSet) -> bool:
    return bool(H.members[alpha.table[H.elements()]].all())


def _frattini_of_subgroup(G, H):
    from .subgroups import _frattini_p_of_subgroup, _is_prime_power

    p = _is_prime_power(H.order)
    if p is None:
        raise ValueError("expected a p-subgroup")
    return SubgroupSet(G, _frattini_p_of_subgroup(G, H, p))


def check_pair(P: ConcreteGroup, alpha: GroupMap, q: int,
               cap: int = DEFAULT_ELEMENT_CAP) -> PairCheckReport:
    """Evaluate the three maximal-pair conditions for (P, alpha)."""
    t0 = time.perf_counter()
    p = P.p_group_prime()
    if p is None or P.n == 1:
        raise ValueError("check_pair requires a nontrivial p-group")
    if not alpha.is_automorphism():
        raise ValueError("alpha is not an automorphism of P")
    if map_order(alpha) != q:
        raise ValueError(f"alpha has order {map_order(alpha)}, expected {q}")
    if (p - 1) % q != 0:
        raise ValueError(f"q = {q} does not divide p - 1 = {p - 1}")
    d = min_generators(P)
    lat = all_subgroups(P, cap=cap)

    cond_a, witness_a = True, None
    equal_d = []
    for H in lat.all:
        if H.order == P.n:
            continue
        dh = subgroup_min_generators(P, H)
        if dh > d:
            cond_a, witness_a = False, H
            break
        if dh == d:
            equal_d.append(H)

    chi = frattini_scalar(alpha, P)
    cond_b = chi is not None and chi.value != 1

    cond_c, witness_c = True, None
    if cond_a:
        for H in equal_d:
            if not _alpha_invariant(alpha, H):
                continue
            phi = _frattini_of_subgroup(P, H)
            k = acts_through_character(alpha, H, phi)
            if k is not None and k.value != 1:
                cond_c, witness_c = False, H
                break

    return PairCheckReport(
        p=p, q=q, d=d, cond_a=cond_a, cond_b=cond_b, cond_c=cond_c,
        character=chi, witness_a=witness_a, witness_c=witness_c,
        seconds=time.perf_counter() - t0,
    )


def build_group_from_pair(P: ConcreteGroup, alpha: GroupMap, q: int, t: int = 1,
                          cap: int = DEFAULT_ELEMENT_CAP) -> ConcreteGroup:
    """P extended by a cyclic group of order q^t acting as alpha; the q-th
    power of the extending generator acts trivially."""
    if map_order(alpha) != q:
        raise ValueError("alpha must have order exactly q")
    return semidirect_product(P, alpha, q**t, cap=cap)


def strip_pair(G: ConcreteGroup):
    """Recover (P, alpha, q) from a group built like build_group_from_pair:
    the normal Sylow p-subgroup and the conjugation action of a generator
    of a complement."""
    n = G.n
    factors = {}
    m = n
    d = 2
    while d * d <= m:
        while m % d == 0:
            factors[d] = factors.get(d, 0) + 1
            m //= d
        d += 1
    if m > 1:
        factors[m] = factors.get(m, 0) + 1
    if len(factors) != 2:
        raise ValueError(f"|G| = {n} is not of the form p^n q^t")
    orders = G.element_orders()
    # the prime whose Sylow subgroup is normal: its p-elements number p^n
    for (p, np_), (q, tq) in (
        (a, b) for a in factors.items() for b in factors.items() if a != b
    ):
        pn = p**np_
        pelems = np.flatnonzero(pn % orders == 0)
        if pelems.size == pn:
            break
    else:
        raise ValueError("no normal Sylow subgroup found")
    members = np.zeros(n, dtype=np.bool_)
    members[pelems] = True
    Psub = SubgroupSet(G, members)
    K, elems = subgroup_as_group(G, Psub)
    # extending generator: element of order q^tq generating a complement
    qt = q**tq
    ys = np.flatnonzero(orders == qt)
    if ys.size == 0:
        raise ValueError("no cyclic complement generator found")
    y = int(ys[0])
    idx_of = np.full(n, -1, dtype=np.int32)
    idx_of[elems] = np.arange(elems.size, dtype=np.int32)
    conj = G.mul[G.mul[G.inv[y], elems], y]
    table = idx_of[conj]
    alpha = GroupMap(source=K, target=K, table=table)
    if alpha.respects_mul() is not None or not alpha.is_bijective():
        raise ValueError("conjugation did not restrict to an automorphism")
    return K, alpha, q


def quotient_pair(P: ConcreteGroup, alpha: GroupMap, q: int, N: SubgroupSet):
    """Quotient of a pair by an alpha-invariant normal subgroup inside the
    Frattini subgroup; returns (P/N, induced alpha)."""
    if not _alpha_invariant(alpha, N):
        raise ValueError("N is not alpha-invariant")
    if not frattini_p(P).contains(N):
        raise ValueError("N is not contained in Phi(P)")
    Q, proj = quotient_group(P, N)
    # induced map, evaluated on one representative per coset
    rep_of_coset = np.zeros(Q.n, dtype=np.int64)
    seen = np.zeros(Q.n, dtype=np.bool_)
    for x in range(P.n):
        cidx = proj.table[x]
        if not seen[cidx]:
            seen[cidx] = True
            rep_of_coset[cidx] = x
    table = proj.table[alpha.table[rep_of_coset]].astype(np.int32)
    beta = GroupMap(source=Q, target=Q, table=table)
    if beta.respects_mul() is not None or not beta.is_bijective():
        raise ValueError("alpha did not induce an automorphism on the quotient")
    return Q, beta


def product_pair(P: ConcreteGroup, alpha: GroupMap, Q: ConcreteGroup, beta: GroupMap,
                 cap: int = DEFAULT_ELEMENT_CAP):
    """Direct product of two pairs sharing p, q, and Frattini character."""
    p1, p2 = P.p_group_prime(), Q.p_group_prime()
    if p1 != p2 or p1 is None:
        raise ValueError(f"pairs live over different primes: {p1} vs {p2}")
    c1, c2 = frattini_scalar(alpha, P), frattini_scalar(beta, Q)
    if c1 is None or c2 is None or c1.value != c2.value:
        raise ValueError("Frattini characters differ; product is not a pair")
    D, embP, embQ = direct_product(P, Q, cap=cap)
    table = np.empty(D.n, dtype=np.int32)
    for a in range(P.n):
        table[a * Q.n:(a + 1) * Q.n] = alpha.table[a] * Q.n + beta.table
    f = GroupMap(source=D, target=D, table=table)
    return D, f


def _elementary_abelian_section(G, A, B, p):
    aelems = A.elements()
    if not B.members[power_table(G.mul, p)[aelems]].all():
        return False
    ib = G.inv[aelems]
    for a, i_a in zip(aelems, ib):
        comm = G.mul[G.mul[i_a, ib], G.mul[a, aelems]]
        if not B.members[comm].all():
            return False
    return True


def _agemo1_of_subgroup(G, H, p):
    pw = power_table(G.mul, p)[H.elements()]
    return closure(G, np.unique(pw))


def _product_subgroup(G, A, B):
    return closure(G, set(A.elements().tolist()) | set(B.elements().tolist()))


def structural_report(P: ConcreteGroup, alpha: GroupMap, q: int,
                      cap: int = DEFAULT_ELEMENT_CAP) -> StructuralReport:
    """Evaluate the instance assertions A1..A12 for a checked pair."""
    rep = StructuralReport(label=P.label)
    p = P.p_group_prime()
    d = min_generators(P)
    series = lower_central_series(P)
    c = series.nilpotency_class
    chi = frattini_scalar(alpha, P)
    chi_v = chi.value if chi is not None else None

    def gam(i):
        return gamma(P, i)

    # A1: Phi(P) = gamma_2(P)
    phi = frattini_subgroup(P)
    rep.add("A1", "pass" if phi.same(gam(2)) else "fail",
            f"|Phi|={phi.order}, |gamma2|={gam(2).order}")

    # A2: layers elementary abelian
    ok = all(
        _elementary_abelian_section(P, series.terms[i], series.terms[i + 1], p)
        for i in range(len(series.terms) - 1)
    )
    rep.add("A2", "pass" if ok else "fail")

    # A3: alpha acts on gamma_i / gamma_{i+1} through chi^i
    if chi_v is None:
        rep.add("A3", "fail", "no Frattini character")
    else:
        ok, detail = True, []
        for i in range(1, (c or 1) + 1):
            k = acts_through_character(alpha, gam(i), gam(i + 1))
            want = pow(chi_v, i, p)
            got = k.value if k is not None else None
            detail.append(f"layer {i}: chi^{i}={want}, measured {got}")
            if got != want:
                ok = False
        rep.add("A3", "pass" if ok else "fail", "; ".join(detail))

    # A4: d(layers) <= d; equality at i >= 2 forces chi^i = 1
    ok = True
    for i in range(1, (c or 1) + 1):
        di = _intlog(gam(i).order // gam(i + 1).order, p)
        if di > d:
            ok = False
        if i >= 2 and di == d and chi_v is not None and pow(chi_v, i, p) != 1:
            ok = False
    rep.add("A4", "pass" if ok else "fail")

    # A5: U_1(gamma_i) <= gamma_{i+q} gamma_{2i}; in particular U_1(gamma_2) <= gamma_4
    ok = True
    for i in range(1, (c or 1) + 1):
        u = _agemo1_of_subgroup(P, gam(i), p)
        target = _product_subgroup(P, gam(i + q), gam(2 * i))
        if not target.contains(u):
            ok = False
    if not gam(4).contains(_agemo1_of_subgroup(P, gam(2), p)):
        ok = False
    rep.add("A5", "pass" if ok else "fail")

    # A6: class 3 implies exponent != p
    if c == 3:
        rep.add("A6", "pass" if exponent(P) != p else "fail",
                f"exponent {exponent(P)}")
    else:
        rep.add("A6", "vacuous", f"class {c}")

    # A7: q > 2 implies class <= 2
    if q > 2:
        rep.add("A7", "pass" if (c or 0) <= 2 else "fail", f"class {c}")
    else:
        rep.add("A7", "vacuous", "q = 2")

    # A8: p >= 2d implies regular
    if p >= 2 * d:
        reg, witness = is_regular(P)
        rep.add("A8", "pass" if reg else "fail",
                "" if reg else f"witness pair {witness}")
    else:
        rep.add("A8", "vacuous", f"p = {p} < 2d = {2 * d}")

    # A9: regular branch, class >= 3
    reg, _ = is_regular(P)
    if reg and (c or 0) >= 3:
        ok, details = True, []
        if not _agemo1_of_subgroup(P, whole_group(P), p).same(gam(3)):
            ok = False
            details.append("U_1(P) != gamma_3")
        for i in range(1, c + 1):
            if not _agemo1_of_subgroup(P, gam(i), p).same(gam(i + 2)):
                ok = False
                details.append(f"U_1(gamma_{i}) != gamma_{i + 2}")
        for i in range(1, c + 1):
            for j in range(1, c + 1):
                if i % 2 == 1 or j % 2 == 1:
                    got = commutator_subgroup(P, gam(i), gam(j))
                    if not got.same(gam(i + j)):
                        ok = False
                        details.append(f"[gamma_{i},gamma_{j}] != gamma_{i + j}")
        for i in range(2, c + 1):
            if gam(i).order // gam(i + 2).order > p**d:
                ok = False
                details.append(f"|gamma_{i}:gamma_{i + 2}| > p^d")
        for a in range(1, (c // 2) + 2):
            if gam(1 + 2 * a).order // gam(2 + 2 * a).order == p and c != 1 + 2 * a:
                ok = False
                details.append(f"odd-layer stop fails at a={a}")
        rep.add("A9", "pass" if ok else "fail", "; ".join(details))
    else:
        rep.add("A9", "vacuous", f"regular={reg}, class={c}")

    # A10: small-rank structure
    nexp = _intlog(P.n, p)
    if d == 2:
        ok, details = True, []
        if c != nexp - 1:
            ok = False
            details.append(f"class {c} is not maximal for order p^{nexp}")
        if p > 3:
            if P.n > p**4:
                ok = False
                details.append("|P| > p^4")
            ea = P.n == p**2 and exponent(P) == p and c == 1
            xsp = (
                P.n == p**3 and exponent(P) == p
                and center(P).order == p and gam(2).order == p
                and center(P).same(gam(2))
            )
            if not (ea or xsp):
                ok = False
                details.append("not in the rank-2 classification for p > 3")
        rep.add("A10", "pass" if ok else "fail", "; ".join(details))
    elif d == 3 and c == 2:
        ok = P.n == p**4 and gam(2).order == p and exponent(P) == p
        rep.add("A10", "pass" if ok else "fail", "rank-3 class-2 branch")
    elif d == 3 and p > 3:
        rep.add("A10", "pass" if P.n <= p**5 else "fail", f"|P| = p^{nexp}")
    else:
        rep.add("A10", "vacuous", f"rank {d}")

    # A11: round-trip through the semidirect construction
    if P.n * q <= A11_ORDER_LIMIT:
        G = build_group_from_pair(P, alpha, q, t=1, cap=cap)
        mrep = is_d_maximal(G, cap=cap)
        ok = mrep.is_d_maximal and mrep.d == d + 1
        detail = f"built order {G.n}: d={mrep.d}, maximal={mrep.is_d_maximal}"
        if ok:
            P2, alpha2, q2 = strip_pair(G)
            prep = check_pair(P2, alpha2, q2, cap=cap)
            ok = prep.verdict and prep.d == d
            detail += f"; stripped pair verdict={prep.verdict}, rank={prep.d}"
        rep.add("A11", "pass" if ok else "fail", detail)
    else:
        rep.add("A11", "vacuous",
                f"built order {P.n * q} above A11 limit {A11_ORDER_LIMIT}")

    # A12: odd q order bound
    if q > 2:
        rep.add("A12", "pass" if nexp <= 2 * d - 1 else "fail",
                f"n = {nexp}, bound {2 * d - 1}")
    else:
        rep.add("A12", "vacuous", "q = 2")

    return rep
