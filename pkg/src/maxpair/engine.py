"""Core algorithms over fully enumerated finite groups.

Groups are Cayley tables on element indices 0..n-1 with identity 0.
Subgroups are boolean membership vectors over the parent's elements.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numpy as np

from ._kernels import closure_members, power_table

DEFAULT_ELEMENT_CAP = 20000

__all__ = [
    "DEFAULT_ELEMENT_CAP",
    "ConcreteGroup",
    "SubgroupSet",
    "Series",
    "NotNormalError",
    "NotPGroupError",
    "SizeCapError",
    "element_order",
    "closure",
    "commutator_subgroup",
    "lower_central_series",
    "center",
    "centralizer",
    "frattini_subgroup",
    "omega_n",
    "agemo_n",
    "exponent",
    "is_regular",
    "quotient_group",
    "subgroup_as_group",
    "direct_product",
    "semidirect_product",
    "is_isomorphic",
    "fingerprint",
]


class NotNormalError(ValueError):
    pass


class NotPGroupError(ValueError):
    pass


class SizeCapError(ValueError):
    pass


@dataclass(eq=False)
class ConcreteGroup:
    """A fully enumerated finite group (immutable by convention)."""

    n: int
    mul: np.ndarray
    inv: np.ndarray
    gens: list
    label: str
    presentation: object = None
    _orders: np.ndarray = field(default=None, repr=False)
    _memo: dict = field(default_factory=dict, repr=False)

    def element_orders(self) -> np.ndarray:
        if self._orders is None:
            orders = np.zeros(self.n, dtype=np.int64)
            orders[0] = 1
            cur = np.arange(self.n, dtype=self.mul.dtype)
            base = np.arange(self.n, dtype=self.mul.dtype)
            k = 1
            while (orders == 0).any():
                k += 1
                cur = self.mul[cur, base]
                hit = (cur == 0) & (orders == 0)
                orders[hit] = k
            self._orders = orders
        return self._orders

    def p_group_prime(self):
        """The prime p if |G| is a p-power (including the trivial group), else None."""
        m = self.n
        if m == 1:
            return None
        p = min(d for d in range(2, m + 1) if m % d == 0)
        while m % p == 0:
            m //= p
        return p if m == 1 else None

    def conjugate(self, x, g):
        """g^-1 x g"""
        return int(self.mul[self.mul[self.inv[g], x], g])


@dataclass(eq=False)
class SubgroupSet:
    """Membership bit-vector over a parent group's elements."""

    parent: ConcreteGroup
    members: np.ndarray
    order: int = None

    def __post_init__(self):
        if self.order is None:
            self.order = int(self.members.sum())

    def elements(self) -> np.ndarray:
        return np.flatnonzero(self.members)

    def key(self) -> bytes:
        return np.packbits(self.members).tobytes()

    def contains(self, other: "SubgroupSet") -> bool:
        return bool((other.members & ~self.members).sum() == 0)

    def same(self, other: "SubgroupSet") -> bool:
        return self.order == other.order and bool(
            (self.members == other.members).all()
        )

    def is_whole(self) -> bool:
        return self.order == self.parent.n

    def __contains__(self, x) -> bool:
        return bool(self.members[x])


@dataclass(eq=False)
class Series:
    parent: ConcreteGroup
    terms: list          # descending SubgroupSets
    labels: list
    kind: str

    @property
    def nilpotency_class(self):
        """Class of a nilpotent parent; None when the series stabilizes
        above the trivial subgroup."""
        if self.terms[-1].order != 1:
            return None
        return len(self.terms) - 1

    def orders(self):
        return [t.order for t in self.terms]


def element_order(G: ConcreteGroup, x: int) -> int:
    return int(G.element_orders()[x])


def trivial_subgroup(G: ConcreteGroup) -> SubgroupSet:
    members = np.zeros(G.n, dtype=np.bool_)
    members[0] = True
    return SubgroupSet(G, members)


def whole_group(G: ConcreteGroup) -> SubgroupSet:
    return SubgroupSet(G, np.ones(G.n, dtype=np.bool_))


def closure(G: ConcreteGroup, seed) -> SubgroupSet:
    """Least subgroup containing the seed elements."""
    seed = list(seed)
    if not seed:
        return trivial_subgroup(G)
    return SubgroupSet(G, closure_members(G.mul, seed))


def _pairwise_commutators(G: ConcreteGroup, aelems, belems) -> np.ndarray:
    """Distinct values a^-1 b^-1 a b over the two element sets."""
    mul, inv = G.mul, G.inv
    out = set()
    ib = inv[belems]
    for a in aelems:
        t = mul[mul[inv[a], ib], mul[a, belems]]
        out.update(np.unique(t).tolist())
    return np.array(sorted(out), dtype=np.int64)


def commutator_subgroup(G: ConcreteGroup, A: SubgroupSet, B: SubgroupSet) -> SubgroupSet:
    comms = _pairwise_commutators(G, A.elements(), B.elements())
    return closure(G, comms)


def lower_central_series(G: ConcreteGroup) -> Series:
    key = "lcs"
    if key in G._memo:
        return G._memo[key]
    terms = [whole_group(G)]
    labels = ["gamma1"]
    while True:
        nxt = commutator_subgroup(G, terms[-1], terms[0])
        if nxt.order == terms[-1].order:
            break
        terms.append(nxt)
        labels.append(f"gamma{len(terms)}")
        if nxt.order == 1:
            break
    series = Series(G, terms, labels, "lower-central")
    G._memo[key] = series
    return series


def gamma(G: ConcreteGroup, i: int) -> SubgroupSet:
    """The i-th lower central term, constant beyond the series length."""
    series = lower_central_series(G)
    idx = min(i, len(series.terms)) - 1
    return series.terms[idx]


def center(G: ConcreteGroup) -> SubgroupSet:
    members = np.asarray((G.mul == G.mul.T).all(axis=1))
    return SubgroupSet(G, members)


def centralizer(G: ConcreteGroup, A: SubgroupSet) -> SubgroupSet:
    mask = np.ones(G.n, dtype=np.bool_)
    for a in A.elements():
        mask &= G.mul[:, a] == G.mul[a, :]
    return SubgroupSet(G, mask)


def frattini_subgroup(G: ConcreteGroup) -> SubgroupSet:
    """Intersection of the maximal subgroups (lattice-backed)."""
    from .subgroups import maximal_subgroups

    if G.n == 1:
        return trivial_subgroup(G)
    mask = np.ones(G.n, dtype=np.bool_)
    for M in maximal_subgroups(G):
        mask &= M.members
    return SubgroupSet(G, mask)


def frattini_p(G: ConcreteGroup) -> SubgroupSet:
    """Phi(G) for a p-group via the Burnside identity U_1(G)[G,G]."""
    p = G.p_group_prime()
    if p is None and G.n > 1:
        raise NotPGroupError(f"{G.label} is not a p-group")
    if G.n == 1:
        return trivial_subgroup(G)
    powers = power_table(G.mul, p)
    der = _pairwise_commutators(G, np.arange(G.n), np.arange(G.n))
    return closure(G, set(powers.tolist()) | set(der.tolist()))


def omega_n(G: ConcreteGroup, k: int) -> SubgroupSet:
    p = G.p_group_prime()
    if p is None and G.n > 1:
        raise NotPGroupError(f"{G.label} is not a p-group")
    if G.n == 1:
        return trivial_subgroup(G)
    orders = G.element_orders()
    seed = np.flatnonzero(orders <= p**k)
    seed = seed[(p**k) % orders[seed] == 0]
    return closure(G, seed)


def agemo_n(G: ConcreteGroup, k: int) -> SubgroupSet:
    p = G.p_group_prime()
    if p is None and G.n > 1:
        raise NotPGroupError(f"{G.label} is not a p-group")
    if G.n == 1:
        return trivial_subgroup(G)
    powers = power_table(G.mul, p**k)
    return closure(G, np.unique(powers))


def exponent(G: ConcreteGroup) -> int:
    e = 1
    for o in np.unique(G.element_orders()):
        e = e * int(o) // gcd(e, int(o))
    return e


def _sub_commutators(G, elems):
    return _pairwise_commutators(G, elems, elems)


def is_regular(G: ConcreteGroup):
    """Regularity check; returns (verdict, witness-pair-or-None)."""
    p = G.p_group_prime()
    if p is None and G.n > 1:
        raise NotPGroupError(f"{G.label} is not a p-group")
    if G.n == 1:
        return True, None
    mul, inv = G.mul, G.inv
    pw = power_table(mul, p)
    # Fast path: pairs where (xy)^p == x^p y^p need no subgroup analysis.
    suspects = []
    for x in range(G.n):
        lhs = pw[mul[x]]
        rhs = mul[pw[x], pw]
        bad = np.flatnonzero(lhs != rhs)
        for y in bad.tolist():
            suspects.append((x, y))
    checked = {}
    for x, y in suspects:
        sub = closure_members(mul, [x, y])
        skey = sub.tobytes()
        if skey not in checked:
            elems = np.flatnonzero(sub)
            g2 = closure_members(mul, _sub_commutators(G, elems))
            g2p = np.unique(pw[np.flatnonzero(g2)])
            checked[skey] = closure_members(mul, g2p)
        target = checked[skey]
        diff = mul[pw[mul[x, y]], inv[mul[pw[x], pw[y]]]]
        if not target[diff]:
            return False, (x, y)
    return True, None


def normal_in(G: ConcreteGroup, N: SubgroupSet) -> bool:
    nelems = N.elements()
    for g in range(G.n):
        conj = G.mul[G.mul[G.inv[g], nelems], g]
        if not N.members[conj].all():
            return False
    return True


def quotient_group(G: ConcreteGroup, N: SubgroupSet, cap: int = DEFAULT_ELEMENT_CAP):
    """Quotient by a normal subgroup; returns (Q, projection GroupMap)."""
    from .actions import GroupMap

    if not normal_in(G, N):
        raise NotNormalError(f"subgroup of order {N.order} is not normal in {G.label}")
    nelems = N.elements()
    rep_of = G.mul[nelems].min(axis=0)          # rep_of[x] = min(N x)
    reps = np.unique(rep_of)
    nq = reps.size
    idx_of = np.full(G.n, -1, dtype=np.int32)
    idx_of[reps] = np.arange(nq, dtype=np.int32)
    coset_idx = idx_of[rep_of]                  # element -> coset index
    mulq = coset_idx[G.mul[np.ix_(reps, reps)]].astype(np.int32)
    invq = np.empty(nq, dtype=np.int32)
    rows, cols = np.nonzero(mulq == 0)
    invq[rows] = cols
    gens = sorted(set(int(coset_idx[g]) for g in G.gens) - {0}) or [0]
    Q = ConcreteGroup(
        n=nq, mul=mulq, inv=invq, gens=gens,
        label=f"quotient({G.label}/N{N.order})",
    )
    proj = GroupMap(source=G, target=Q, table=coset_idx.copy())
    return Q, proj


def subgroup_as_group(G: ConcreteGroup, H: SubgroupSet):
    """Reindex a subgroup into a standalone group; returns (K, embedding elems)."""
    elems = H.elements()
    idx_of = np.full(G.n, -1, dtype=np.int32)
    idx_of[elems] = np.arange(elems.size, dtype=np.int32)
    mulh = idx_of[G.mul[np.ix_(elems, elems)]].astype(np.int32)
    invh = idx_of[G.inv[elems]].astype(np.int32)
    gens = _generating_tuple(G, H)
    K = ConcreteGroup(
        n=int(elems.size), mul=mulh, inv=invh,
        gens=[int(idx_of[g]) for g in gens],
        label=f"subgroup({G.label},{H.order})",
    )
    return K, elems


def _generating_tuple(G: ConcreteGroup, H: SubgroupSet):
    """A (not necessarily minimal) irredundant generating list for H."""
    elems = H.elements()
    orders = G.element_orders()[elems]
    by_order = elems[np.argsort(-orders, kind="stable")]
    gens = []
    cur = None
    for x in by_order:
        if cur is not None and cur[x]:
            continue
        gens.append(int(x))
        cur = closure_members(G.mul, gens)
        if int(cur.sum()) == H.order:
            break
    # drop redundant generators
    for g in list(gens):
        rest = [h for h in gens if h != g]
        if rest and closure_members(G.mul, rest).sum() == H.order:
            gens = rest
    return gens


def direct_product(G: ConcreteGroup, H: ConcreteGroup, cap: int = DEFAULT_ELEMENT_CAP):
    """Componentwise product; returns (P, embed_G, embed_H)."""
    from .actions import GroupMap

    n = G.n * H.n
    if n > cap:
        raise SizeCapError(f"direct product order {n} exceeds cap {cap}")
    mul = (
        G.mul[:, None, :, None].astype(np.int64) * H.n
        + H.mul[None, :, None, :]
    ).reshape(n, n).astype(np.int32)
    inv = (G.inv.astype(np.int64) * H.n)[:, None] + H.inv[None, :]
    inv = inv.reshape(n).astype(np.int32)
    gens = [int(g) * H.n for g in G.gens] + [int(h) for h in H.gens]
    P = ConcreteGroup(n=n, mul=mul, inv=inv, gens=gens,
                      label=f"product({G.label},{H.label})")
    embG = GroupMap(source=G, target=P,
                    table=(np.arange(G.n, dtype=np.int64) * H.n).astype(np.int32))
    embH = GroupMap(source=H, target=P,
                    table=np.arange(H.n, dtype=np.int32))
    return P, embG, embH


def semidirect_product(P: ConcreteGroup, beta, m: int,
                       cap: int = DEFAULT_ELEMENT_CAP) -> ConcreteGroup:
    """P extended by a cyclic group of order m whose generator acts as beta.

    Elements are pairs (x, i) indexed x*m + i.
    """
    from .actions import map_order

    if not beta.is_automorphism():
        raise ValueError("beta is not an automorphism of P")
    r = map_order(beta)
    if m % r != 0:
        raise ValueError(f"order of beta is {r}, which does not divide {m}")
    n = P.n * m
    if n > cap:
        raise SizeCapError(f"semidirect product order {n} exceeds cap {cap}")
    powers = [np.arange(P.n, dtype=np.int32)]
    for _ in range(m - 1):
        powers.append(beta.table[powers[-1]])
    mul = np.empty((P.n, m, P.n, m), dtype=np.int32)
    for i in range(m):
        twisted = P.mul[:, powers[i]]           # x * beta^i(y)
        for j in range(m):
            mul[:, i, :, j] = twisted * m + (i + j) % m
    mul = mul.reshape(n, n)
    inv = np.empty(n, dtype=np.int32)
    rows, cols = np.nonzero(mul == 0)
    inv[rows] = cols
    gens = [int(g) * m for g in P.gens] + [1]
    return ConcreteGroup(n=n, mul=mul, inv=inv, gens=gens,
                         label=f"semidirect({P.label},C{m})")


def fingerprint(G: ConcreteGroup) -> tuple:
    """Cheap isomorphism-invariant tuple used for pruning."""
    orders = G.element_orders()
    hist = tuple(sorted(zip(*np.unique(orders, return_counts=True))))
    lcs = tuple(lower_central_series(G).orders())
    der = commutator_subgroup(G, whole_group(G), whole_group(G)).order
    p = G.p_group_prime()
    if p is not None and G.n > 1:
        phi = frattini_p(G).order
    else:
        phi = None
    return (G.n, exponent(G), hist, center(G).order, der, lcs, phi)


def _extend_map(G: ConcreteGroup, H: ConcreteGroup, gens, images):
    """Extend generator images to a full table, or None on conflict.

    Requires gens to generate G.  BFS over G assigning f(x*g) = f(x)*f(g).
    """
    table = np.full(G.n, -1, dtype=np.int32)
    table[0] = 0
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            fx = table[x]
            for g, fg in zip(gens, images):
                y = int(G.mul[x, g])
                fy = int(H.mul[fx, fg])
                if table[y] == -1:
                    table[y] = fy
                    nxt.append(y)
                elif table[y] != fy:
                    return None
        frontier = nxt
    if (table == -1).any():
        return None
    return table


def is_isomorphic(G: ConcreteGroup, H: ConcreteGroup, cap: int = DEFAULT_ELEMENT_CAP):
    """Backtracking isomorphism test; returns (verdict, GroupMap or None)."""
    from .actions import GroupMap

    if G.n != H.n:
        return False, None
    if max(G.n, H.n) > cap:
        raise SizeCapError("isomorphism test above element cap")
    if fingerprint(G) != fingerprint(H):
        return False, None
    gens = _generating_tuple(G, whole_group(G))
    gorders = [element_order(G, g) for g in gens]
    horders = H.element_orders()
    candidates = [np.flatnonzero(horders == o) for o in gorders]

    sub_orders = []
    for k in range(1, len(gens) + 1):
        sub_orders.append(int(closure_members(G.mul, gens[:k]).sum()))

    images = []

    def backtrack(k):
        if k == len(gens):
            table = _extend_map(G, H, gens, images)
            if table is None or np.unique(table).size != G.n:
                return None
            if not np.array_equal(table[G.mul], H.mul[table][:, table]):
                return None
            return table
        for c in candidates[k]:
            images.append(int(c))
            if int(closure_members(H.mul, images).sum()) == sub_orders[k]:
                result = backtrack(k + 1)
                if result is not None:
                    return result
            images.pop()
        return None

    table = backtrack(0)
    if table is None:
        return False, None
    return True, GroupMap(source=G, target=H, table=table)
