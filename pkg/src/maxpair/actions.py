"""Homomorphisms from generator images, automorphism search, and
character-action machinery (scalar actions on sections)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import closure_members, power_table
from .engine import (
    ConcreteGroup,
    NotPGroupError,
    SubgroupSet,
    closure,
    exponent,
    frattini_p,
    subgroup_as_group,
)

__all__ = [
    "GroupMap",
    "CharacterValue",
    "PlusMinusSplit",
    "NotAHomomorphismError",
    "hom_from_images",
    "map_order",
    "identity_map",
    "search_automorphisms",
    "acts_through_character",
    "frattini_scalar",
    "plus_minus_split",
    "inversion_forces_abelian_check",
]


class NotAHomomorphismError(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(eq=False)
class GroupMap:
    """A verified-on-construction total map between concrete groups."""

    source: ConcreteGroup
    target: ConcreteGroup
    table: np.ndarray
    images: list = None

    def __call__(self, x: int) -> int:
        return int(self.table[x])

    def respects_mul(self):
        """None if f(xy) == f(x)f(y) everywhere, else a witness pair."""
        lhs = self.table[self.source.mul]
        rhs = self.target.mul[self.table][:, self.table]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            return int(bad[0][0]), int(bad[0][1])
        return None

    def is_bijective(self) -> bool:
        return (
            self.source.n == self.target.n
            and np.unique(self.table).size == self.source.n
        )

    def is_automorphism(self) -> bool:
        return (
            self.source is self.target
            and self.is_bijective()
            and self.respects_mul() is None
        )

    def compose(self, other: "GroupMap") -> "GroupMap":
        """self after other (other first)."""
        return GroupMap(source=other.source, target=self.target,
                        table=self.table[other.table])

    def restrict(self, H: SubgroupSet):
        """Restriction to an invariant subgroup, as a map on the
        reindexed subgroup group.  Returns (map, K, elems)."""
        elems = H.elements()
        if not H.members[self.table[elems]].all():
            raise ValueError("subgroup is not invariant under the map")
        K, _ = subgroup_as_group(self.source, H)
        idx_of = np.full(self.source.n, -1, dtype=np.int32)
        idx_of[elems] = np.arange(elems.size, dtype=np.int32)
        table = idx_of[self.table[elems]]
        return GroupMap(source=K, target=K, table=table), K, elems


@dataclass(frozen=True)
class CharacterValue:
    """A unit k mod p together with its multiplicative order mod p."""

    modulus: int
    value: int
    order: int

    @staticmethod
    def of(p: int, k: int) -> "CharacterValue":
        k %= p
        if k == 0:
            raise ValueError("character value must be a unit mod p")
        o, acc = 1, k
        while acc != 1:
            acc = acc * k % p
            o += 1
        return CharacterValue(p, k, o)


@dataclass(eq=False)
class PlusMinusSplit:
    plus: SubgroupSet
    minus: SubgroupSet


def identity_map(G: ConcreteGroup) -> GroupMap:
    return GroupMap(source=G, target=G, table=np.arange(G.n, dtype=np.int32))


def hom_from_images(source: ConcreteGroup, target: ConcreteGroup, images) -> GroupMap:
    """The unique homomorphism extending generator images, or an error
    carrying a witness pair."""
    images = [int(x) for x in images]
    if len(images) != len(source.gens):
        raise ValueError(
            f"expected {len(source.gens)} images, got {len(images)}"
        )
    table, conflict = _extend_images(source, target, source.gens, images)
    if table is None:
        raise NotAHomomorphismError(
            "generator images do not extend to a homomorphism", witness=conflict
        )
    f = GroupMap(source=source, target=target, table=table, images=images)
    witness = f.respects_mul()
    if witness is not None:
        raise NotAHomomorphismError(
            f"images violate f(xy)=f(x)f(y) at pair {witness}", witness=witness
        )
    return f


def _extend_images(G, H, gens, images):
    """BFS extension of generator images; returns (table, None) on success
    or (None, conflicting-pair) on failure."""
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
                    return None, (x, g)
        frontier = nxt
    if (table == -1).any():
        return None, (0, 0)   # generators do not generate the source
    return table, None


def map_order(f: GroupMap) -> int:
    if not f.is_bijective():
        raise ValueError("map order requires a bijective endomorphism")
    ident = np.arange(f.source.n)
    acc = f.table
    k = 1
    while not np.array_equal(acc, ident):
        acc = f.table[acc]
        k += 1
    return k


def _minimal_generators_p(G: ConcreteGroup):
    """A minimal generating list for a p-group (Burnside basis)."""
    phi = frattini_p(G)
    members = phi.members.copy()
    gens = []
    while int(members.sum()) < G.n:
        x = int(np.flatnonzero(~members)[0])
        gens.append(x)
        members = closure_members(G.mul, gens + phi.elements().tolist())
    return gens, phi


def search_automorphisms(G: ConcreteGroup, order: int, scalar: int,
                         limit: int | None = None) -> list[GroupMap]:
    """All automorphisms of the p-group G of exactly the given order whose
    induced action on G/Phi(G) is multiplication by ``scalar``."""
    p = G.p_group_prime()
    if p is None and G.n > 1:
        raise NotPGroupError(f"{G.label} is not a p-group")
    if G.n == 1:
        return []
    scalar %= p
    gens, phi = _minimal_generators_p(G)
    orders = G.element_orders()
    # candidates: elements of g^scalar Phi with matching element order,
    # generators visited in descending element order
    gens = sorted(gens, key=lambda g: -orders[g])
    powmap = power_table(G.mul, scalar)
    candidate_lists = []
    for g in gens:
        coset = np.unique(G.mul[powmap[g], phi.elements()])
        coset = coset[orders[coset] == orders[g]]
        candidate_lists.append([int(c) for c in coset])
    sub_orders = [
        int(closure_members(G.mul, gens[: k + 1]).sum()) for k in range(len(gens))
    ]

    found = []
    images = []

    def backtrack(k):
        if limit is not None and len(found) >= limit:
            return
        if k == len(gens):
            table, _ = _extend_images(G, G, gens, images)
            if table is None or np.unique(table).size != G.n:
                return
            f = GroupMap(source=G, target=G, table=table, images=list(images))
            if f.respects_mul() is not None:
                return
            if map_order(f) != order:
                return
            found.append(f)
            return
        for c in candidate_lists[k]:
            images.append(c)
            if int(closure_members(G.mul, images).sum()) == sub_orders[k]:
                backtrack(k + 1)
            images.pop()
            if limit is not None and len(found) >= limit:
                return

    backtrack(0)
    return found


def acts_through_character(f: GroupMap, A: SubgroupSet, B: SubgroupSet):
    """The least k with f(x) = x^k mod B for all x in A, as a CharacterValue,
    or None when no single scalar works on the section A/B."""
    G = f.source
    if not A.contains(B):
        raise ValueError("B must be contained in A")
    aelems = A.elements()
    if not A.members[f.table[aelems]].all() or not B.members[f.table[B.elements()]].all():
        raise ValueError("A and B must be f-invariant")
    # B normal in A
    for a in aelems:
        if not B.members[G.mul[G.mul[G.inv[a], B.elements()], a]].all():
            raise ValueError("B must be normal in A")
    if A.order == B.order:
        return CharacterValue.of(_section_prime(G, A, B, default=2), 1)
    p = _section_prime(G, A, B)
    e = _section_exponent(G, A, B)
    fa = f.table[aelems]
    for k in range(1, e + 1):
        xk = power_table(G.mul, k)[aelems]
        if B.members[G.mul[fa, G.inv[xk]]].all():
            return CharacterValue.of(p, k if k % p else 1)
    return None


def _section_prime(G, A, B, default=None):
    m = A.order // B.order
    if m == 1:
        return default
    p = min(d for d in range(2, m + 1) if m % d == 0)
    mm = m
    while mm % p == 0:
        mm //= p
    if mm != 1:
        raise ValueError("section A/B is not a p-group")
    return p

def _section_exponent(G, A, B) -> int:
    p = _section_prime(G, A, B)
    aelems = A.elements()
    e = 1
    while True:
        if B.members[power_table(G.mul, e)[aelems]].all():
            return e
        e *= p


def frattini_scalar(f: GroupMap, G: ConcreteGroup):
    """Scalar of the induced action on G/Phi(G); None when not scalar."""
    p = G.p_group_prime()
    if p is None and G.n > 1:
        raise NotPGroupError(f"{G.label} is not a p-group")
    if G.n == 1:
        return None
    whole = SubgroupSet(G, np.ones(G.n, dtype=np.bool_))
    return acts_through_character(f, whole, frattini_p(G))


def plus_minus_split(M: SubgroupSet, f: GroupMap) -> PlusMinusSplit:
    """Eigen-decomposition of an odd-order abelian subgroup under an
    involution, via x -> x f(x) and x -> x f(x)^-1."""
    G = f.source
    melems = M.elements()
    if M.order % 2 == 0:
        raise ValueError("plus/minus split requires |M| odd")
    if not M.members[f.table[melems]].all():
        raise ValueError("M must be f-invariant")
    fm = f.table[melems]
    if not np.array_equal(f.table[fm], melems):
        raise ValueError("f must square to the identity on M")
    # abelian check
    sub = G.mul[np.ix_(melems, melems)]
    if not np.array_equal(sub, sub.T):
        raise ValueError("M must be abelian")
    plus = closure(G, np.unique(G.mul[melems, fm]))
    minus = closure(G, np.unique(G.mul[melems, G.inv[fm]]))
    if plus.order * minus.order != M.order:
        raise AssertionError("plus/minus orders do not multiply to |M|")
    if (plus.members & minus.members).sum() != 1:
        raise AssertionError("plus and minus intersect nontrivially")
    return PlusMinusSplit(plus=plus, minus=minus)


def inversion_forces_abelian_check(P: ConcreteGroup, N: SubgroupSet, f: GroupMap) -> bool:
    """True when the inversion hypothesis fails (vacuous) or when it holds
    and P is abelian with f the inversion map."""
    nelems = N.elements()
    if not N.members[f.table[nelems]].all():
        return True  # N not invariant: hypothesis fails
    if not np.array_equal(f.table[nelems], P.inv[nelems]):
        return True  # f does not invert N
    # induced map on P/N is inversion iff x f(x) in N for all x
    allx = np.arange(P.n)
    if not N.members[P.mul[allx, f.table]].all():
        return True
    abelian = np.array_equal(P.mul, P.mul.T)
    inversion = np.array_equal(f.table, P.inv)
    return abelian and inversion
