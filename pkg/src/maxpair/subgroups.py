"""Subgroup lattice enumeration, maximal subgroups, minimal generator
counts, and lower-central jumps."""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

import numpy as np

from ._kernels import closure_members
from .engine import (
    DEFAULT_ELEMENT_CAP,
    ConcreteGroup,
    SizeCapError,
    SubgroupSet,
    closure,
    frattini_p,
    lower_central_series,
    quotient_group,
    subgroup_as_group,
    trivial_subgroup,
)

__all__ = [
    "SubgroupLattice",
    "JumpSet",
    "all_subgroups",
    "maximal_subgroups",
    "min_generators",
    "subgroup_min_generators",
    "jumps",
    "brute_force_subgroups",
    "brute_force_min_generators",
]


@dataclass(eq=False)
class SubgroupLattice:
    parent: ConcreteGroup
    all: list                 # SubgroupSets sorted by (order, bit-vector)
    maximal: list             # indices into `all`
    by_order: dict            # order -> list of indices

    def __len__(self):
        return len(self.all)

    def order_counts(self) -> dict:
        return {o: len(ix) for o, ix in sorted(self.by_order.items())}


@dataclass(eq=False)
class JumpSet:
    subgroup: SubgroupSet
    jumps: list


def _prime_factors(m: int):
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


def _normalizer_members(G: ConcreteGroup, H: SubgroupSet) -> np.ndarray:
    mul, inv = G.mul, G.inv
    helems = H.elements()
    mask = H.members.copy()
    seen = H.members.copy()
    for x in range(G.n):
        if seen[x]:
            continue
        coset = mul[helems, x]
        seen[coset] = True
        if H.members[mul[mul[inv[x], helems], x]].all():
            mask[coset] = True
    return mask


def all_subgroups(G: ConcreteGroup, cap: int = DEFAULT_ELEMENT_CAP) -> SubgroupLattice:
    """The complete subgroup lattice, by cyclic extension: every subgroup
    of a solvable group arises from a smaller one, normal in it of prime
    index, extended by one normalizing element."""
    if G.n > cap:
        raise SizeCapError(f"|G| = {G.n} exceeds element cap {cap}")
    if "lattice" in G._memo:
        return G._memo["lattice"]
    mul = G.mul
    triv = trivial_subgroup(G)
    subs = {triv.key(): triv}
    worklist = [triv]
    while worklist:
        H = worklist.pop()
        helems = H.elements()
        norm = np.flatnonzero(_normalizer_members(G, H))
        seen_coset = H.members.copy()
        for x in norm:
            if seen_coset[x]:
                continue
            seen_coset[mul[helems, x]] = True
            # order of x in N/H
            m, y = 1, int(x)
            while not H.members[y]:
                y = int(mul[y, x])
                m += 1
            if len(_prime_factors(m)) != 1 or m != _prime_factors(m)[0]:
                continue  # non-prime image order; reached via intermediates
            members = H.members.copy()
            y = int(x)
            for _ in range(m - 1):
                members[mul[helems, y]] = True
                seen_coset[mul[helems, y]] = True
                y = int(mul[y, x])
            R = SubgroupSet(G, members)
            k = R.key()
            if k not in subs:
                subs[k] = R
                worklist.append(R)
    ordered = sorted(subs.values(), key=lambda s: (s.order, s.key()))
    by_order = {}
    for i, s in enumerate(ordered):
        by_order.setdefault(s.order, []).append(i)
    maximal = _maximal_indices(G, ordered, by_order)
    lat = SubgroupLattice(parent=G, all=ordered, maximal=maximal, by_order=by_order)
    G._memo["lattice"] = lat
    return lat


def _maximal_indices(G, ordered, by_order):
    n = G.n
    packed = np.stack([np.packbits(s.members) for s in ordered])
    maximal = []
    for i, s in enumerate(ordered):
        if s.order == n:
            continue
        bigger = [
            j
            for o, idx in by_order.items()
            if s.order < o < n and o % s.order == 0
            for j in idx
        ]
        if bigger:
            cand = packed[bigger]
            contained = ((packed[i] & ~cand) == 0).all(axis=1).any()
            if contained:
                continue
        maximal.append(i)
    return maximal


def maximal_subgroups(G: ConcreteGroup, cap: int = DEFAULT_ELEMENT_CAP):
    lat = all_subgroups(G, cap=cap)
    return [lat.all[i] for i in lat.maximal]


def _intlog(m: int, p: int) -> int:
    k = 0
    while m > 1:
        m //= p
        k += 1
    return k


def _search_d(G: ConcreteGroup) -> int:
    """Least k such that some k elements generate G, by exhaustive search
    with closure-growth pruning.  Meant for small (Frattini-free) groups."""
    if G.n == 1:
        return 0
    orders = G.element_orders()
    cands = np.argsort(-orders, kind="stable")
    cands = [int(c) for c in cands if c != 0]

    def extend(chosen, members, k):
        if int(members.sum()) == G.n:
            return len(chosen)
        if len(chosen) == k:
            return None
        for c in cands:
            if members[c]:
                continue
            got = extend(chosen + [c], closure_members(G.mul, chosen + [c]), k)
            if got is not None:
                return got
        return None

    for k in range(1, G.n.bit_length() + 1):
        got = extend([], trivial_subgroup(G).members, k)
        if got is not None:
            return got
    raise AssertionError("unreachable: gens bounded by log2 |G|")


def min_generators(G: ConcreteGroup) -> int:
    """d(G), via the Frattini quotient."""
    if G.n == 1:
        return 0
    key = "min_generators"
    if key in G._memo:
        return G._memo[key]
    p = G.p_group_prime()
    if p is not None:
        d = _intlog(G.n // frattini_p(G).order, p)
    else:
        from .engine import frattini_subgroup

        phi = frattini_subgroup(G)
        Q, _ = quotient_group(G, phi)
        d = _search_d(Q)
    G._memo[key] = d
    return d


def _is_prime_power(m: int):
    f = _prime_factors(m)
    return f[0] if len(f) == 1 else None


def subgroup_min_generators(G: ConcreteGroup, H: SubgroupSet) -> int:
    """d(H) for a subgroup, staying in the parent's coordinates when H is a
    p-group (Burnside basis), else via the reindexed subgroup."""
    if H.order == 1:
        return 0
    p = _is_prime_power(H.order)
    if p is not None:
        phi = _frattini_p_of_subgroup(G, H, p)
        return _intlog(H.order // int(phi.sum()), p)
    K, _ = subgroup_as_group(G, H)
    return min_generators(K)


def _frattini_p_of_subgroup(G, H, p):
    mul, inv = G.mul, G.inv
    helems = H.elements()
    # p-th powers of H's elements
    pw = helems.copy()
    for _ in range(p - 1):
        pw = mul[pw, helems]
    seed = set(pw.tolist())
    ih = inv[helems]
    for a, ia in zip(helems, ih):
        t = mul[mul[ia, ih], mul[a, helems]]
        seed.update(t.tolist())
    return closure_members(mul, sorted(seed))


def jumps(G: ConcreteGroup, H: SubgroupSet) -> JumpSet:
    series = lower_central_series(G)
    c = series.nilpotency_class
    if c is None:
        raise ValueError(f"{G.label} is not nilpotent; jumps undefined")
    out = []
    for j in range(1, c + 1):
        gj = series.terms[j - 1].members
        gj1 = series.terms[j].members if j < len(series.terms) else None
        hi = int((H.members & gj).sum())
        lo = int((H.members & gj1).sum()) if gj1 is not None else 1
        if hi != lo:
            out.append(j)
    return JumpSet(subgroup=H, jumps=out)


def brute_force_subgroups(G: ConcreteGroup):
    """Oracle: join-closure of the cyclic subgroups.  Every subgroup is the
    join of its cyclic subgroups, so iterating joins to a fixpoint finds
    them all.  Quadratic in the subgroup count; for small groups only."""
    triv = trivial_subgroup(G)
    cyclics = {}
    for x in range(G.n):
        s = closure(G, [x])
        cyclics.setdefault(s.key(), s)
    found = {triv.key(): triv}
    found.update(cyclics)
    frontier = list(cyclics.values())
    while frontier:
        fresh = []
        for s in frontier:
            for c in cyclics.values():
                if s.members[c.elements()].all():
                    continue
                j = closure(G, np.flatnonzero(s.members | c.members))
                if j.key() not in found:
                    found[j.key()] = j
                    fresh.append(j)
        frontier = fresh
    return sorted(found.values(), key=lambda s: (s.order, s.key()))


def brute_force_min_generators(G: ConcreteGroup) -> int:
    """Oracle: exhaustive tuple search directly on G."""
    return _search_d(G)
