"""Built-in groups and automorphisms: every named instance the source
material specifies explicitly, plus small parameterized families.

Entries are backed either by a presentation (file in data/ or generated
template) or by a construction recipe over other entries.  Each entry
carries an expected fingerprint that is verified when the group is built.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from .presentations import parse_presentation, build_group
from .engine import (
    ConcreteGroup,
    closure,
    direct_product,
    exponent,
    lower_central_series,
    quotient_group,
)
from .actions import GroupMap, hom_from_images
from .subgroups import min_generators

__all__ = [
    "CatalogEntry",
    "CatalogError",
    "ExtensionSlotError",
    "list_catalog",
    "get_group",
    "get_automorphism",
]


class CatalogError(Exception):
    pass


class ExtensionSlotError(CatalogError):
    """Entry is declared (with expected invariants) but has no presentation."""


@dataclass(eq=False)
class CatalogEntry:
    id: str
    description: str
    expected: dict = None               # order, d, class, exponent, lcs
    builder: object = None              # () -> (ConcreteGroup, {name: GroupMap})
    extension_slot: bool = False
    notes: str = ""


def _elt_pow(G: ConcreteGroup, x: int, e: int) -> int:
    acc, base = 0, int(x)
    e %= int(G.element_orders()[x])
    while e:
        if e & 1:
            acc = int(G.mul[acc, base])
        base = int(G.mul[base, base])
        e >>= 1
    return acc


def _mul_chain(G: ConcreteGroup, *xs) -> int:
    acc = 0
    for x in xs:
        acc = int(G.mul[acc, x])
    return acc


def _scalar_of_order(p: int, q: int) -> int:
    """Smallest c in 2..p-1 of multiplicative order exactly q mod p."""
    if (p - 1) % q != 0:
        raise ValueError(f"no element of order {q} mod {p}")
    for c in range(2, p):
        acc, o = c, 1
        while acc != 1:
            acc = acc * c % p
            o += 1
        if o == q:
            return c
    raise AssertionError("unreachable for q | p-1")


def _load_pc(name: str):
    text = resources.files("maxpair.data").joinpath(f"{name}.pc").read_text()
    return parse_presentation(text)


def _cyclic_pres(m: int):
    # prime-power cyclic groups as a refined chain g1 -> g2 -> ...
    p, k, mm = None, 0, m
    for d in range(2, m + 1):
        if m % d == 0:
            p = d
            break
    while mm % p == 0:
        mm //= p
        k += 1
    if mm != 1:
        raise ValueError(f"cyclic catalog entries must be prime powers, got {m}")
    lines = [f"group c{m}", f"gens {k}"]
    lines += [f"order g{i} {p}" for i in range(1, k + 1)]
    lines += [f"pow {i} : g{i + 1}" for i in range(1, k)]
    lines.append("end")
    return parse_presentation("\n".join(lines))


def _ea_pres(p: int, k: int):
    lines = [f"group ea-{p}-{k}", f"gens {k}"]
    lines += [f"order g{i} {p}" for i in range(1, k + 1)]
    lines.append("end")
    return parse_presentation("\n".join(lines))


def _heis_pres(p: int):
    # x, y, z with [y,x] = z, z central, exponent p
    text = "\n".join([
        f"group heis-{p}", "gens 3",
        f"order g1 {p}", f"order g2 {p}", f"order g3 {p}",
        "conj 2 1 : g2 g3", "end",
    ])
    return parse_presentation(text)


def _p4_pres(p: int):
    # a^(p^2) = b^p = c^p = [a,b] = [a,c] = 1, [c,b] = a^p
    # pc generators: g1 = b, g2 = c, g3 = a, g4 = a^p
    text = "\n".join([
        f"group p4-{p}", "gens 4",
        f"order g1 {p}", f"order g2 {p}", f"order g3 {p}", f"order g4 {p}",
        "pow 3 : g4", "conj 2 1 : g2 g4", "end",
    ])
    return parse_presentation(text)


def _p5_pres(p: int):
    # x1^p = x5, x2..x5 of order p, [x2,x3] = x4, [x2,x4] = x5, rest central
    text = "\n".join([
        f"group p5-unique-{p}", "gens 5",
        f"order g1 {p}", f"order g2 {p}", f"order g3 {p}",
        f"order g4 {p}", f"order g5 {p}",
        "pow 1 : g5", "conj 3 2 : g3 g4", "conj 4 2 : g4 g5", "end",
    ])
    return parse_presentation(text)


def _c9xc3_pres():
    text = "\n".join([
        "group c9xc3", "gens 3",
        "order g1 3", "order g2 3", "order g3 3",
        "pow 1 : g2", "end",
    ])
    return parse_presentation(text)


def _inversion_aut(G: ConcreteGroup) -> GroupMap:
    return hom_from_images(G, G, [int(G.inv[g]) for g in G.gens])


def _scalar_aut(G: ConcreteGroup, c: int) -> GroupMap:
    return hom_from_images(G, G, [_elt_pow(G, g, c) for g in G.gens])


def _heis_auts(G: ConcreteGroup, p: int):
    auts = {}
    for q in _prime_divisors(p - 1):
        c = _scalar_of_order(p, q)
        x, y, z = G.gens
        images = [_elt_pow(G, x, c), _elt_pow(G, y, c), _elt_pow(G, z, c * c)]
        auts[f"scalar-{q}"] = hom_from_images(G, G, images)
    return auts


def _prime_divisors(m: int):
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


def _sg8110_auts(G: ConcreteGroup):
    b, c, d, e = G.gens
    images = [
        _mul_chain(G, _elt_pow(G, b, 2), e),       # b -> b^2 e
        _mul_chain(G, _elt_pow(G, c, 2), e),       # c -> c^2 e
        _mul_chain(G, d, _elt_pow(G, e, 2)),       # d -> d e^2
        _elt_pow(G, e, 2),                          # e -> e^2
    ]
    return {"alpha": hom_from_images(G, G, images)}


def _p5_auts(G: ConcreteGroup):
    # Invert the first three pc generators; the images of g4 = [g3, g2]
    # and g5 = [g4, g2] are then forced.  The resulting map has order 2
    # and acts as the scalar -1 on the Frattini quotient.
    mul, inv = G.mul, G.inv

    def comm(a, b):
        return int(mul[mul[inv[a], inv[b]], mul[a, b]])

    g1, g2, g3, g4, g5 = G.gens
    i1, i2, i3 = int(inv[g1]), int(inv[g2]), int(inv[g3])
    i4 = comm(i3, i2)
    i5 = comm(i4, i2)
    return {"alpha": hom_from_images(G, G, [i1, i2, i3, i4, i5])}


def _build_c4oq8():
    c4, _ = _build_pres(_cyclic_pres(4))
    q8, _ = _build_pres(_load_pc("q8"))
    D, embC, embQ = direct_product(c4, q8)
    csq = int(embC.table[_elt_pow(c4, c4.gens[0], 2)])
    z = int(embQ.table[q8.gens[2]])
    N = closure(D, [int(D.mul[csq, z])])
    Q, _ = quotient_group(D, N)
    Q.label = "c4oq8"
    return Q, {}


def _build_c2xq8():
    c2, _ = _build_pres(_cyclic_pres(2))
    q8, _ = _build_pres(_load_pc("q8"))
    P, _, _ = direct_product(c2, q8)
    P.label = "c2xq8"
    return P, {}


def _build_c7_sd_c3():
    from .maximality import build_group_from_pair

    c7, auts = _build_pres(_cyclic_pres(7), auts="scalars")
    G = build_group_from_pair(c7, auts["scalar-3"], 3, t=1)
    G.label = "c7-sd-c3"
    return G, {}


def _build_pres(pres, auts=None):
    G = build_group(pres)
    amap = {}
    p = G.p_group_prime()
    if auts == "scalars" and p is not None and p > 2:
        for q in _prime_divisors(p - 1):
            amap[f"scalar-{q}"] = _scalar_aut(G, _scalar_of_order(p, q))
        amap["inv"] = _scalar_aut(G, p - 1)
    elif auts == "inv":
        amap["inv"] = _inversion_aut(G)
    return G, amap


_REGISTRY: dict[str, CatalogEntry] = {}


def _register(entry: CatalogEntry):
    _REGISTRY[entry.id] = entry


def _populate():
    if _REGISTRY:
        return

    for m in (2, 3, 4, 5, 7, 8, 9):
        def mk(m=m):
            auts = "scalars" if m in (3, 5, 7) else None
            G, amap = _build_pres(_cyclic_pres(m), auts=auts)
            if "inv" not in amap and m > 2:
                amap["inv"] = _inversion_aut(G)
            return G, amap
        _register(CatalogEntry(
            id=f"c{m}", description=f"cyclic group of order {m}",
            expected=dict(order=m, d=1, cls=1, exponent=m, lcs=[m, 1]),
            builder=mk,
        ))

    for p in (2, 3, 5, 7):
        for k in (1, 2, 3, 4):
            def mk(p=p, k=k):
                return _build_pres(_ea_pres(p, k), auts="scalars" if p > 2 else None)
            _register(CatalogEntry(
                id=f"ea-{p}-{k}",
                description=f"elementary abelian group of order {p}^{k}",
                expected=dict(order=p**k, d=k, cls=1, exponent=p, lcs=[p**k, 1]),
                builder=mk,
            ))

    _register(CatalogEntry(
        id="q8", description="quaternion group of order 8",
        expected=dict(order=8, d=2, cls=2, exponent=4, lcs=[8, 2, 1]),
        builder=lambda: _build_pres(_load_pc("q8")),
    ))
    _register(CatalogEntry(
        id="c2xq8", description="direct product C2 x Q8",
        expected=dict(order=16, d=3, cls=2, exponent=4, lcs=[16, 2, 1]),
        builder=_build_c2xq8,
    ))
    _register(CatalogEntry(
        id="c4oq8", description="central product C4 * Q8 (= C4 * D8)",
        expected=dict(order=16, d=3, cls=2, exponent=4, lcs=[16, 2, 1]),
        builder=_build_c4oq8,
    ))
    _register(CatalogEntry(
        id="g32", description="order-32 group with a^c = ab^2, b^c = ba^2",
        expected=dict(order=32, d=3, cls=2, exponent=4, lcs=[32, 4, 1]),
        builder=lambda: _build_pres(_load_pc("g32")),
    ))

    for p in (3, 5, 7):
        def mk(p=p):
            G = build_group(_heis_pres(p))
            return G, _heis_auts(G, p)
        _register(CatalogEntry(
            id=f"heis-{p}",
            description=f"Heisenberg group of order {p}^3 (exponent {p})",
            expected=dict(order=p**3, d=2, cls=2, exponent=p, lcs=[p**3, p, 1]),
            builder=mk,
        ))

    for p in (3, 5):
        _register(CatalogEntry(
            id=f"p4-{p}",
            description=f"order {p}^4 group with [c,b] = a^{p}",
            expected=dict(order=p**4, d=3, cls=2, exponent=p**2,
                          lcs=[p**4, p, 1]),
            builder=lambda p=p: _build_pres(_p4_pres(p)),
        ))
        _register(CatalogEntry(
            id=f"p5-unique-{p}",
            description=f"the unique rank-3 pair group of order {p}^5",
            expected=dict(order=p**5, d=3, cls=3, exponent=p**2,
                          lcs=[p**5, p**2, p, 1]),
            builder=lambda p=p: (lambda G: (G, _p5_auts(G)))(
                build_group(_p5_pres(p))
            ),
        ))

    _register(CatalogEntry(
        id="sg-81-10", description="order-81 maximal-class rank-2 pair group",
        expected=dict(order=81, d=2, cls=3, exponent=9, lcs=[81, 9, 3, 1]),
        builder=lambda: (lambda G: (G, _sg8110_auts(G)))(
            build_group(_load_pc("sg-81-10"))
        ),
    ))
    _register(CatalogEntry(
        id="sg-162-22", description="the 3-maximal group of order 162",
        expected=dict(order=162, d=3, cls=None, exponent=18, lcs=[162, 81]),
        builder=lambda: _build_pres(_load_pc("sg-162-22")),
    ))
    _register(CatalogEntry(
        id="c9xc3", description="abelian group C9 x C3",
        expected=dict(order=27, d=2, cls=1, exponent=9, lcs=[27, 1]),
        builder=lambda: _build_pres(_c9xc3_pres(), auts="inv"),
    ))
    _register(CatalogEntry(
        id="c7-sd-c3", description="non-nilpotent 2-maximal group C7 : C3",
        expected=dict(order=21, d=2, cls=None, exponent=21, lcs=[21, 7]),
        builder=_build_c7_sd_c3,
    ))

    # Extension slots: invariants known, presentations not available here.
    slots = {
        "sg-81-7": "order 81, maximal class; order-3 elements generate >= 27",
        "sg-81-8": "order 81, maximal class; order-3 elements generate >= 27",
        "sg-81-9": "order 81, maximal class; order-3 elements generate >= 27",
        "sg-243-26": "order 243, maximal class, order-2 scalar automorphism; "
                     "central quotient is sg-81-9, so not part of any pair",
        "sg-729-148": "order 729, class 3; rank-3 (3,2)-pair member",
        "sg-1458-805": "order 1458; 4-maximal extension of sg-729-148",
        "sg-1458-1540": "rank-4 pair of order 3^6 with gamma2 = C3 x C3",
        "sg-1458-1576": "rank-4 pair of order 3^6 with gamma2 = C3 x C3",
        "sg-1458-1613": "rank-4 pair of order 3^6 with gamma2 = C3 x C3",
    }
    for sid, note in slots.items():
        _register(CatalogEntry(
            id=sid, description="extension slot (no presentation shipped)",
            extension_slot=True, notes=note,
        ))


_CACHE: dict[str, tuple] = {}


def list_catalog():
    _populate()
    return [
        _REGISTRY[i] for i in sorted(_REGISTRY)
    ]


def _verify_expected(G: ConcreteGroup, expected: dict, ident: str):
    got = dict(
        order=G.n,
        d=min_generators(G),
        cls=lower_central_series(G).nilpotency_class,
        exponent=exponent(G),
        lcs=lower_central_series(G).orders(),
    )
    for key, want in expected.items():
        if got[key] != want:
            raise CatalogError(
                f"catalog entry {ident}: fingerprint mismatch on {key}: "
                f"expected {want}, computed {got[key]}"
            )


def get_group(ident: str, p: int | None = None):
    """Build (and fingerprint-verify) a catalog entry.

    Returns (ConcreteGroup, {name: GroupMap}).  Family names like "heis"
    resolve with the ``p`` parameter.
    """
    _populate()
    if p is not None and ident in ("heis", "ea", "p4", "p5-unique"):
        ident = f"{ident}-{p}"
    if ident not in _REGISTRY:
        raise CatalogError(f"unknown catalog id {ident!r}")
    entry = _REGISTRY[ident]
    if entry.extension_slot:
        raise ExtensionSlotError(
            f"{ident} is an extension slot: {entry.notes}"
        )
    if ident not in _CACHE:
        G, auts = entry.builder()
        _verify_expected(G, entry.expected, ident)
        _CACHE[ident] = (G, auts)
    return _CACHE[ident]


def get_automorphism(ident: str, name: str, p: int | None = None) -> GroupMap:
    _, auts = get_group(ident, p=p)
    if name not in auts:
        raise CatalogError(
            f"no automorphism {name!r} on {ident}; have {sorted(auts)}"
        )
    return auts[name]
