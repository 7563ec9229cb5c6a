import numpy as np
import pytest

from maxpair import (
    NotPGroupError,
    center,
    centralizer,
    closure,
    commutator_subgroup,
    direct_product,
    exponent,
    frattini_p,
    frattini_subgroup,
    gamma,
    get_group,
    is_isomorphic,
    is_regular,
    lower_central_series,
    omega_n,
    agemo_n,
    quotient_group,
    semidirect_product,
    subgroup_as_group,
)
from maxpair.catalog import get_automorphism
from maxpair.engine import whole_group


def G(ident, p=None):
    return get_group(ident, p=p)[0]


def test_closure_satisfies_lagrange():
    rng = np.random.default_rng(1)
    for ident in ("q8", "heis-3", "sg-162-22", "c7-sd-c3"):
        grp = G(ident)
        for _ in range(25):
            seed = rng.integers(0, grp.n, size=2)
            sub = closure(grp, seed.tolist())
            assert grp.n % sub.order == 0
            assert sub.members[0]


def test_center_and_derived_of_q8():
    grp = G("q8")
    z = center(grp)
    der = gamma(grp, 2)
    assert z.order == 2
    assert der.same(z)


def test_lower_central_series_heis():
    grp = G("heis-3")
    s = lower_central_series(grp)
    assert s.orders() == [27, 3, 1]
    assert s.nilpotency_class == 2


def test_non_nilpotent_series_stabilizes():
    grp = G("c7-sd-c3")
    s = lower_central_series(grp)
    assert s.orders() == [21, 7]
    assert s.nilpotency_class is None


def test_frattini_q8():
    grp = G("q8")
    phi = frattini_subgroup(grp)
    assert phi.order == 2
    # Burnside form agrees on p-groups
    assert frattini_p(grp).same(phi)


def test_frattini_forms_agree_on_catalog_p_groups():
    for ident in ("q8", "ea-3-3", "heis-3", "c9xc3", "sg-81-10", "g32", "p4-3"):
        grp = G(ident)
        assert frattini_subgroup(grp).same(frattini_p(grp))


def test_omega_agemo_sg_81_10():
    grp = G("sg-81-10")
    om = omega_n(grp, 1)
    assert om.order == 9
    assert om.same(gamma(grp, 2))          # Omega_1 equals the derived subgroup
    assert agemo_n(grp, 1).same(gamma(grp, 3))   # all cubes land in gamma_3
    assert exponent(grp) == 9


def test_centralizer_of_derived():
    grp = G("p5-unique-5")
    c = centralizer(grp, gamma(grp, 2))
    assert c.order == 625
    K, _ = subgroup_as_group(grp, c)
    assert exponent(K) == 25


def test_regularity():
    assert is_regular(G("heis-3")) == (True, None)
    ok, witness = is_regular(G("sg-81-10"))
    assert not ok and witness is not None
    # p = 5 >= class for the order-5^5 group, hence regular
    assert is_regular(G("p5-unique-5"))[0]
    with pytest.raises(NotPGroupError):
        is_regular(G("c7-sd-c3"))


def test_regularity_matches_definition_on_small_groups():
    # direct check of (xy)^p in x^p y^p U1([<x,y>,<x,y>]) on every pair
    for ident in ("q8", "c9xc3", "heis-3", "g32", "sg-81-10"):
        grp = G(ident)
        p = grp.p_group_prime()
        verdict = True
        pw = np.zeros(grp.n, dtype=np.int64)
        for x in range(grp.n):
            acc = x
            for _ in range(p - 1):
                acc = int(grp.mul[acc, x])
            pw[x] = acc
        for x in range(grp.n):
            for y in range(grp.n):
                sub = closure(grp, [x, y])
                der = commutator_subgroup(grp, sub, sub)
                target = closure(grp, pw[der.elements()].tolist())
                lhs = pw[grp.mul[x, y]]
                rhs = grp.mul[pw[x], pw[y]]
                diff = grp.mul[lhs, grp.inv[rhs]]
                if not target.members[diff]:
                    verdict = False
                    break
            if not verdict:
                break
        assert is_regular(grp)[0] == verdict


def test_quotient_group_orders():
    grp = G("sg-81-10")
    Q, proj = quotient_group(grp, gamma(grp, 3))
    assert Q.n == 27
    assert proj.respects_mul() is None
    # projection is onto and kernel has the right size
    assert len(set(proj.table.tolist())) == 27


def test_direct_product_embeddings():
    A = G("c3")
    B = G("q8")
    D, ea, eb = direct_product(A, B)
    assert D.n == 24
    assert ea.respects_mul() is None and eb.respects_mul() is None
    # images commute elementwise
    for a in range(A.n):
        for b in range(B.n):
            x, y = int(ea.table[a]), int(eb.table[b])
            assert D.mul[x, y] == D.mul[y, x]


def test_semidirect_product_action():
    f = get_automorphism("ea-3-2", "scalar-2")
    P = f.source
    S = semidirect_product(P, f, 2)
    assert S.n == 18
    # conjugation by the extending generator realizes f;
    # elements are indexed (x, i) -> x*m + i with m = 2
    yg = 0 * 2 + 1
    for x in range(P.n):
        xi = x * 2 + 0
        conj = S.mul[S.mul[S.inv[yg], xi], yg]
        assert conj == int(f.table[x]) * 2


def test_isomorphism_positive_and_negative():
    ok, witness_map = is_isomorphic(G("heis-3"), G("heis-3"))
    assert ok and witness_map is not None
    assert not is_isomorphic(G("heis-3"), G("c9xc3"))[0]
    assert not is_isomorphic(G("c2xq8"), G("c4oq8"))[0]
    assert not is_isomorphic(G("ea-3-3"), G("heis-3"))[0]


def test_whole_group_helper():
    grp = G("c5")
    assert whole_group(grp).order == 5
