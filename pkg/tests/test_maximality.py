import pytest

from maxpair import (
    build_group_from_pair,
    check_pair,
    gamma,
    get_group,
    is_d_maximal,
    map_order,
    min_generators,
    product_pair,
    quotient_pair,
    strip_pair,
    structural_report,
)
from maxpair.catalog import get_automorphism


def aut(ident, name):
    return get_automorphism(ident, name)


# --- d-maximality ---------------------------------------------------------

@pytest.mark.parametrize("ident,d", [
    ("c2", 1), ("c3", 1), ("c5", 1), ("c7", 1),
    ("ea-3-2", 2), ("q8", 2), ("c7-sd-c3", 2),
    ("ea-2-3", 3), ("c2xq8", 3), ("c4oq8", 3), ("g32", 3),
    ("p4-3", 3), ("sg-162-22", 3),
])
def test_d_maximal_positives(ident, d):
    G, _ = get_group(ident)
    rep = is_d_maximal(G)
    assert rep.is_d_maximal and rep.d == d


def test_d_maximal_negative_with_witness():
    G, _ = get_group("c4")
    rep = is_d_maximal(G)
    assert not rep.is_d_maximal and rep.d == 1
    assert rep.witness is not None and rep.witness.order == 2
    assert rep.witness_d == 1


def test_d_maximal_witness_is_lattice_first():
    G, _ = get_group("c9xc3")
    rep = is_d_maximal(G)
    assert not rep.is_d_maximal
    # first offender in (order, bit-vector) order has the smallest order
    assert rep.witness.order == 9


# --- pair conditions ------------------------------------------------------

def test_pair_rejects_wrong_order_automorphism():
    f = aut("ea-3-2", "scalar-2")
    with pytest.raises(ValueError):
        check_pair(f.source, f, 3)      # map has order 2, not 3


def test_pair_requires_q_dividing_p_minus_1():
    f = aut("ea-3-2", "scalar-2")
    rep = check_pair(f.source, f, 2)
    assert rep.p == 3 and rep.q == 2 and rep.verdict


def test_pair_negative_condition_c_witnesses():
    f = aut("c9xc3", "inv")
    rep = check_pair(f.source, f, 2)
    assert rep.cond_a and rep.cond_b and not rep.cond_c
    # witness: a proper invariant subgroup of full rank with scalar action
    w = rep.witness_c
    assert w is not None and w.order in (9, 27) and w.order < f.source.n


def test_pair_character_reported():
    f = aut("heis-7", "scalar-3")
    rep = check_pair(f.source, f, 3)
    assert rep.verdict
    assert rep.character is not None
    assert rep.character.modulus == 7 and rep.character.order == 3


# --- build / strip round trip --------------------------------------------

def test_build_strip_round_trip():
    f = aut("sg-81-10", "alpha")
    G = build_group_from_pair(f.source, f, 2, t=1)
    assert G.n == 162
    P, beta, q = strip_pair(G)
    assert P.n == 81 and q == 2 and map_order(beta) == 2
    assert check_pair(P, beta, q).verdict


def test_built_group_is_d_plus_1_maximal():
    f = aut("ea-3-2", "scalar-2")
    G = build_group_from_pair(f.source, f, 2, t=1)
    rep = is_d_maximal(G)
    assert rep.is_d_maximal and rep.d == 3


def test_t2_extension():
    f = aut("ea-3-2", "scalar-2")
    G = build_group_from_pair(f.source, f, 2, t=2)
    assert G.n == 36
    rep = is_d_maximal(G)
    assert rep.is_d_maximal and rep.d == 3


def test_strip_rejects_prime_power_order():
    G, _ = get_group("q8")
    with pytest.raises(ValueError):
        strip_pair(G)


# --- quotients and products ----------------------------------------------

def test_quotient_pair_preserves_verdict():
    f = aut("sg-81-10", "alpha")
    Q, beta = quotient_pair(f.source, f, 2, gamma(f.source, 3))
    assert Q.n == 27
    rep = check_pair(Q, beta, 2)
    assert rep.verdict and rep.d == 2


def test_quotient_pair_rejects_subgroup_outside_frattini():
    f = aut("sg-81-10", "alpha")
    with pytest.raises(ValueError):
        quotient_pair(f.source, f, 2, gamma(f.source, 1))


def test_product_pair_ranks_add():
    f = aut("heis-3", "scalar-2")
    g = aut("c3", "scalar-2")
    D, h = product_pair(f.source, f, g.source, g)
    rep = check_pair(D, h, 2)
    assert rep.verdict
    assert rep.d == min_generators(f.source) + min_generators(g.source)


def test_product_pair_rejects_mismatched_characters():
    f = aut("heis-7", "scalar-2")
    g = aut("heis-7", "scalar-3")
    with pytest.raises(ValueError):
        product_pair(f.source, f, g.source, g)


# --- structural assertions ------------------------------------------------

def test_structural_report_statuses():
    f = aut("sg-81-10", "alpha")
    rep = structural_report(f.source, f, 2)
    assert rep.all_pass
    by_id = {r.ident: r.status for r in rep.records}
    # maximal-class rank-2 branch fires; q>2 class bound is vacuous at q=2
    assert by_id["A10"] == "pass"
    assert by_id["A7"] == "vacuous"
    assert by_id["A1"] == "pass"        # Phi = gamma_2


def test_structural_a7_fires_for_odd_q():
    f = aut("heis-7", "scalar-3")
    rep = structural_report(f.source, f, 3)
    assert rep.all_pass
    by_id = {r.ident: r.status for r in rep.records}
    assert by_id["A7"] == "pass"
    assert by_id["A12"] == "pass"


def test_structural_a9_fires_on_regular_class3():
    f = aut("p5-unique-5", "alpha")
    rep = structural_report(f.source, f, 2)
    assert rep.all_pass
    by_id = {r.ident: r.status for r in rep.records}
    assert by_id["A9"] == "pass"
    assert by_id["A6"] == "pass"        # class 3 forces exponent != p
