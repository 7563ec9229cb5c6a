import pytest

from maxpair import (
    closure,
    gamma,
    get_group,
    is_isomorphic,
    omega_n,
    subgroup_as_group,
)
from maxpair.catalog import (
    CatalogError,
    ExtensionSlotError,
    get_automorphism,
    list_catalog,
)

REQUIRED_IDS = [
    "c2", "c3", "c4", "c5", "c7", "c8", "c9",
    "ea-2-2", "ea-2-3", "ea-2-4", "ea-3-2", "ea-3-3", "ea-5-2", "ea-7-2",
    "q8", "c2xq8", "c4oq8", "g32",
    "heis-3", "heis-5", "heis-7",
    "p4-3", "p4-5", "p5-unique-3", "p5-unique-5",
    "sg-81-10", "sg-162-22", "c9xc3", "c7-sd-c3",
]

SLOT_IDS = ["sg-81-7", "sg-81-8", "sg-81-9", "sg-243-26", "sg-729-148",
            "sg-1458-805", "sg-1458-1540", "sg-1458-1576", "sg-1458-1613"]


def test_catalog_contains_required_entries():
    ids = {e.id for e in list_catalog()}
    for want in REQUIRED_IDS + SLOT_IDS:
        assert want in ids, want


def test_catalog_is_id_sorted():
    ids = [e.id for e in list_catalog()]
    assert ids == sorted(ids)


def test_family_resolution_by_prime():
    G, _ = get_group("heis", p=5)
    assert G.n == 125
    G, _ = get_group("p4", p=3)
    assert G.n == 81
    G, _ = get_group("p5-unique", p=5)
    assert G.n == 3125


def test_unknown_id_raises():
    with pytest.raises(CatalogError):
        get_group("nope")


def test_extension_slots_raise_with_notes():
    for ident in SLOT_IDS:
        with pytest.raises(ExtensionSlotError) as err:
            get_group(ident)
        assert "extension slot" in str(err.value)


def test_unknown_automorphism_raises():
    with pytest.raises(CatalogError):
        get_automorphism("heis-3", "does-not-exist")


def test_sg_81_10_is_sylow_3_of_sg_162_22():
    big, _ = get_group("sg-162-22")
    # closure of the four order-3 pc generators
    syl = closure(big, big.gens[1:])
    assert syl.order == 81
    K, _ = subgroup_as_group(big, syl)
    small, _ = get_group("sg-81-10")
    ok, _ = is_isomorphic(K, small)
    assert ok


def test_sg_81_10_omega1_equals_derived():
    G, _ = get_group("sg-81-10")
    assert omega_n(G, 1).same(gamma(G, 2))


def test_alpha_is_conjugation_by_involution():
    """The order-81 group's automorphism is conjugation by the order-2
    generator inside the order-162 group."""
    big, _ = get_group("sg-162-22")
    a = big.gens[0]
    syl = closure(big, big.gens[1:])
    K, elems = subgroup_as_group(big, syl)
    import numpy as np
    idx_of = {int(e): i for i, e in enumerate(elems)}
    conj_tab = np.array(
        [idx_of[big.conjugate(int(e), a)] for e in elems], dtype=np.int32
    )
    # conjugation defines an order-2 automorphism acting as -1 on the
    # Frattini quotient, exactly like the standalone copy's alpha
    from maxpair.actions import GroupMap, map_order, frattini_scalar
    g = GroupMap(source=K, target=K, table=conj_tab)
    assert g.respects_mul() is None
    assert map_order(g) == 2
    assert frattini_scalar(g, K).value == 2


def test_fingerprints_catch_data_bugs():
    from maxpair.catalog import _verify_expected

    G, _ = get_group("q8")
    with pytest.raises(CatalogError):
        _verify_expected(G, {"order": 8, "d": 3}, "q8")
