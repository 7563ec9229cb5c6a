import pytest

from maxpair import (
    all_subgroups,
    center,
    gamma,
    get_group,
    maximal_subgroups,
    min_generators,
    subgroup_min_generators,
    jumps,
)
from maxpair.subgroups import brute_force_min_generators, brute_force_subgroups

# subgroup counts by order, frozen from the independent join-closure oracle
LATTICE_ORACLE = {
    "ea-2-2": {1: 1, 2: 3, 4: 1},
    "q8": {1: 1, 2: 1, 4: 3, 8: 1},
    "ea-3-2": {1: 1, 3: 4, 9: 1},
    "c9xc3": {1: 1, 3: 4, 9: 4, 27: 1},
    "heis-3": {1: 1, 3: 13, 9: 4, 27: 1},
    "sg-81-10": {1: 1, 3: 4, 9: 13, 27: 4, 81: 1},
    "g32": {1: 1, 2: 3, 4: 15, 8: 7, 16: 7, 32: 1},
    "c2xq8": {1: 1, 2: 3, 4: 7, 8: 7, 16: 1},
    "c4oq8": {1: 1, 2: 7, 4: 7, 8: 7, 16: 1},
    "p4-3": {1: 1, 3: 13, 9: 13, 27: 13, 81: 1},
    "sg-162-22": {1: 1, 2: 27, 3: 4, 6: 36, 9: 13, 18: 21, 27: 4,
                  54: 12, 81: 1, 162: 1},
    "c7-sd-c3": {1: 1, 3: 7, 7: 1, 21: 1},
}


@pytest.mark.parametrize("ident", sorted(LATTICE_ORACLE))
def test_subgroup_counts(ident):
    G, _ = get_group(ident)
    lat = all_subgroups(G)
    assert lat.order_counts() == LATTICE_ORACLE[ident]


@pytest.mark.parametrize("ident", ["q8", "ea-3-2", "c9xc3", "heis-3",
                                   "g32", "c7-sd-c3", "sg-81-10"])
def test_lattice_matches_join_closure_oracle(ident):
    G, _ = get_group(ident)
    lat = all_subgroups(G)
    oracle = brute_force_subgroups(G)
    assert len(lat) == len(oracle)
    assert {s.key() for s in lat.all} == {s.key() for s in oracle}


def test_lattice_is_deterministically_ordered():
    G, _ = get_group("q8")
    lat = all_subgroups(G)
    keys = [(s.order, s.key()) for s in lat.all]
    assert keys == sorted(keys)


def test_maximal_subgroups():
    G, _ = get_group("q8")
    maxes = maximal_subgroups(G)
    assert sorted(m.order for m in maxes) == [4, 4, 4]
    G, _ = get_group("c7-sd-c3")
    maxes = maximal_subgroups(G)
    assert sorted(m.order for m in maxes) == [3] * 7 + [7]


MIN_GEN_ORACLE = {
    "c2": 1, "c9": 1, "q8": 2, "ea-3-2": 2, "c9xc3": 2, "heis-3": 2,
    "sg-81-10": 2, "g32": 3, "c2xq8": 3, "c4oq8": 3, "p4-3": 3,
    "sg-162-22": 3, "c7-sd-c3": 2, "ea-2-4": 4,
}


@pytest.mark.parametrize("ident", sorted(MIN_GEN_ORACLE))
def test_min_generators(ident):
    G, _ = get_group(ident)
    assert min_generators(G) == MIN_GEN_ORACLE[ident]


@pytest.mark.parametrize("ident", ["q8", "c9xc3", "g32", "c7-sd-c3",
                                   "sg-162-22"])
def test_min_generators_matches_exhaustive_search(ident):
    G, _ = get_group(ident)
    assert min_generators(G) == brute_force_min_generators(G)


def test_subgroup_min_generators_inside_parent():
    G, _ = get_group("p5-unique-5")
    assert subgroup_min_generators(G, gamma(G, 2)) == 2
    from maxpair.engine import omega_n
    assert subgroup_min_generators(G, omega_n(G, 1)) == 2


def test_jumps():
    G, _ = get_group("heis-3")
    # the center meets gamma_2 but not gamma_3
    assert jumps(G, center(G)).jumps == [2]
    G, _ = get_group("sg-81-10")
    assert jumps(G, gamma(G, 2)).jumps == [2, 3]


def test_jumps_requires_nilpotent():
    G, _ = get_group("c7-sd-c3")
    with pytest.raises(Exception):
        jumps(G, center(G))
