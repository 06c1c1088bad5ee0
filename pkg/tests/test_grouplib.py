import random
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cayleyci.citester import right_regular
from cayleyci.grouplib import (
    Elem, GroupAut, GroupSpec, apply_aut, aut_inverse, aut_order, automorphisms, compose,
    connection_set, element_order, format_element, format_set, generated_subgroup, image_of_set,
    inverse, is_symmetric, make_aut, multiply, normalize, parse_element, parse_group, parse_set,
    power, set_stabilizer_auts, sets_equivalent, subset_count, subset_orbits,
)
from oracles import dihedral_automorphism_maps, map_order, polygon_mul, sigma_as_map

dihedral_n = st.integers(3, 15)


def totient(n):
    return sum(1 for r in range(1, n + 1) if gcd(r, n) == 1)


def test_spec_validation():
    with pytest.raises(ValueError):
        GroupSpec.dihedral(2)
    with pytest.raises(ValueError):
        GroupSpec.cyclic(0)
    assert GroupSpec.dihedral(4).order == 8 and GroupSpec.cyclic(9).order == 9
    assert str(GroupSpec.dihedral(7)) == "D14"


def test_multiply_examples():
    D6, D14 = GroupSpec.dihedral(3), GroupSpec.dihedral(7)
    assert multiply(Elem(2), D6.identity, D6) == Elem(2)
    assert multiply(Elem(0, 1), Elem(1), D6) == Elem(2, 1)
    assert multiply(Elem(3, 1), Elem(5, 1), D14) == Elem(5)


def test_multiply_rejects_foreign_element():
    with pytest.raises(ValueError):
        multiply(Elem(0, 1), Elem(1), GroupSpec.cyclic(5))


@given(dihedral_n, st.data())
def test_multiply_matches_polygon(n, data):
    spec = GroupSpec.dihedral(n)
    g = data.draw(st.sampled_from(spec.elements()))
    h = data.draw(st.sampled_from(spec.elements()))
    assert tuple(multiply(g, h, spec)) == polygon_mul(n, tuple(g), tuple(h))


@given(dihedral_n, st.data())
def test_multiply_matches_right_regular(n, data):
    spec = GroupSpec.dihedral(n)
    g = data.draw(st.sampled_from(spec.elements()))
    h = data.draw(st.sampled_from(spec.elements()))
    R = right_regular(spec).elements
    Rg, Rh = R[spec.index(g)], R[spec.index(h)]
    assert Rg * Rh == R[spec.index(multiply(g, h, spec))]


def test_element_order_examples():
    D18 = GroupSpec.dihedral(9)
    assert element_order(D18.identity, D18) == 1
    assert element_order(Elem(2), D18) == 9
    for n in (3, 4, 10):
        assert element_order(Elem(3 % n, 1), GroupSpec.dihedral(n)) == 2


@given(dihedral_n, st.integers(0, 30))
def test_element_order_rotation_formula(n, i):
    spec = GroupSpec.dihedral(n)
    g = Elem(i % n)
    assert element_order(g, spec) == n // gcd(i % n, n)
    assert power(g, element_order(g, spec), spec) == spec.identity
    assert multiply(g, inverse(g, spec), spec) == spec.identity


def test_automorphism_counts():
    assert len(automorphisms(GroupSpec.cyclic(2))) == 1
    assert len(automorphisms(GroupSpec.dihedral(5))) == 20
    assert len(automorphisms(GroupSpec.dihedral(7))) == 42
    for n in range(3, 16):
        auts = automorphisms(GroupSpec.dihedral(n))
        assert len(auts) == len(set(auts)) == n * totient(n)
        assert len(automorphisms(GroupSpec.cyclic(n))) == totient(n)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_sigma_family_is_all_automorphisms(n):
    spec = GroupSpec.dihedral(n)
    brute = {tuple(sorted(m.items())) for m in dihedral_automorphism_maps(n)}
    ours = {tuple(sorted((tuple(g), tuple(apply_aut(s, g, spec))) for g in spec.elements()))
            for s in automorphisms(spec)}
    assert ours == brute


def test_aut_order_examples():
    D26 = GroupSpec.dihedral(13)
    assert aut_order(GroupAut(1, 0), D26) == 1
    assert aut_order(GroupAut(3, 1), D26) == 3
    for n in (4, 6, 8, 12):
        assert aut_order(make_aut(-1, 2, GroupSpec.dihedral(n)), GroupSpec.dihedral(n)) == 2


@given(dihedral_n, st.data())
def test_aut_order_matches_permutation_order(n, data):
    spec = GroupSpec.dihedral(n)
    s = data.draw(st.sampled_from(automorphisms(spec)))
    assert aut_order(s, spec) == map_order(sigma_as_map(n, s.r, s.s))


def test_apply_aut_examples():
    D14 = GroupSpec.dihedral(7)
    S0 = {Elem(0, 1), Elem(1, 1), Elem(3, 1)}
    for s in range(7):
        assert image_of_set(make_aut(6, s, D14), S0, D14) == {Elem(s, 1), Elem((s + 6) % 7, 1),
                                                               Elem((s + 4) % 7, 1)}
    for n in (4, 6, 9):
        spec = GroupSpec.dihedral(n)
        m = n // 2
        assert image_of_set(make_aut(1, m, spec), {Elem(1), Elem(n - 1)}, spec) == {Elem(1), Elem(n - 1)}
    assert all(apply_aut(GroupAut(1, 0), g, D14) == g for g in D14.elements())


@settings(max_examples=60)
@given(dihedral_n, st.data())
def test_automorphism_law(n, data):
    spec = GroupSpec.dihedral(n)
    s = data.draw(st.sampled_from(automorphisms(spec)))
    for g in spec.elements():
        for h in spec.elements():
            assert apply_aut(s, multiply(g, h, spec), spec) == multiply(apply_aut(s, g, spec),
                                                                       apply_aut(s, h, spec), spec)


@given(dihedral_n, st.data())
def test_compose_is_apply_first_then_second(n, data):
    spec = GroupSpec.dihedral(n)
    x = data.draw(st.sampled_from(automorphisms(spec)))
    y = data.draw(st.sampled_from(automorphisms(spec)))
    xy = compose(x, y, spec)
    for g in spec.elements():
        assert apply_aut(xy, g, spec) == apply_aut(y, apply_aut(x, g, spec), spec)
    assert compose(x, aut_inverse(x, spec), spec) == GroupAut(1, 0)


def test_sets_equivalent_examples():
    for n in (4, 5, 8):
        spec = GroupSpec.dihedral(n)
        S = connection_set([Elem(0, 1), Elem(1, 1), Elem(2, 1)], spec)
        assert sets_equivalent(S, S, spec) == GroupAut(1, 0)
        T = connection_set([Elem(1, 1), Elem(2, 1), Elem(3, 1)], spec)
        assert sets_equivalent(S, T, spec) == GroupAut(1, 1)
    D18 = GroupSpec.dihedral(9)
    assert sets_equivalent({Elem(1)}, {Elem(2)}, D18) == GroupAut(2, 0)
    assert sets_equivalent({Elem(1)}, {Elem(3)}, D18) is None


@settings(max_examples=40)
@given(st.integers(3, 9), st.integers(1, 4), st.integers(0, 10 ** 6))
def test_sets_equivalent_is_equivalence(n, k, seed):
    spec = GroupSpec.dihedral(n)
    rng = random.Random(seed)
    auts = automorphisms(spec)
    S = frozenset(rng.sample(spec.elements()[1:], k))
    T = image_of_set(rng.choice(auts), S, spec)
    U = image_of_set(rng.choice(auts), T, spec)
    st_ = sets_equivalent(S, T, spec)
    ts = sets_equivalent(T, S, spec)
    assert st_ is not None and ts is not None
    assert image_of_set(aut_inverse(st_, spec), T, spec) == S
    assert sets_equivalent(S, U, spec) is not None
    V = frozenset(rng.sample(spec.elements()[1:], k))
    assert (sets_equivalent(S, V, spec) is None) == (normalize(S, spec) != normalize(V, spec))


def test_generated_subgroup_examples():
    for n in (3, 6, 9):
        assert generated_subgroup({Elem(1)}, GroupSpec.dihedral(n)) == {Elem(i) for i in range(n)}
    D10 = GroupSpec.dihedral(5)
    assert len(generated_subgroup({Elem(1), Elem(4), Elem(2, 1), Elem(0, 1)}, D10)) == 10
    assert len(generated_subgroup({Elem(3), Elem(0, 1)}, GroupSpec.dihedral(9))) == 6


def test_set_stabilizer_examples():
    spec = GroupSpec.dihedral(4)
    everything = set(spec.elements()[1:])
    assert sorted(set_stabilizer_auts(everything, spec)) == sorted(automorphisms(spec))
    D26 = GroupSpec.dihedral(13)
    stab = set_stabilizer_auts({Elem(0, 1), Elem(1, 1), Elem(4, 1)}, D26)
    assert sorted(stab) == sorted([GroupAut(1, 0), GroupAut(3, 1), compose(GroupAut(3, 1), GroupAut(3, 1), D26)])
    D12 = GroupSpec.dihedral(6)
    stab = set_stabilizer_auts({Elem(1), Elem(5), Elem(1, 1), Elem(4, 1)}, D12)
    x, y = make_aut(1, 3, D12), make_aut(-1, 2, D12)
    assert sorted(stab) == sorted([GroupAut(1, 0), x, y, compose(x, y, D12)])


@given(st.integers(3, 9), st.data())
def test_set_stabilizer_closed(n, data):
    spec = GroupSpec.dihedral(n)
    S = frozenset(data.draw(st.lists(st.sampled_from(spec.elements()[1:]), min_size=1, max_size=4)))
    stab = set(set_stabilizer_auts(S, spec))
    assert all(compose(x, y, spec) in stab for x in stab for y in stab)


@pytest.mark.parametrize("spec", [GroupSpec.dihedral(4), GroupSpec.dihedral(5), GroupSpec.cyclic(9)])
def test_subset_orbits_partition_all_sets(spec):
    for k in range(1, 4):
        orbs = subset_orbits(spec, k)
        assert sum(o.size for o in orbs) == subset_count(spec, k)
        assert [o.rep for o in orbs] == sorted(o.rep for o in orbs)
        for o in orbs:
            assert normalize(o.elements(spec), spec) == o.rep


def test_subset_orbit_filters():
    spec = GroupSpec.dihedral(6)
    for o in subset_orbits(spec, 4, symmetric_only=True):
        assert is_symmetric(o.elements(spec), spec)
    for o in subset_orbits(spec, 4, connected_only=True):
        assert len(generated_subgroup(o.elements(spec), spec)) == 12


def test_parse_and_format():
    spec = GroupSpec.dihedral(4)
    assert parse_element("a^3*b", spec) == Elem(3, 1)
    assert parse_element(" a ^ -1 ", spec) == Elem(3)
    assert parse_element("a^9", spec) == Elem(1)
    assert parse_element("e", spec) == spec.identity
    assert parse_set("a,a^3,a*b,a^3*b", spec) == {Elem(1), Elem(3), Elem(1, 1), Elem(3, 1)}
    assert format_set(parse_set("a^3*b, b, a", spec), spec) == "a,b,a^3*b"
    assert format_element(Elem(2, 1)) == "a^2*b"
    with pytest.raises(ValueError):
        parse_element("c", spec)
    with pytest.raises(ValueError):
        parse_element("b", GroupSpec.cyclic(5))
    with pytest.raises(ValueError):
        parse_set("a,1", spec)


def test_parse_group():
    assert parse_group("dihedral:4") == GroupSpec.dihedral(4) == parse_group("D8")
    assert parse_group("cyclic:9") == GroupSpec.cyclic(9) == parse_group("Z9")
    for bad in ("D7", "Q8", "dihedral:2"):
        with pytest.raises(ValueError):
            parse_group(bad)
