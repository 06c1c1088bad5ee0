import random

import pytest
import sympy.combinatorics as sc
from hypothesis import given, settings
from hypothesis import strategies as st

from cayleyci import autengine
from cayleyci.citester import cayley_of, right_regular
from cayleyci.digraph import coset_partition, named
from cayleyci.fixtures import odd_set
from cayleyci.grouplib import Elem, GroupSpec
from cayleyci.permgroup import (
    GroupTooLarge, Partition, Perm, PermGroup, are_conjugate_subgroups, closure, conjugate_subgroup,
    element_exponent, induced_block_action, is_normal, is_regular, is_transitive,
    kernel_on_partition, orbit, orbits, order, pointwise_stabilizer, regular_cyclic_subgroups,
    regular_dihedral_subgroups, stabilizer, symmetric_group,
)
from oracles import bfs_closure

perms = st.integers(1, 9).flatmap(lambda n: st.permutations(list(range(n))))


@given(perms)
def test_inverse_roundtrip(p):
    p = Perm(p)
    assert (p * p.inverse()).is_identity()
    assert p.inverse().inverse() == p


@given(perms, st.data())
def test_right_action_convention(p, data):
    q = Perm(data.draw(st.permutations(list(range(len(p))))))
    p = Perm(p)
    assert all((p * q)[i] == q[p[i]] for i in range(len(p)))


def test_perm_rejects_non_bijection():
    with pytest.raises(ValueError):
        Perm([0, 0, 1])


def test_from_cycles_and_order():
    p = Perm.from_cycles(6, (0, 1, 2), (3, 4))
    assert p.order() == 6
    assert sorted(map(len, p.cycles())) == [2, 3]   # fixed points omitted


def test_closure_examples():
    assert closure([Perm.identity(4)]).order() == 1
    assert closure([Perm.from_cycles(4, (0, 1)), Perm.from_cycles(4, (0, 1, 2, 3))]).order() == 24
    R = right_regular(GroupSpec.dihedral(3))
    assert closure(R.generators).order() == 6


def test_closure_degree_mismatch():
    with pytest.raises(ValueError):
        closure([Perm.identity(3), Perm.identity(4)])


def test_closure_cap_without_fallback():
    with pytest.raises(GroupTooLarge):
        closure(symmetric_group(9).generators, cap=1000, fallback=False)
    G = closure(symmetric_group(9).generators, cap=1000)
    assert G.order() == 362880
    with pytest.raises(GroupTooLarge):
        G.elements


def _random_gens(rng, degree, k):
    out = []
    for _ in range(k):
        p = list(range(degree))
        rng.shuffle(p)
        out.append(tuple(p))
    return out


@pytest.mark.parametrize("seed", range(25))
def test_order_matches_sympy_and_bfs(seed):
    rng = random.Random(seed)
    degree = rng.randint(2, 9)
    gens = _random_gens(rng, degree, rng.randint(1, 3))
    G = PermGroup(degree, gens)
    # sympy composes left to right as well; order is convention-free anyway
    assert G.order() == sc.PermutationGroup([sc.Permutation(list(g)) for g in gens]).order()
    if G.order() <= 5040:
        assert set(G.elements) == bfs_closure(gens, degree)


def test_order_trivial():
    assert order(PermGroup(5, [])) == 1


def test_orbit_examples():
    assert orbit(PermGroup(5, []), 3) == {3}
    assert orbits(PermGroup(3, [Perm.from_cycles(3, (0, 2))])) == [[0, 2], [1]]
    assert orbit(right_regular(GroupSpec.dihedral(3)), 0) == set(range(6))
    with pytest.raises(IndexError):
        orbit(PermGroup(3, []), 3)


def test_orbit_in_lemma_odd_stabilizer():
    spec = GroupSpec.dihedral(5)
    A = autengine.automorphism_group(cayley_of(spec, odd_set(5)))
    A1 = stabilizer(A, 0)
    a = spec.index(Elem(1))
    assert orbit(A1, a) == {p[a] for p in A1.elements}


@pytest.mark.parametrize("seed", range(15))
def test_orbit_stabilizer(seed):
    rng = random.Random(100 + seed)
    degree = rng.randint(2, 8)
    G = PermGroup(degree, _random_gens(rng, degree, 2))
    for pt in range(degree):
        H = stabilizer(G, pt)
        assert G.order() == len(orbit(G, pt)) * H.order()
        assert G.order() % H.order() == 0
        assert all(h[pt] == pt for h in H.elements)


def test_stabilizer_examples():
    assert stabilizer(PermGroup(4, []), 0).order() == 1
    spec = GroupSpec.dihedral(4)
    S = [Elem(1), Elem(3), Elem(1, 1), Elem(3, 1)]
    A = autengine.automorphism_group(cayley_of(spec, S))
    assert stabilizer(A, 0).order() == 1152 // 8


def test_pointwise_stabilizer():
    G = symmetric_group(5)
    assert pointwise_stabilizer(G, [0, 1]).order() == 6


def test_conjugacy_examples():
    S3 = symmetric_group(3)
    H1 = PermGroup(3, [Perm.from_cycles(3, (0, 1))])
    H2 = PermGroup(3, [Perm.from_cycles(3, (1, 2))])
    g = are_conjugate_subgroups(S3, H1, H2)
    assert g is not None and conjugate_subgroup(H1, g).element_set == H2.element_set
    assert are_conjugate_subgroups(S3, H1, H1).is_identity()
    C3 = PermGroup(3, [Perm.from_cycles(3, (0, 1, 2))])
    assert are_conjugate_subgroups(S3, H1, C3) is None


def test_conjugacy_requires_containment():
    G = PermGroup(3, [Perm.from_cycles(3, (0, 1))])
    with pytest.raises(ValueError):
        are_conjugate_subgroups(G, G, PermGroup(3, [Perm.from_cycles(3, (1, 2))]))


def test_regular_subgroups_of_regular_group():
    R = right_regular(GroupSpec.dihedral(3))
    subs = regular_dihedral_subgroups(R, 6)
    assert len(subs) == 1 and subs[0].element_set == R.element_set
    Z5 = right_regular(GroupSpec.cyclic(5))
    assert len(regular_cyclic_subgroups(Z5, 5)) == 1


def test_regular_cyclic_directed_cycle():
    A = autengine.automorphism_group(named("directed_cycle", 7))
    (C,) = regular_cyclic_subgroups(A, 7)
    assert C.order() == 7


def test_regular_dihedral_outputs_are_regular_and_dihedral():
    spec = GroupSpec.dihedral(4)
    A = autengine.automorphism_group(cayley_of(spec, [Elem(1), Elem(3), Elem(1, 1), Elem(3, 1)]))
    subs = regular_dihedral_subgroups(A, 8)
    assert len(subs) >= 2
    for X in subs:
        x, y = X.generators
        assert is_transitive(X) and X.order() == 8 and is_regular(X)
        assert x.order() == 4 and y.order() == 2 and (y * x * y) == x.inverse()


def test_cyclic_cores_in_lemma_odd_graph_all_conjugate():
    spec = GroupSpec.dihedral(3)
    A = autengine.automorphism_group(cayley_of(spec, odd_set(3)))
    cores = regular_cyclic_subgroups(A, 3)
    assert cores
    for C in cores:
        assert are_conjugate_subgroups(A, C, cores[0]) is not None


def test_is_normal_examples():
    G = symmetric_group(4)
    assert is_normal(G, G)
    spec = GroupSpec.dihedral(3)
    A = autengine.automorphism_group(cayley_of(spec, odd_set(3)))
    assert not is_normal(A, right_regular(spec))


def _odd_partition(n):
    spec = GroupSpec.dihedral(n)
    return spec, coset_partition(spec, [Elem(0), Elem(1, 1)])


@pytest.mark.parametrize("n", [3, 5])
def test_kernel_lemma_odd(n):
    spec, B = _odd_partition(n)
    A = autengine.automorphism_group(cayley_of(spec, odd_set(n)))
    K = kernel_on_partition(A, B)
    assert K.order() == 2 ** n
    assert element_exponent(K) == 2
    Q = induced_block_action(A, B)
    assert Q.degree == n and Q.order() == 2 * n
    assert A.order() == K.order() * Q.order()


def test_kernel_singletons_and_noninvariant():
    G = symmetric_group(4)
    singles = Partition([[i] for i in range(4)])
    assert kernel_on_partition(G, singles).order() == 1
    assert induced_block_action(G, singles).order() == 24
    with pytest.raises(ValueError):
        kernel_on_partition(G, Partition([[0, 1], [2, 3]]))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_kernel_times_block_action(seed):
    rng = random.Random(seed)
    m, k = rng.randint(1, 3), rng.randint(2, 3)
    degree = m * k
    blocks = [list(range(i * k, (i + 1) * k)) for i in range(m)]
    # generators permuting blocks and points inside blocks, so the partition is invariant
    gens = []
    for _ in range(2):
        bp = list(range(m))
        rng.shuffle(bp)
        img = [0] * degree
        for b in range(m):
            inner = list(range(k))
            rng.shuffle(inner)
            for j in range(k):
                img[b * k + j] = bp[b] * k + inner[j]
        gens.append(img)
    G = PermGroup(degree, gens)
    P = Partition(blocks)
    assert G.order() == kernel_on_partition(G, P).order() * induced_block_action(G, P).order()


def test_partition_validation():
    with pytest.raises(ValueError):
        Partition([[0, 1], [1, 2]])
    with pytest.raises(ValueError):
        Partition([[0], [2]])
    assert len(Partition([[0, 2], [1]])) == 2
