"""
Why D_2n fails the 4-CI property for even n
===========================================

For n = 2m the graph Cay(D_2n, {a, a^-1, ab, a^(m+1) b}) is a normal Cayley
graph, but its automorphism group holds a second regular dihedral subgroup.
Normality of R(G) means the two cannot be conjugate, so the set is not CI.
"""

from cayleyci import autengine
from cayleyci.citester import (
    cayley_of, group_aut_perm, is_ci_babai, is_ci_definitional, right_regular, right_translation,
)
from cayleyci.digraph import distance_set
from cayleyci.fixtures import even_set
from cayleyci.grouplib import Elem, GroupSpec, format_set, make_aut
from cayleyci.permgroup import PermGroup, are_conjugate_subgroups, is_normal, stabilizer

n, m = 6, 3
spec = GroupSpec.dihedral(n)
S = even_set(n)
g = cayley_of(spec, S)
A = autengine.automorphism_group(g)
R = right_regular(spec)
print(f"S = {{{format_set(S, spec)}}}, |Aut| = {A.order()}, R(G) normal: {is_normal(A, R)}")

# the vertex stabilizer is exactly the set stabilizer in Aut(G)
A1 = stabilizer(A, 0)
x, y = group_aut_perm(spec, make_aut(1, m, spec)), group_aut_perm(spec, make_aut(-1, 2, spec))
print("stabilizer of 1 == <sigma(1,m), sigma(-1,2)>:", set(A1.elements) == {x ** 0, x, y, x * y})

# vertices at distance two from the identity
layer = sorted(distance_set(g, 0, 2))
print("second layer:", format_set([spec.element(i) for i in layer], spec))

# the rival: R(a^2 b) followed by sigma(-1,2), together with R(ab)
beta = y
rot = right_translation(spec, Elem(2, 1)) * beta
L = PermGroup(g.vertex_count, [rot, right_translation(spec, Elem(1, 1))])
print("rot in Aut:", rot in A, " rot^2 == R(a^2):", rot * rot == right_translation(spec, Elem(2)))
print("|L| =", L.order(), " L == R(G):", L.key() == R.key())
print("L conjugate to R(G):", are_conjugate_subgroups(A, L, R) is not None)

# the two CI tests agree and each produces its own certificate
d = is_ci_definitional(spec, S)
print("definitional:", d.verdict, "- isomorphic but inequivalent T =", format_set(d.witness_T, spec))
b = is_ci_babai(spec, S)
print("babai:", b.verdict, "- rival generators", [list(p) for p in b.rival_subgroup.generators])
