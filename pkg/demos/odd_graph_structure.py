"""
A non-normal CI-graph on D_2n, n odd
====================================

Cay(D_2n, {a, a^-1, a^2 b, b}) is a blown-up n-cycle: every vertex has a
twin with the same neighbourhood.  Its automorphism group is far larger
than R(G) Aut(G, S), yet every connection set giving an isomorphic graph is
an automorphic image of S.
"""

from cayleyci import autengine
from cayleyci.citester import cayley_of, is_ci, is_normal_cayley, regular_subgroup_classes
from cayleyci.digraph import lex_product, named, quotient
from cayleyci.fixtures import odd_blocks, odd_set
from cayleyci.grouplib import GroupSpec, format_set, set_stabilizer_auts
from cayleyci.permgroup import element_exponent, induced_block_action, kernel_on_partition

n = 7
spec = GroupSpec.dihedral(n)
S = odd_set(n)
g = cayley_of(spec, S)
print(f"Cay({spec}, {{{format_set(S, spec)}}}): {g.vertex_count} vertices, {g.arc_count()} arcs")

# the automorphism group, versus what a normal Cayley graph would have
A = autengine.automorphism_group(g)
normal_size = spec.order * len(set_stabilizer_auts(S, spec))
print("|Aut| =", A.order(), " 2^(n+1) n =", 2 ** (n + 1) * n, " |R(G) Aut(G,S)| =", normal_size)
print("normal Cayley graph:", is_normal_cayley(spec, S))

# right cosets of <ab> pair up the twins; the kernel swaps them independently
B = odd_blocks(spec)
K = kernel_on_partition(A, B)
print("kernel on the twin blocks: order", K.order(), "exponent", element_exponent(K))
print("block action order:", induced_block_action(A, B).order())

# the quotient is an n-cycle and the graph is C_n[2K_1]
same = autengine.canonical_form
print("quotient is C_n:", same(quotient(g, B)) == same(named("cycle", n)))
print("graph is C_n[2K_1]:", same(lex_product(named("cycle", n), named("empty", 2))) == same(g))

# despite the extra symmetry the set is CI, by both routes
report = is_ci(spec, S)
print("verdict:", report.verdict, "via", report.method)

# the regular dihedral subgroups found, each with an automorphism fixing
# vertex 0 that conjugates it onto R(G)
for X, alpha in regular_subgroup_classes(spec, S):
    if not alpha.is_identity():
        print("rotation", list(X.generators[0]), "conjugated by", list(alpha))
