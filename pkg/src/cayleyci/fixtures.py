"""Built-in expected-vs-observed checks on named Cayley digraphs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

from . import autengine
from .citester import cayley_of, group_aut_perm, is_ci, is_normal_cayley
from .digraph import coset_partition, lex_product, named, quotient
from .grouplib import Elem, GroupSpec, make_aut
from .permgroup import stabilizer


def odd_set(n: int) -> frozenset:
    """{a, a^-1, a^2 b, b}: a connected, non-normal CI-graph for odd n."""
    return frozenset({Elem(1), Elem(n - 1), Elem(2, 1), Elem(0, 1)})


def even_set(n: int) -> frozenset:
    """{a, a^-1, ab, a^(n/2+1) b}: not CI for even n >= 4."""
    m = n // 2
    return frozenset({Elem(1), Elem(n - 1), Elem(1, 1), Elem((m + 1) % n, 1)})


def reflections(n: int, *rots: int) -> frozenset:
    return frozenset(Elem(r % n, 1) for r in rots)


def odd_blocks(spec: GroupSpec):
    """Right cosets of H = <ab>."""
    return coset_partition(spec, [Elem(0), Elem(1, 1)])


@dataclass
class Fixture:
    name: str
    expected: Any
    compute: Callable[[], Any]

    def run(self) -> tuple[Any, bool]:
        try:
            observed = self.compute()
        except Exception as exc:            # a failing fixture is a row, not a crash
            return f"error: {exc}", False
        return observed, observed == self.expected


def _aut_order(spec, S):
    return autengine.analyze(cayley_of(spec, S)).order


def _same_certificate(g1, g2):
    return autengine.canonical_form(g1) == autengine.canonical_form(g2)


def _d12_stabilizer():
    spec = GroupSpec.dihedral(6)
    A = autengine.automorphism_group(cayley_of(spec, even_set(6)))
    A1 = set(stabilizer(A, 0).elements)
    x, y = group_aut_perm(spec, make_aut(1, 3, spec)), group_aut_perm(spec, make_aut(-1, 2, spec))
    return A1 == {x ** 0, x, y, x * y}


def builtin_fixtures() -> list[Fixture]:
    D = GroupSpec.dihedral
    fx = [
        Fixture("k33-aut", 72, lambda: _aut_order(D(3), reflections(3, 0, 1, 2))),
        Fixture("heawood-aut", 336, lambda: _aut_order(D(7), reflections(7, 0, 1, 3))),
        Fixture("heawood-iso", True, lambda: _same_certificate(cayley_of(D(7), reflections(7, 0, 1, 3)),
                                                             named("heawood"))),
        Fixture("d26-aut", 78, lambda: _aut_order(D(13), reflections(13, 0, 1, 4))),
        Fixture("d26-normal", True, lambda: is_normal_cayley(D(13), reflections(13, 0, 1, 4))),
        Fixture("lemma-even-k44", True, lambda: _same_certificate(cayley_of(D(4), even_set(4)),
                                                                named("complete_bipartite", 4, 4))),
        Fixture("lemma-even-d8-aut", 1152, lambda: _aut_order(D(4), even_set(4))),
        Fixture("lemma-even-d12-aut", 48, lambda: _aut_order(D(6), even_set(6))),
        Fixture("lemma-even-d12-stabilizer", True, _d12_stabilizer),
    ]
    for n in (3, 5, 7):
        spec = D(n)
        fx += [
            Fixture(f"lemma-odd-aut-n{n}", 2 ** (n + 1) * n, lambda s=spec, n=n: _aut_order(s, odd_set(n))),
            Fixture(f"lemma-odd-quotient-n{n}", True,
                    lambda s=spec, n=n: _same_certificate(quotient(cayley_of(s, odd_set(n)), odd_blocks(s)),
                                                          named("cycle", n))),
            Fixture(f"lemma-odd-lex-n{n}", True,
                    lambda s=spec, n=n: _same_certificate(lex_product(named("cycle", n), named("empty", 2)),
                                                          cayley_of(s, odd_set(n)))),
            Fixture(f"lemma-odd-ci-n{n}", "CI", lambda s=spec, n=n: is_ci(s, odd_set(n)).verdict),
            Fixture(f"lemma-odd-normal-n{n}", False, lambda s=spec, n=n: is_normal_cayley(s, odd_set(n))),
        ]
    for n in (4, 6, 8):
        fx.append(Fixture(f"lemma-even-nonci-n{n}", "not-CI",
                          lambda s=D(n), n=n: is_ci(s, even_set(n)).verdict))
    return fx
