"""Deciding whether a connection set is a CI-subset.

Two independent routes:

* ``is_ci_definitional`` groups every k-subset T of G by the canonical form
  of Cay(G, T); S is CI iff the only sets sharing its certificate are the
  sets in its Aut(G)-orbit.
* ``is_ci_babai`` works inside A = Aut(Cay(G, S)): S is CI iff every regular
  subgroup of A isomorphic to G is conjugate in A to the right regular
  representation R(G).

Regular subgroups are only needed up to conjugacy by the vertex stabilizer
A_0 (A = A_0 R(G)), so candidate rotations x are drawn from the cosets
A_0 t_v with v running over A_0-orbit representatives.  A given rotation x
lies in at most one regular dihedral subgroup, which fixes the whole group.
A regular X is conjugate to R(G) iff some isomorphism phi: X -> R(G) induces
an automorphism alpha of the digraph with 0^(w alpha) = 0^phi(w); there are
only |Aut(G)| candidates for phi.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, gcd

from . import autengine
from .digraph import Digraph, cayley
from .grouplib import (
    Elem, GroupAut, GroupSpec, SubsetOrbit, automorphisms, format_set, generated_subgroup,
    is_symmetric, normalize, set_from_indices, set_indices, set_stabilizer_auts, subset_orbits,
)
from .permgroup import (
    DEFAULT_CAP, GroupTooLarge, Perm, PermGroup, _is_full_cycle, _mul, cyclic_from_generator,
    dihedral_from_rotation, is_normal, orbits, stabilizer, transversal,
)

log = logging.getLogger(__name__)

DEFINITIONAL_BUDGET = 200_000


class BudgetExceeded(RuntimeError):
    pass


class MethodDisagreement(AssertionError):
    pass


@dataclass
class CiReport:
    group: GroupSpec
    set: frozenset
    verdict: str                                  # "CI" | "not-CI"
    method: str                                   # "definitional" | "babai" | "both"
    aut_order: int
    is_normal_cayley: bool
    witness_T: frozenset | None = None
    witness_isomorphism: Perm | None = None
    rival_subgroup: PermGroup | None = None
    conjugator_examples: list = field(default_factory=list)

    @property
    def is_ci(self) -> bool:
        return self.verdict == "CI"

    def as_record(self) -> dict:
        spec = self.group
        return {
            "group": spec.kind,
            "n": spec.n,
            "valency": len(self.set),
            "mode": "graph" if is_symmetric(self.set, spec) else "digraph",
            "set": format_set(self.set, spec),
            "verdict": self.verdict,
            "method": self.method,
            "aut_order": self.aut_order,
            "normal": self.is_normal_cayley,
            "witness": format_set(self.witness_T, spec) if self.witness_T else "",
            "rival_order": self.rival_subgroup.order() if self.rival_subgroup is not None else "",
        }


# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def right_regular(spec: GroupSpec) -> PermGroup:
    """R(G) = {x -> xg} on the canonical vertex order, elements materialized."""
    table = spec.mul_table
    N = spec.order
    els = [tuple(table[x][g] for x in range(N)) for g in range(N)]
    gens = [els[1]] if N > 1 else []
    if spec.is_dihedral:
        gens.append(els[spec.n])
    R = PermGroup(N, gens)
    R._elements = [Perm._trusted(e) for e in els]
    return R


def right_translation(spec: GroupSpec, g: Elem) -> Perm:
    return right_regular(spec).elements[spec.index(g)]


def group_aut_perm(spec: GroupSpec, aut: GroupAut) -> Perm:
    """sigma as a permutation of the vertex set."""
    return Perm._trusted(spec.aut_index_perms[automorphisms(spec).index(aut)])


@lru_cache(maxsize=4096)
def _cayley_cached(spec: GroupSpec, idx: tuple[int, ...]) -> Digraph:
    return cayley(spec, set_from_indices(idx, spec))


def cayley_of(spec: GroupSpec, S) -> Digraph:
    return _cayley_cached(spec, set_indices(S, spec))


def _check_set(spec, S):
    S = frozenset(Elem(*g) for g in S)
    if not S:
        raise ValueError("empty connection set")
    if spec.identity in S:
        raise ValueError("identity in connection set")
    for g in S:
        spec.check(g)
    return S


# ---------------------------------------------------------------------------
# normality


def is_normal_cayley(spec: GroupSpec, S) -> bool:
    """R(G) normal in Aut(Cay(G,S)); checked by order count and by conjugation."""
    S = _check_set(spec, S)
    A = autengine.automorphism_group(cayley_of(spec, S))
    by_order = A.order() == spec.order * len(set_stabilizer_auts(S, spec))
    by_conj = is_normal(A, right_regular(spec))
    if by_order != by_conj:
        raise MethodDisagreement("normality characterizations disagree")
    return by_conj


# ---------------------------------------------------------------------------
# definitional route


@lru_cache(maxsize=None)
def _orbit_table(spec: GroupSpec, k: int) -> tuple[SubsetOrbit, ...]:
    return tuple(subset_orbits(spec, k))


def _class_key(spec, idx):
    """Isomorphism invariants of Cay(G, T) used to pre-bucket: graph-ness and component size."""
    inv = spec.inv_table
    sym = set(idx) == {inv[i] for i in idx}
    return sym, len(generated_subgroup(set_from_indices(idx, spec), spec))


@lru_cache(maxsize=None)
def _certificate(spec: GroupSpec, idx: tuple[int, ...]) -> autengine.Certificate:
    return autengine.canonical_form(_cayley_cached(spec, idx))


def _budget(spec, k, budget):
    total = comb(spec.order - 1, k)
    if total > budget:
        raise BudgetExceeded(f"{total} candidate {k}-subsets of {spec} exceed the budget {budget}")


def is_ci_definitional(spec: GroupSpec, S, *, budget: int = DEFINITIONAL_BUDGET) -> CiReport:
    S = _check_set(spec, S)
    k = len(S)
    _budget(spec, k, budget)
    rep = normalize(S, spec)
    key = _class_key(spec, rep)
    cert = _certificate(spec, rep)
    bucket = [o.rep for o in _orbit_table(spec, k)
              if _class_key(spec, o.rep) == key and _certificate(spec, o.rep) == cert]
    assert rep in bucket
    g = cayley_of(spec, S)
    res = autengine.analyze(g)
    report = CiReport(spec, S, "CI", "definitional", res.order, is_normal_cayley(spec, S))
    others = [t for t in bucket if t != rep]
    if others:
        T = set_from_indices(others[0], spec)
        report.verdict = "not-CI"
        report.witness_T = T
        report.witness_isomorphism = autengine.isomorphism(g, cayley_of(spec, T))
    return report


# ---------------------------------------------------------------------------
# Babai route


def _regular_candidates(spec: GroupSpec, g: Digraph, A: PermGroup):
    """Regular subgroups of A isomorphic to G, one or more per A_0-conjugacy class."""
    N = spec.order
    A0 = stabilizer(A, 0)
    if A0.order() > A.cap:
        raise GroupTooLarge(f"vertex stabilizer of order {A0.order()} exceeds the cap {A.cap}")
    trans = transversal(A, 0)
    reps = [o[0] for o in orbits(A0) if o[0] != 0]
    found = {}
    n = spec.n
    for v in reps:
        t = trans[v]
        for alpha in A0.elements:
            x = _mul(alpha, t)
            if spec.is_dihedral:
                X = dihedral_from_rotation(x, n, g.is_automorphism)
            else:
                X = cyclic_from_generator(x) if _is_full_cycle(x) else None
            if X is not None:
                k = X.key()
                if k not in found:
                    found[k] = X
                    yield X
    if N == 1:
        yield right_regular(spec)


def _word_points(X: PermGroup, spec: GroupSpec):
    """Points 0^(x^k y^e) paired with exponents (k, e)."""
    x = X.generators[0]
    out = []
    p = 0
    for k in range(spec.n):
        out.append((p, k, 0))
        if spec.is_dihedral:
            out.append((X.generators[1][p], k, 1))
        p = x[p]
    return out


def conjugator_to_right_regular(spec: GroupSpec, g: Digraph, X: PermGroup) -> Perm | None:
    """alpha in Aut(g) fixing vertex 0 with alpha^-1 X alpha = R(G), or None.

    X must be a regular subgroup generated by (x,) or (x, y) as produced by
    the regular-subgroup routines.
    """
    N = spec.order
    if N == 1:
        return Perm.identity(1)
    table = spec.mul_table
    n = spec.n
    words = _word_points(X, spec)
    rotations = [r for r in range(n) if gcd(r, n) == 1]
    reflections = list(range(n, 2 * n)) if spec.is_dihedral else [0]
    for r in rotations:
        powers = [0]
        for _ in range(n - 1):
            powers.append(table[powers[-1]][r])
        for f in reflections:
            alpha = [0] * N
            for p, k, e in words:
                alpha[p] = table[powers[k]][f] if e else powers[k]
            if g.is_automorphism(alpha):
                return Perm._trusted(alpha)
    return None


def cyclic_core_conjugator(spec: GroupSpec, g: Digraph, X: PermGroup) -> Perm | None:
    """alpha in Aut(g) fixing 0 with alpha^-1 C_X alpha = <R(a)>, where C_X = <x>."""
    table = spec.mul_table
    n, N = spec.n, spec.order
    x = X.generators[0]
    o1 = [0]
    while len(o1) < n:
        o1.append(x[o1[-1]])
    w = min(set(range(N)) - set(o1))
    o2 = [w]
    while len(o2) < n:
        o2.append(x[o2[-1]])
    for r in range(1, n):
        if gcd(r, n) != 1:
            continue
        powers = [0]
        for _ in range(n - 1):
            powers.append(table[powers[-1]][r])
        for u in range(n, 2 * n):
            alpha = [0] * N
            for k in range(n):
                alpha[o1[k]] = powers[k]
                alpha[o2[k]] = table[u][powers[k]]
            if g.is_automorphism(alpha):
                return Perm._trusted(alpha)
    return None


def regular_subgroup_classes(spec: GroupSpec, S, *, cap: int = DEFAULT_CAP):
    """Pairs (X, alpha) for representatives X of regular G-subgroups of Aut(Cay(G,S)).

    alpha conjugates X onto R(G), or is None when X is a rival.
    """
    S = _check_set(spec, S)
    g = cayley_of(spec, S)
    A = autengine.automorphism_group(g)
    A.cap = cap
    for X in _regular_candidates(spec, g, A):
        yield X, conjugator_to_right_regular(spec, g, X)


def is_ci_babai(spec: GroupSpec, S, *, cap: int = DEFAULT_CAP) -> CiReport:
    S = _check_set(spec, S)
    g = cayley_of(spec, S)
    report = CiReport(spec, S, "CI", "babai", autengine.analyze(g).order, is_normal_cayley(spec, S))
    for X, alpha in regular_subgroup_classes(spec, S, cap=cap):
        if alpha is None:
            report.verdict = "not-CI"
            report.rival_subgroup = X
            break
        if len(report.conjugator_examples) < 5:
            report.conjugator_examples.append(alpha)
    return report


def is_ci(spec: GroupSpec, S, *, method: str = "both", budget: int = DEFINITIONAL_BUDGET,
          cap: int = DEFAULT_CAP) -> CiReport:
    if method == "definitional":
        return is_ci_definitional(spec, S, budget=budget)
    if method == "babai":
        return is_ci_babai(spec, S, cap=cap)
    if method != "both":
        raise ValueError(f"unknown method {method!r}")
    d = is_ci_definitional(spec, S, budget=budget)
    b = is_ci_babai(spec, S, cap=cap)
    if d.verdict != b.verdict:
        raise MethodDisagreement(f"{format_set(d.set, spec)} in {spec}: definitional {d.verdict}, babai {b.verdict}")
    d.method = "both"
    d.rival_subgroup = b.rival_subgroup
    d.conjugator_examples = b.conjugator_examples
    return d


# ---------------------------------------------------------------------------
# shortcuts from the odd-n theory


def _require_odd_dihedral(spec):
    if not spec.is_dihedral or spec.n % 2 == 0:
        raise ValueError("requires a dihedral group D_2n with n odd")


def cyclic_core_conjugacy_check(spec: GroupSpec, S, *, cap: int = DEFAULT_CAP) -> bool:
    """For each regular dihedral X (up to conjugacy): X ~ R(G) iff <x> ~ <R(a)>."""
    _require_odd_dihedral(spec)
    S = _check_set(spec, S)
    g = cayley_of(spec, S)
    for X, alpha in regular_subgroup_classes(spec, S, cap=cap):
        if (alpha is not None) != (cyclic_core_conjugator(spec, g, X) is not None):
            return False
    return True


def coprime_stabilizer_shortcut(spec: GroupSpec, S) -> bool | None:
    """True when |A_0| is coprime to n (then S is CI); None means no conclusion."""
    _require_odd_dihedral(spec)
    S = _check_set(spec, S)
    A = autengine.automorphism_group(cayley_of(spec, S))
    if gcd(stabilizer(A, 0).order(), spec.n) == 1:
        return True
    return None


# ---------------------------------------------------------------------------
# sweeps


@dataclass
class Counterexample:
    set: frozenset
    orbit_size: int
    witness_T: frozenset
    babai_verified: bool | None = None


@dataclass
class SweepResult:
    """Counts are in Aut(G)-orbits (one representative each), so
    ci_count + len(counterexamples) == total_sets; the raw_* fields weight
    each orbit by its size."""
    group: GroupSpec
    valency: int
    mode: str
    connected_only: bool
    total_sets: int = 0
    ci_count: int = 0
    counterexamples: list[Counterexample] = field(default_factory=list)
    raw_total: int = 0
    raw_ci: int = 0
    predicted: bool | None = None
    cache_hits: int = 0
    cache_lookups: int = 0

    @property
    def n(self) -> int:
        return self.group.n

    @property
    def has_property(self) -> bool:
        return not self.counterexamples

    @property
    def matches_prediction(self) -> bool | None:
        if self.predicted is None:
            return None
        return self.predicted == self.has_property


def predicted_property(spec: GroupSpec, k: int, mode: str, connected_only: bool = False) -> bool | None:
    """What the known results say about the k-(D)CI property, or None if they are silent."""
    n = spec.n
    if spec.is_dihedral:
        if k == 4:
            if connected_only:
                return n % 2 == 1
            if mode == "digraph":
                return n % 2 == 1 and n % 9 != 0
            return n % 2 == 1
        if k <= 3:
            if n % 2 == 1:
                return True
            if k == 1 and not connected_only:
                return False
        return None
    if mode == "graph" and k <= min(5, n):
        return True
    if k == 4 and connected_only and mode == "digraph" and n % 2 == 1 and n % 9 != 0:
        return True
    return None


def _cert_task(args):
    spec, rep = args
    res = autengine.analyze(_cayley_cached(spec, rep))
    return rep, res.certificate, res.order


def _certificates(spec, reps, cache=None, workers=1):
    """rep -> certificate, consulting an optional cache; returns (map, hits, lookups)."""
    out = {}
    todo = []
    hits = 0
    for rep in reps:
        hit = cache.get(spec, rep) if cache is not None else None
        if hit is not None:
            out[rep] = hit[0]
            hits += 1
        else:
            todo.append(rep)
    if workers > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_cert_task, [(spec, r) for r in todo], chunksize=8))
    else:
        results = [_cert_task((spec, r)) for r in todo]
    for rep, cert, aut in sorted(results):
        out[rep] = cert
        if cache is not None:
            cache.put(spec, rep, cert, aut)
    return out, hits, len(reps) if cache is not None else 0


def m_dci_status(spec: GroupSpec, m: int, mode: str = "digraph", *, connected_only: bool = False,
                 verify: bool = False, budget: int = DEFINITIONAL_BUDGET, cap: int = DEFAULT_CAP,
                 cache=None, workers: int = 1) -> SweepResult:
    """Test every valency-m connection set (one per Aut(G)-orbit).

    In graph mode only inverse-closed sets are considered.  With ``verify``
    each counterexample is re-checked by the Babai route.
    """
    if mode not in ("digraph", "graph"):
        raise ValueError("mode must be 'digraph' or 'graph'")
    if m < 1:
        raise ValueError("valency must be positive")
    result = SweepResult(spec, m, mode, connected_only,
                         predicted=predicted_property(spec, m, mode, connected_only))
    if m > spec.order - 1:
        return result
    _budget(spec, m, budget)
    orbs = subset_orbits(spec, m, symmetric_only=(mode == "graph"), connected_only=connected_only)
    certs, result.cache_hits, result.cache_lookups = _certificates(
        spec, [o.rep for o in orbs], cache, workers)
    buckets = {}
    for o in orbs:
        buckets.setdefault(certs[o.rep], []).append(o)
    for o in orbs:
        result.total_sets += 1
        result.raw_total += o.size
        bucket = buckets[certs[o.rep]]
        if len(bucket) == 1:
            result.ci_count += 1
            result.raw_ci += o.size
            continue
        other = next(b for b in bucket if b.rep != o.rep)
        ce = Counterexample(o.elements(spec), o.size, other.elements(spec))
        if verify:
            b = is_ci_babai(spec, ce.set, cap=cap)
            ce.babai_verified = not b.is_ci
            if b.is_ci:
                raise MethodDisagreement(f"babai route calls {format_set(ce.set, spec)} CI in {spec}")
        result.counterexamples.append(ce)
    return result


def m_dci_group_status(spec: GroupSpec, m: int, mode: str = "digraph", **kw) -> list[SweepResult]:
    """k-(D)CI status for k = 1..m; the group-level verdict is the conjunction."""
    return [m_dci_status(spec, k, mode, **kw) for k in range(1, m + 1)]


def group_verdict(results: list[SweepResult]) -> bool:
    return all(r.has_property for r in results)
