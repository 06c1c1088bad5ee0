"""Dihedral and cyclic groups, their automorphisms, and connection sets.

Elements are pairs ``(rotation, reflection)`` standing for ``a^rotation * b^reflection``
in ``D_2n = <a, b | a^n = b^2 = 1, bab = a^-1>``; cyclic groups reuse the type
with ``reflection == 0``.  Every element also has an index in the canonical
order ``a^0, ..., a^(n-1), b, ab, ..., a^(n-1)b`` which is the vertex order of
Cayley digraphs.

Automorphisms of ``D_2n`` are the maps ``sigma(r, s)``:
``a^i -> a^(r*i)`` and ``a^j b -> a^(r*j + s) b`` with ``gcd(r, n) == 1``.
They act on the right; ``compose(x, y)`` applies x first, then y.  (The
n = 2 group has extra automorphisms, so dihedral specs require n >= 3.)
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property
from math import comb, gcd
from typing import Iterable, NamedTuple


class Elem(NamedTuple):
    rot: int
    ref: int = 0


@dataclass(frozen=True)
class GroupSpec:
    kind: str
    n: int

    def __post_init__(self):
        if self.kind not in ("dihedral", "cyclic"):
            raise ValueError(f"unknown group kind {self.kind!r}")
        if self.kind == "dihedral" and self.n < 3:
            raise ValueError("dihedral groups need n >= 3 (sigma(r, s) misses Aut(D_4))")
        if self.n < 1:
            raise ValueError("n must be positive")

    @classmethod
    def dihedral(cls, n: int) -> "GroupSpec":
        return cls("dihedral", n)

    @classmethod
    def cyclic(cls, n: int) -> "GroupSpec":
        return cls("cyclic", n)

    @property
    def is_dihedral(self) -> bool:
        return self.kind == "dihedral"

    @property
    def order(self) -> int:
        return 2 * self.n if self.is_dihedral else self.n

    @property
    def identity(self) -> Elem:
        return Elem(0, 0)

    def __str__(self):
        return f"D{2 * self.n}" if self.is_dihedral else f"Z{self.n}"

    # -- indexing --------------------------------------------------------------

    def index(self, g: Elem) -> int:
        self.check(g)
        return g.rot + self.n * g.ref

    def element(self, i: int) -> Elem:
        return Elem(i % self.n, i // self.n)

    def elements(self) -> list[Elem]:
        return [self.element(i) for i in range(self.order)]

    def check(self, g: Elem) -> None:
        if not (0 <= g.rot < self.n) or g.ref not in (0, 1) or (g.ref and not self.is_dihedral):
            raise ValueError(f"{g} is not an element of {self}")

    # -- arithmetic tables on indices --------------------------------------------

    @cached_property
    def mul_table(self) -> tuple[tuple[int, ...], ...]:
        els = self.elements()
        return tuple(tuple(self.index(_mul(g, h, self.n)) for h in els) for g in els)

    @cached_property
    def inv_table(self) -> tuple[int, ...]:
        return tuple(self.index(_inverse(g, self.n)) for g in self.elements())

    @cached_property
    def aut_index_perms(self) -> tuple[tuple[int, ...], ...]:
        """Every automorphism as a permutation of element indices (same order as automorphisms())."""
        return tuple(tuple(self.index(apply_aut(s, g, self)) for g in self.elements())
                     for s in automorphisms(self))


def _mul(g: Elem, h: Elem, n: int) -> Elem:
    # a^i b^e * a^j b^f = a^(i + (-1)^e j) b^(e+f)
    j = -h.rot if g.ref else h.rot
    return Elem((g.rot + j) % n, g.ref ^ h.ref)


def _inverse(g: Elem, n: int) -> Elem:
    if g.ref:
        return g
    return Elem((-g.rot) % n, 0)


def multiply(g: Elem, h: Elem, spec: GroupSpec) -> Elem:
    spec.check(g)
    spec.check(h)
    return _mul(g, h, spec.n)


def inverse(g: Elem, spec: GroupSpec) -> Elem:
    spec.check(g)
    return _inverse(g, spec.n)


def power(g: Elem, k: int, spec: GroupSpec) -> Elem:
    out = spec.identity
    for _ in range(k % element_order(g, spec)):
        out = _mul(out, g, spec.n)
    return out


def element_order(g: Elem, spec: GroupSpec) -> int:
    spec.check(g)
    if g.ref:
        return 2
    return spec.n // gcd(g.rot, spec.n)


# ---------------------------------------------------------------------------
# automorphisms


@dataclass(frozen=True, order=True)
class GroupAut:
    """sigma(r, s); cyclic groups only use r (s == 0)."""

    r: int
    s: int = 0

    def __str__(self):
        return f"sigma({self.r},{self.s})"


def _units(n: int) -> list[int]:
    if n == 1:
        return [0]
    return [r for r in range(1, n) if gcd(r, n) == 1]


def automorphisms(spec: GroupSpec) -> list[GroupAut]:
    """All of Aut(G): n*phi(n) maps for D_2n, phi(n) for Z_n; identity first."""
    us = _units(spec.n)
    if spec.is_dihedral:
        return [GroupAut(r, s) for r in us for s in range(spec.n)]
    return [GroupAut(r, 0) for r in us]


def make_aut(r: int, s: int, spec: GroupSpec) -> GroupAut:
    r %= spec.n
    s = s % spec.n if spec.is_dihedral else 0
    if gcd(r, spec.n) != 1:
        raise ValueError(f"r={r} is not a unit mod {spec.n}")
    return GroupAut(r, s)


def apply_aut(aut: GroupAut, g: Elem, spec: GroupSpec) -> Elem:
    n = spec.n
    if g.ref:
        return Elem((aut.r * g.rot + aut.s) % n, 1)
    return Elem((aut.r * g.rot) % n, 0)


def compose(x: GroupAut, y: GroupAut, spec: GroupSpec) -> GroupAut:
    """The automorphism "x then y": g -> (g^x)^y."""
    n = spec.n
    return GroupAut((x.r * y.r) % n, (y.r * x.s + y.s) % n if spec.is_dihedral else 0)


def aut_inverse(x: GroupAut, spec: GroupSpec) -> GroupAut:
    n = spec.n
    if n == 1:
        return x
    ri = pow(x.r, -1, n)
    return GroupAut(ri, (-ri * x.s) % n if spec.is_dihedral else 0)


def aut_order(aut: GroupAut, spec: GroupSpec) -> int:
    """Least w >= 1 with r^w = 1 and s(r^(w-1) + ... + r + 1) = 0 (mod n)."""
    n = spec.n
    if n == 1:
        return 1
    rw = 1      # r^w
    geo = 0     # 1 + r + ... + r^(w-1)
    w = 0
    while True:
        geo = (geo + rw) % n
        rw = (rw * aut.r) % n
        w += 1
        if rw == 1 % n and (aut.s * geo) % n == 0:
            return w


# ---------------------------------------------------------------------------
# connection sets


ConnectionSet = frozenset  # of Elem


def connection_set(elements: Iterable[Elem], spec: GroupSpec) -> frozenset:
    S = frozenset(Elem(*e) for e in elements)
    for g in S:
        spec.check(g)
    if spec.identity in S:
        raise ValueError("a connection set may not contain the identity")
    if not S:
        raise ValueError("a connection set must be nonempty")
    return S


def set_indices(S: Iterable[Elem], spec: GroupSpec) -> tuple[int, ...]:
    return tuple(sorted(spec.index(g) for g in S))


def set_from_indices(idx: Iterable[int], spec: GroupSpec) -> frozenset:
    return frozenset(spec.element(i) for i in idx)


def set_inverse(S: Iterable[Elem], spec: GroupSpec) -> frozenset:
    return frozenset(_inverse(g, spec.n) for g in S)


def is_symmetric(S: Iterable[Elem], spec: GroupSpec) -> bool:
    S = frozenset(S)
    return S == set_inverse(S, spec)


def image_of_set(aut: GroupAut, S: Iterable[Elem], spec: GroupSpec) -> frozenset:
    return frozenset(apply_aut(aut, g, spec) for g in S)


def sets_equivalent(S: Iterable[Elem], T: Iterable[Elem], spec: GroupSpec) -> GroupAut | None:
    """Some sigma in Aut(G) with S^sigma == T (the first in automorphisms() order), else None."""
    S, T = frozenset(S), frozenset(T)
    if len(S) != len(T):
        return None
    for aut in automorphisms(spec):
        if image_of_set(aut, S, spec) == T:
            return aut
    return None


def set_stabilizer_auts(S: Iterable[Elem], spec: GroupSpec) -> list[GroupAut]:
    """Aut(G, S) = {sigma : S^sigma == S}."""
    S = frozenset(S)
    return [a for a in automorphisms(spec) if image_of_set(a, S, spec) == S]


def generated_subgroup(S: Iterable[Elem], spec: GroupSpec) -> frozenset:
    """<S> as a set of elements."""
    gens = [spec.index(g) for g in S]
    table = spec.mul_table
    seen = {0}
    queue = [0]
    for x in queue:
        for s in gens:
            y = table[x][s]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(spec.element(i) for i in seen)


# ---------------------------------------------------------------------------
# Aut(G)-orbits of k-subsets


@dataclass
class SubsetOrbit:
    rep: tuple[int, ...]     # lexicographically least member (element indices)
    size: int

    def elements(self, spec: GroupSpec) -> frozenset:
        return set_from_indices(self.rep, spec)


def normalize(S: Iterable[Elem], spec: GroupSpec) -> tuple[int, ...]:
    """The lexicographically least index tuple in the Aut(G)-orbit of S."""
    idx = [spec.index(g) for g in S]
    return min(tuple(sorted(p[i] for i in idx)) for p in spec.aut_index_perms)


def subset_count(spec: GroupSpec, k: int) -> int:
    return comb(spec.order - 1, k)


def subset_orbits(spec: GroupSpec, k: int, *, symmetric_only: bool = False,
                  connected_only: bool = False) -> list[SubsetOrbit]:
    """One representative per Aut(G)-orbit of k-subsets of G minus the identity.

    Representatives are the lexicographically least members; the list is in
    increasing representative order.
    """
    perms = spec.aut_index_perms
    inv = spec.inv_table
    out = []
    seen = set()
    for T in itertools.combinations(range(1, spec.order), k):
        if T in seen:
            continue
        orb = {tuple(sorted(p[i] for i in T)) for p in perms}
        seen |= orb
        if symmetric_only and set(T) != {inv[i] for i in T}:
            continue
        if connected_only and len(_generated_indices(T, spec)) != spec.order:
            continue
        out.append(SubsetOrbit(T, len(orb)))
    return out


def _generated_indices(T, spec):
    table = spec.mul_table
    seen = {0}
    queue = [0]
    for x in queue:
        for s in T:
            y = table[x][s]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


# ---------------------------------------------------------------------------
# text syntax:  a^i, a^i*b, b, 1/e  (exponents reduced mod n, whitespace ignored)

_ELEM_RE = re.compile(r"^(?:(1|e)|a(?:\^(-?\d+))?(\*b)?|b)$")


def parse_element(text: str, spec: GroupSpec) -> Elem:
    t = re.sub(r"\s+", "", text)
    m = _ELEM_RE.match(t)
    if not m:
        raise ValueError(f"cannot parse group element {text!r}")
    if m.group(1):
        return spec.identity
    if t == "b":
        g = Elem(0, 1)
    else:
        e = int(m.group(2)) if m.group(2) is not None else 1
        g = Elem(e % spec.n, 1 if m.group(3) else 0)
    spec.check(g)
    return g


def parse_set(text: str, spec: GroupSpec) -> frozenset:
    parts = [p for p in re.sub(r"\s+", "", text).split(",") if p]
    return connection_set((parse_element(p, spec) for p in parts), spec)


def format_element(g: Elem) -> str:
    if g.rot == 0:
        return "b" if g.ref else "1"
    base = "a" if g.rot == 1 else f"a^{g.rot}"
    return base + ("*b" if g.ref else "")


def format_set(S: Iterable[Elem], spec: GroupSpec) -> str:
    return ",".join(format_element(g) for g in sorted(S, key=spec.index))


def parse_group(text: str) -> GroupSpec:
    """'dihedral:4', 'D8', 'cyclic:9' or 'Z9'."""
    t = text.strip()
    m = re.fullmatch(r"(dihedral|cyclic):(\d+)", t)
    if m:
        return GroupSpec(m.group(1), int(m.group(2)))
    m = re.fullmatch(r"([DZ])(\d+)", t)
    if m:
        if m.group(1) == "D":
            if int(m.group(2)) % 2:
                raise ValueError("dihedral group order must be even")
            return GroupSpec.dihedral(int(m.group(2)) // 2)
        return GroupSpec.cyclic(int(m.group(2)))
    raise ValueError(f"cannot parse group {text!r}")
