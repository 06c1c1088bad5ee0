"""Permutations and permutation groups on the point set {0, ..., N-1}.

Permutations act on the right: ``p * q`` means "apply p, then q", so
``(p * q)[i] == q[p[i]]``.  Groups are described by generators; a
Schreier-Sims stabilizer chain is built on demand and gives the order,
membership tests and (below a cap) the full element list.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial, gcd
from typing import Iterable, Sequence

DEFAULT_CAP = 2_000_000


class GroupTooLarge(RuntimeError):
    """Raised when an operation needs more elements than the materialization cap."""


# ---------------------------------------------------------------------------
# raw tuple helpers (hot paths work on plain tuples)


def _mul(p, q):
    return tuple(map(q.__getitem__, p))


def _inv(p):
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def _is_identity(p):
    return all(i == j for i, j in enumerate(p))


def _conj(p, g):
    """g^-1 p g, as a map: i -> g[p[g^-1[i]]]."""
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[g[i]] = g[j]
    return tuple(out)


def _cycle_lengths(p):
    seen = bytearray(len(p))
    lengths = []
    for i in range(len(p)):
        if seen[i]:
            continue
        k = 0
        j = i
        while not seen[j]:
            seen[j] = 1
            j = p[j]
            k += 1
        lengths.append(k)
    return lengths


# ---------------------------------------------------------------------------


class Perm(tuple):
    """A permutation stored as its image tuple: ``p[i]`` is the image of ``i``."""

    __slots__ = ()

    def __new__(cls, images: Iterable[int]):
        p = super().__new__(cls, images)
        if sorted(p) != list(range(len(p))):
            raise ValueError(f"not a permutation: {tuple(p)}")
        return p

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return tuple.__new__(cls, range(degree))

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int]) -> "Perm":
        images = list(range(degree))
        for c in cycles:
            for k, x in enumerate(c):
                images[x] = c[(k + 1) % len(c)]
        return cls(images)

    @classmethod
    def _trusted(cls, images) -> "Perm":
        return tuple.__new__(cls, images)

    @property
    def degree(self) -> int:
        return len(self)

    def __mul__(self, other):
        if not isinstance(other, tuple):
            return NotImplemented
        if len(other) != len(self):
            raise ValueError("degree mismatch")
        return Perm._trusted(map(other.__getitem__, self))

    def __pow__(self, k: int) -> "Perm":
        if k < 0:
            return self.inverse() ** (-k)
        result = tuple(range(len(self)))
        base = tuple(self)
        while k:
            if k & 1:
                result = _mul(result, base)
            base = _mul(base, base)
            k >>= 1
        return Perm._trusted(result)

    def inverse(self) -> "Perm":
        return Perm._trusted(_inv(self))

    def conjugate(self, g: Sequence[int]) -> "Perm":
        """Return g^-1 * self * g."""
        return Perm._trusted(_conj(self, g))

    def is_identity(self) -> bool:
        return _is_identity(self)

    def order(self) -> int:
        o = 1
        for k in _cycle_lengths(self):
            o = o * k // gcd(o, k)
        return o

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for i in range(len(self)):
            if i in seen or self[i] == i:
                continue
            c = [i]
            seen.add(i)
            j = self[i]
            while j != i:
                c.append(j)
                seen.add(j)
                j = self[j]
            out.append(tuple(c))
        return out

    def __repr__(self):
        cs = self.cycles()
        if not cs:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cs)


@dataclass(frozen=True)
class Partition:
    """Disjoint blocks covering {0, ..., N-1}."""

    blocks: tuple[frozenset[int], ...]

    def __init__(self, blocks: Iterable[Iterable[int]], degree: int | None = None):
        bl = tuple(frozenset(b) for b in blocks)
        if any(not b for b in bl):
            raise ValueError("empty block")
        union = set()
        total = 0
        for b in bl:
            union |= b
            total += len(b)
        if total != len(union):
            raise ValueError("blocks are not disjoint")
        if degree is None:
            degree = len(union)
        if union != set(range(degree)):
            raise ValueError("blocks do not cover the point set")
        object.__setattr__(self, "blocks", bl)

    @property
    def degree(self) -> int:
        return sum(len(b) for b in self.blocks)

    def block_of(self) -> list[int]:
        where = [0] * self.degree
        for i, b in enumerate(self.blocks):
            for x in b:
                where[x] = i
        return where

    def __len__(self):
        return len(self.blocks)


# ---------------------------------------------------------------------------
# stabilizer chains


class _Chain:
    """Base, strong generators per level, and orbit transversals.

    ``trans[i][p]`` maps ``base[i]`` to ``p`` and lies in the i-th
    stabilizer ``G^(i)``.
    """

    def __init__(self, degree, base, gens, trans):
        self.degree = degree
        self.base = base
        self.gens = gens
        self.trans = trans
        self._inv = [{} for _ in trans]

    @property
    def order(self) -> int:
        o = 1
        for t in self.trans:
            o *= len(t)
        return o

    def inverse_rep(self, level, point):
        inv = self._inv[level]
        u = inv.get(point)
        if u is None:
            u = inv[point] = _inv(self.trans[level][point])
        return u

    def sift(self, g, start=0):
        for i in range(start, len(self.base)):
            b = g[self.base[i]]
            if b not in self.trans[i]:
                return g, i
            g = _mul(g, self.inverse_rep(i, b))
        return g, len(self.base)

    def contains(self, g) -> bool:
        h, i = self.sift(tuple(g))
        return i == len(self.base) and _is_identity(h)

    def tail(self, level) -> "_Chain":
        return _Chain(self.degree, self.base[level:], self.gens[level:], self.trans[level:])

    def elements(self):
        """Yield every element; order is deterministic."""
        ident = tuple(range(self.degree))
        levels = [list(t.values()) for t in self.trans]
        # g = t_{L-1} * ... * t_0: deeper levels act first
        partial = [ident]
        for i in range(len(levels) - 1, -1, -1):
            partial = [_mul(h, u) for h in partial for u in levels[i]]
        yield from partial


def _orbit_transversal(gens, point, degree):
    trans = {point: tuple(range(degree))}
    queue = [point]
    for p in queue:
        u = trans[p]
        for s in gens:
            q = s[p]
            if q not in trans:
                trans[q] = _mul(u, s)
                queue.append(q)
    return trans


def schreier_sims(gens, degree, base_prefix=()) -> _Chain:
    """Deterministic Schreier-Sims; the base starts with ``base_prefix``."""
    gens = [tuple(g) for g in gens if not _is_identity(g)]
    gens = list(dict.fromkeys(gens))
    base = list(base_prefix)
    for g in gens:
        if all(g[b] == b for b in base):
            base.append(next(i for i in range(degree) if g[i] != i))
    S = [[g for g in gens if all(g[b] == b for b in base[:i])] for i in range(len(base))]
    T = [_orbit_transversal(S[i], base[i], degree) for i in range(len(base))]
    Tinv = [{} for _ in base]

    i = len(base) - 1
    while i >= 0:
        restart = False
        for p in list(T[i]):
            u_p = T[i][p]
            for s in S[i]:
                q = s[p]
                uq_inv = Tinv[i].get(q)
                if uq_inv is None:
                    uq_inv = Tinv[i][q] = _inv(T[i][q])
                sch = _mul(_mul(u_p, s), uq_inv)
                if _is_identity(sch):
                    continue
                h = sch
                j = i + 1
                while j < len(base):
                    b = h[base[j]]
                    u = T[j].get(b)
                    if u is None:
                        break
                    ui = Tinv[j].get(b)
                    if ui is None:
                        ui = Tinv[j][b] = _inv(u)
                    h = _mul(h, ui)
                    j += 1
                if j < len(base) or not _is_identity(h):
                    if j == len(base):
                        base.append(next(k for k in range(degree) if h[k] != k))
                        S.append([])
                        T.append({base[-1]: tuple(range(degree))})
                        Tinv.append({})
                    for l in range(i + 1, j + 1):
                        S[l].append(h)
                        T[l] = _orbit_transversal(S[l], base[l], degree)
                        Tinv[l] = {}
                    i = j
                    restart = True
                    break
            if restart:
                break
        if not restart:
            i -= 1
    return _Chain(degree, base, S, T)


# ---------------------------------------------------------------------------


class PermGroup:
    """A permutation group of fixed degree given by generators.

    The stabilizer chain and the element list are computed lazily and
    cached; instances are otherwise immutable.
    """

    def __init__(self, degree: int, generators: Iterable[Sequence[int]] = (), *,
                 cap: int = DEFAULT_CAP, _chain: _Chain | None = None):
        if degree < 1:
            raise ValueError("degree must be positive")
        gens = []
        for g in generators:
            if len(g) != degree:
                raise ValueError(f"generator of degree {len(g)} in a group of degree {degree}")
            gens.append(Perm(g) if not isinstance(g, Perm) else g)
        self.degree = degree
        self.generators = tuple(dict.fromkeys(gens))
        self.cap = cap
        self._chain = _chain
        self._elements = None
        self._element_set = None

    # -- chain-backed services -------------------------------------------------

    @property
    def chain(self) -> _Chain:
        if self._chain is None:
            self._chain = schreier_sims(self.generators, self.degree)
        return self._chain

    def chain_with_base(self, prefix: Sequence[int]) -> _Chain:
        if list(self.chain.base[: len(prefix)]) == list(prefix):
            return self.chain
        strong = list(dict.fromkeys(g for level in self.chain.gens for g in level))
        return schreier_sims(strong or self.generators, self.degree, prefix)

    def order(self) -> int:
        if self._elements is not None:
            return len(self._elements)
        return self.chain.order

    def __len__(self):
        return self.order()

    def __contains__(self, g) -> bool:
        if len(g) != self.degree:
            return False
        if self._element_set is not None:
            return tuple(g) in self._element_set
        return self.chain.contains(g)

    def identity(self) -> Perm:
        return Perm.identity(self.degree)

    @property
    def elements(self) -> list[Perm]:
        if self._elements is None:
            n = self.order()
            if n > self.cap:
                raise GroupTooLarge(f"group of order {n} exceeds the materialization cap {self.cap}")
            self._elements = [Perm._trusted(g) for g in self.chain.elements()]
        return self._elements

    @property
    def element_set(self) -> frozenset:
        if self._element_set is None:
            self._element_set = frozenset(self.elements)
        return self._element_set

    def key(self) -> tuple:
        """Canonical identity of the subgroup: its sorted element list."""
        return tuple(sorted(self.elements))

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and all(g in other for g in self.generators)

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self.order()}, ngens={len(self.generators)})"


def closure(generators: Iterable[Sequence[int]], cap: int = DEFAULT_CAP, *,
            degree: int | None = None, fallback: bool = True) -> PermGroup:
    """The group generated by ``generators``.

    Elements are materialized when the order is at most ``cap``.  Above it the
    order is still exact (stabilizer chain), unless ``fallback`` is False, in
    which case GroupTooLarge is raised.
    """
    gens = [tuple(g) for g in generators]
    degrees = {len(g) for g in gens}
    if len(degrees) > 1:
        raise ValueError(f"generators of mixed degree: {sorted(degrees)}")
    if degree is None:
        if not gens:
            raise ValueError("degree needed for an empty generating set")
        degree = degrees.pop()
    elif degrees and degrees != {degree}:
        raise ValueError("generator degree does not match the requested degree")
    G = PermGroup(degree, gens, cap=cap)
    if G.order() <= cap:
        G.elements
    elif not fallback:
        raise GroupTooLarge(f"group of order {G.order()} exceeds cap {cap}")
    return G


def order(group: PermGroup) -> int:
    return group.order()


def orbit(group: PermGroup, point: int) -> set[int]:
    _check_point(group, point)
    seen = {point}
    queue = [point]
    for p in queue:
        for g in group.generators:
            q = g[p]
            if q not in seen:
                seen.add(q)
                queue.append(q)
    return seen


def orbits(group: PermGroup) -> list[list[int]]:
    """All orbits, each sorted, listed by smallest point."""
    out = []
    seen = set()
    for p in range(group.degree):
        if p not in seen:
            o = sorted(orbit(group, p))
            seen.update(o)
            out.append(o)
    return out


def transversal(group: PermGroup, point: int) -> dict[int, Perm]:
    """For every q in the orbit of ``point``, an element mapping point to q."""
    ch = group.chain_with_base([point])
    return {q: Perm._trusted(u) for q, u in ch.trans[0].items()}


def stabilizer(group: PermGroup, point: int) -> PermGroup:
    _check_point(group, point)
    ch = group.chain_with_base([point])
    sub = ch.tail(1)
    gens = list(dict.fromkeys(g for level in sub.gens for g in level))
    return PermGroup(group.degree, gens, cap=group.cap, _chain=sub)


def pointwise_stabilizer(group: PermGroup, points: Sequence[int]) -> PermGroup:
    for p in points:
        _check_point(group, p)
    ch = group.chain_with_base(list(points))
    sub = ch.tail(len(points))
    gens = list(dict.fromkeys(g for level in sub.gens for g in level))
    return PermGroup(group.degree, gens, cap=group.cap, _chain=sub)


def _check_point(group, point):
    if not 0 <= point < group.degree:
        raise IndexError(f"point {point} out of range for degree {group.degree}")


def _check_contained(ambient, *subs):
    for H in subs:
        if not H.is_subgroup_of(ambient):
            raise ValueError("subgroup is not contained in the ambient group")


def conjugate_subgroup(H: PermGroup, g: Sequence[int]) -> PermGroup:
    return PermGroup(H.degree, [Perm._trusted(_conj(h, g)) for h in H.generators], cap=H.cap)


def are_conjugate_subgroups(ambient: PermGroup, H1: PermGroup, H2: PermGroup) -> Perm | None:
    """First g in ambient (in element order) with g^-1 H1 g == H2, or None."""
    _check_contained(ambient, H1, H2)
    if H1.order() != H2.order():
        return None
    for g in ambient.elements:
        if all(_conj(h, g) in H2 for h in H1.generators):
            return g
    return None


def is_normal(ambient: PermGroup, H: PermGroup) -> bool:
    _check_contained(ambient, H)
    return all(_conj(h, g) in H for g in ambient.generators for h in H.generators)


def is_transitive(group: PermGroup) -> bool:
    return len(orbit(group, 0)) == group.degree


def is_regular(group: PermGroup) -> bool:
    return is_transitive(group) and group.order() == group.degree


# ---------------------------------------------------------------------------
# regular subgroups


def _dihedral_partner(x, n):
    """The involution y with yxy = x^-1 sending 0 to min of the second x-cycle.

    ``x`` must be semiregular of order n with two cycles (so degree 2n).
    Returns None otherwise.
    """
    N = len(x)
    o1 = [0]
    p = x[0]
    while p != 0:
        o1.append(p)
        p = x[p]
    if len(o1) != n:
        return None
    in_o1 = set(o1)
    w = next(i for i in range(N) if i not in in_o1)
    o2 = [w]
    p = x[w]
    while p != w:
        o2.append(p)
        p = x[p]
    if len(o2) != n or len(o1) + len(o2) != N:
        return None
    y = [0] * N
    for k in range(n):
        p = o1[k]
        q = o2[(-k) % n]
        y[p] = q
        y[q] = p
    return tuple(y)


def _dihedral_elements(x, y, n):
    els = []
    g = tuple(range(len(x)))
    for _ in range(n):
        els.append(g)
        els.append(_mul(g, y))
        g = _mul(g, x)
    return els


def dihedral_from_rotation(x, n: int, ambient_contains) -> PermGroup | None:
    """The unique regular dihedral group of order 2n with rotation x, if inside the ambient."""
    y = _dihedral_partner(x, n)
    if y is None or not ambient_contains(y):
        return None
    G = PermGroup(len(x), [x, y])
    G._elements = [Perm._trusted(e) for e in _dihedral_elements(x, y, n)]
    return G


def _is_full_cycle(x):
    k = 1
    p = x[0]
    while p != 0:
        p = x[p]
        k += 1
    return k == len(x)


def cyclic_from_generator(x) -> PermGroup:
    N = len(x)
    els = [tuple(range(N))]
    for _ in range(N - 1):
        els.append(_mul(els[-1], x))
    G = PermGroup(N, [x])
    G._elements = [Perm._trusted(e) for e in els]
    return G


def regular_dihedral_subgroups(ambient: PermGroup, two_n: int) -> list[PermGroup]:
    """All regular subgroups of ``ambient`` isomorphic to the dihedral group of order two_n.

    Each returned group carries generators (x, y): x of order n, y an
    involution with y x y = x^-1.  Duplicates (same element set) are removed.
    """
    if ambient.degree != two_n or two_n % 2:
        raise ValueError("ambient degree must equal two_n (even)")
    n = two_n // 2
    if n < 3:
        raise ValueError("dihedral groups need n >= 3 here")
    found = {}
    contains = ambient.__contains__
    for x in ambient.elements:
        if x[0] == 0:
            continue
        X = dihedral_from_rotation(tuple(x), n, contains)
        if X is not None:
            found.setdefault(X.key(), X)
    return list(found.values())


def regular_cyclic_subgroups(ambient: PermGroup, n: int) -> list[PermGroup]:
    """Regular cyclic subgroups of order n (degree n), or the order-n rotation
    subgroups of the regular dihedral subgroups (degree 2n)."""
    found = {}
    if ambient.degree == n:
        for x in ambient.elements:
            if n == 1 or (x[0] != 0 and _is_full_cycle(x)):
                C = cyclic_from_generator(tuple(x))
                found.setdefault(C.key(), C)
    elif ambient.degree == 2 * n:
        for X in regular_dihedral_subgroups(ambient, 2 * n):
            C = cyclic_from_generator(tuple(X.generators[0]))
            found.setdefault(C.key(), C)
    else:
        raise ValueError("ambient degree must be n or 2n")
    return list(found.values())


# ---------------------------------------------------------------------------
# block systems


def _block_images(group: PermGroup, partition: Partition):
    where = partition.block_of()
    if len(where) != group.degree:
        raise ValueError("partition degree differs from group degree")
    images = []
    for g in group.generators:
        img = []
        for b in partition.blocks:
            targets = {where[g[x]] for x in b}
            if len(targets) != 1:
                raise ValueError("partition is not invariant under the group")
            t = targets.pop()
            if len(partition.blocks[t]) != len(b):
                raise ValueError("partition is not invariant under the group")
            img.append(t)
        images.append(tuple(img))
    return images


def induced_block_action(group: PermGroup, partition: Partition) -> PermGroup:
    """The permutation group induced on block indices."""
    images = _block_images(group, partition)
    return PermGroup(len(partition.blocks), images, cap=group.cap)


def kernel_on_partition(group: PermGroup, partition: Partition) -> PermGroup:
    """Elements fixing every block setwise.

    Computed as a pointwise stabilizer in the action on points plus blocks,
    so the group is never materialized.
    """
    images = _block_images(group, partition)
    N = group.degree
    B = len(partition.blocks)
    ext = [tuple(g) + tuple(N + t for t in img) for g, img in zip(group.generators, images)]
    ch = schreier_sims(ext, N + B, list(range(N, N + B)))
    sub = ch.tail(B)
    gens = list(dict.fromkeys(g[:N] for level in sub.gens for g in level))
    return PermGroup(N, gens, cap=group.cap)


def element_exponent(group: PermGroup) -> int:
    e = 1
    for g in group.elements:
        k = g.order()
        e = e * k // gcd(e, k)
    return e


def symmetric_group(degree: int) -> PermGroup:
    gens = []
    if degree > 1:
        gens.append(Perm.from_cycles(degree, (0, 1)))
        gens.append(Perm(list(range(1, degree)) + [0]))
    return PermGroup(degree, gens)


def brute_force_closure(generators: Sequence[Sequence[int]], degree: int) -> set:
    """Breadth-first closure; only for small groups and for testing."""
    ident = tuple(range(degree))
    seen = {ident}
    queue = [ident]
    gens = [tuple(g) for g in generators]
    for h in queue:
        for g in gens:
            k = _mul(h, g)
            if k not in seen:
                seen.add(k)
                queue.append(k)
    return seen


def order_divides_factorial(group: PermGroup) -> bool:
    return factorial(group.degree) % group.order() == 0


__all__ = [
    "DEFAULT_CAP", "GroupTooLarge", "Perm", "PermGroup", "Partition", "closure", "order",
    "orbit", "orbits", "transversal", "stabilizer", "pointwise_stabilizer",
    "are_conjugate_subgroups", "is_normal", "is_transitive", "is_regular",
    "regular_dihedral_subgroups", "regular_cyclic_subgroups", "kernel_on_partition",
    "induced_block_action", "conjugate_subgroup", "element_exponent", "symmetric_group",
    "brute_force_closure", "dihedral_from_rotation", "cyclic_from_generator",
]
