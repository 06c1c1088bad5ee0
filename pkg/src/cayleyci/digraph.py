"""Dense loop-free digraphs, Cayley digraphs, quotients and lexicographic products.

A digraph is a boolean adjacency matrix: ``adj[u, v]`` is True when
``(u, v)`` is an arc.  The diagonal is always False.
"""

from __future__ import annotations

from collections import deque
from functools import cached_property
from typing import Iterable, TextIO

import numpy as np

from .grouplib import Elem, GroupSpec
from .permgroup import Partition


class Digraph:
    def __init__(self, adj):
        a = np.array(adj, dtype=bool)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise ValueError("adjacency must be a nonempty square matrix")
        if a.diagonal().any():
            raise ValueError("loops are not allowed")
        a.setflags(write=False)
        self.adj = a

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> "Digraph":
        a = np.zeros((n, n), dtype=bool)
        for u, v in arcs:
            if u == v:
                raise ValueError(f"loop at {u}")
            a[u, v] = True
        return cls(a)

    @property
    def vertex_count(self) -> int:
        return self.adj.shape[0]

    def __len__(self):
        return self.vertex_count

    def arcs(self) -> list[tuple[int, int]]:
        return [(int(u), int(v)) for u, v in zip(*np.nonzero(self.adj))]

    def arc_count(self) -> int:
        return int(self.adj.sum())

    @cached_property
    def out_lists(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(v) for v in np.flatnonzero(row)) for row in self.adj)

    @cached_property
    def in_lists(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(v) for v in np.flatnonzero(col)) for col in self.adj.T)

    @cached_property
    def out_masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << v for v in vs) for vs in self.out_lists)

    @cached_property
    def in_masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << v for v in vs) for vs in self.in_lists)

    def relabel(self, perm) -> "Digraph":
        """The digraph with arc (perm[u], perm[v]) for every arc (u, v)."""
        p = np.asarray(perm)
        a = np.zeros_like(self.adj)
        a[np.ix_(p, p)] = self.adj
        return Digraph(a)

    def is_automorphism(self, perm) -> bool:
        outs = self.out_masks
        for u, targets in enumerate(self.out_lists):
            m = 0
            for v in targets:
                m |= 1 << perm[v]
            if m != outs[perm[u]]:
                return False
        return True

    def induced(self, vertices: Iterable[int]) -> "Digraph":
        vs = sorted(vertices)
        return Digraph(self.adj[np.ix_(vs, vs)])

    def __eq__(self, other):
        return isinstance(other, Digraph) and np.array_equal(self.adj, other.adj)

    def __hash__(self):
        return hash((self.vertex_count, self.adj.tobytes()))

    def __repr__(self):
        return f"Digraph(vertices={self.vertex_count}, arcs={self.arc_count()})"


# ---------------------------------------------------------------------------


def cayley(spec: GroupSpec, S: Iterable[Elem]) -> Digraph:
    """Cay(G, S): arc x -> y iff y x^-1 in S, i.e. y = s x."""
    S = [spec.index(Elem(*g)) for g in S]
    if 0 in S:
        raise ValueError("the identity may not lie in the connection set")
    N = spec.order
    table = spec.mul_table
    a = np.zeros((N, N), dtype=bool)
    for x in range(N):
        for s in S:
            a[x, table[s][x]] = True
    return Digraph(a)


def is_graph(g: Digraph) -> bool:
    return bool(np.array_equal(g.adj, g.adj.T))


def _reach(lists, start):
    seen = {start}
    queue = [start]
    for u in queue:
        for v in lists[u]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return seen


def strongly_connected(g: Digraph) -> bool:
    n = g.vertex_count
    return len(_reach(g.out_lists, 0)) == n and len(_reach(g.in_lists, 0)) == n


def weak_components(g: Digraph) -> list[list[int]]:
    und = [set(o) | set(i) for o, i in zip(g.out_lists, g.in_lists)]
    seen = set()
    comps = []
    for v in range(g.vertex_count):
        if v not in seen:
            c = _reach(und, v)
            seen |= c
            comps.append(sorted(c))
    return comps


def neighbors(g: Digraph, v: int, direction: str = "out") -> set[int]:
    if not 0 <= v < g.vertex_count:
        raise IndexError(f"vertex {v} out of range")
    if direction == "out":
        return set(g.out_lists[v])
    if direction == "in":
        return set(g.in_lists[v])
    raise ValueError("direction must be 'in' or 'out'")


def distance_set(g: Digraph, v: int, k: int) -> set[int]:
    """Vertices at distance exactly k from v in a graph."""
    if not is_graph(g):
        raise ValueError("distance layers are defined here for graphs only")
    if not 0 <= v < g.vertex_count:
        raise IndexError(f"vertex {v} out of range")
    dist = {v: 0}
    queue = deque([v])
    while queue:
        u = queue.popleft()
        if dist[u] == k:
            continue
        for w in g.out_lists[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return {u for u, d in dist.items() if d == k}


def quotient(g: Digraph, partition: Partition) -> Digraph:
    """Block digraph: (B1, B2) an arc iff B1 != B2 and some arc runs from B1 to B2."""
    if partition.degree != g.vertex_count:
        raise ValueError("partition does not cover the vertex set")
    where = np.array(partition.block_of())
    k = len(partition.blocks)
    a = np.zeros((k, k), dtype=bool)
    us, vs = np.nonzero(g.adj)
    a[where[us], where[vs]] = True
    np.fill_diagonal(a, False)
    return Digraph(a)


def lex_product(X: Digraph, Y: Digraph) -> Digraph:
    """X[Y] on vertices (x, y) -> x*|V(Y)| + y."""
    ny = Y.vertex_count
    a = np.kron(X.adj, np.ones((ny, ny), dtype=bool)) | np.kron(np.eye(X.vertex_count, dtype=bool), Y.adj)
    return Digraph(a)


def named(kind: str, *sizes: int) -> Digraph:
    """cycle n, directed_cycle n, complete n, complete_bipartite m n,
    oriented_complete_bipartite m n, empty m, heawood."""
    if any(s < 1 for s in sizes):
        raise ValueError("sizes must be positive")
    if kind == "cycle":
        (n,) = sizes
        arcs = set()
        for i in range(n):
            j = (i + 1) % n
            if i != j:
                arcs |= {(i, j), (j, i)}
        return Digraph.from_arcs(n, arcs)
    if kind == "directed_cycle":
        (n,) = sizes
        return Digraph.from_arcs(n, [(i, (i + 1) % n) for i in range(n) if n > 1])
    if kind == "complete":
        (n,) = sizes
        return Digraph(~np.eye(n, dtype=bool))
    if kind in ("complete_bipartite", "oriented_complete_bipartite"):
        m, n = sizes
        arcs = []
        for i in range(m):
            for j in range(m, m + n):
                arcs.append((i, j))
                if kind == "complete_bipartite":
                    arcs.append((j, i))
        return Digraph.from_arcs(m + n, arcs)
    if kind == "empty":
        (m,) = sizes
        return Digraph(np.zeros((m, m), dtype=bool))
    if kind == "heawood":
        # incidence graph of the Fano plane: points 0..6, lines {i, i+1, i+3}
        arcs = []
        for i in range(7):
            for p in (i, (i + 1) % 7, (i + 3) % 7):
                arcs += [(p, 7 + i), (7 + i, p)]
        return Digraph.from_arcs(14, arcs)
    raise ValueError(f"unknown named digraph {kind!r}")


def coset_partition(spec: GroupSpec, H: Iterable[Elem]) -> Partition:
    """Right cosets Hg, as vertex blocks in canonical order."""
    Hidx = [spec.index(Elem(*h)) for h in H]
    table = spec.mul_table
    seen = set()
    blocks = []
    for g in range(spec.order):
        if g in seen:
            continue
        block = {table[h][g] for h in Hidx}
        seen |= block
        blocks.append(sorted(block))
    return Partition(blocks, spec.order)


# ---------------------------------------------------------------------------
# text format: first line vertex count, then one "tail head" pair per line


def dumps(g: Digraph) -> str:
    lines = [str(g.vertex_count)] + [f"{u} {v}" for u, v in g.arcs()]
    return "\n".join(lines) + "\n"


def loads(text: str) -> Digraph:
    rows = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    rows = [r for r in rows if r]
    if not rows:
        raise ValueError("empty digraph text")
    try:
        n = int(rows[0])
        arcs = [tuple(int(x) for x in r.split()) for r in rows[1:]]
    except ValueError as exc:
        raise ValueError(f"malformed digraph text: {exc}") from None
    for arc in arcs:
        if len(arc) != 2 or not all(0 <= x < n for x in arc):
            raise ValueError(f"bad arc line {arc}")
    return Digraph.from_arcs(n, arcs)


def write(g: Digraph, fh: TextIO) -> None:
    fh.write(dumps(g))


def read(fh: TextIO) -> Digraph:
    return loads(fh.read())
