"""Automorphism groups, canonical forms and isomorphisms of digraphs.

The search is the usual individualization-refinement scheme:

* colorings are ordered partitions refined to equitable ones using, for each
  vertex, the (out-count, in-count) of neighbours in a splitter cell;
* the target cell is the first smallest non-singleton cell and its vertices
  are individualized in increasing order;
* each node carries a refinement-trace invariant; a leaf's key is
  (trace sequence, relabeled adjacency) and the canonical leaf is the
  largest key;
* automorphisms are found by comparing leaves with the first and the best
  leaf, pruning sibling branches in the same orbit on the first path and
  jumping back to the common ancestor after each discovery.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .digraph import Digraph
from .permgroup import Perm, PermGroup, schreier_sims

ENGINE_LIMIT = 64


class EngineLimitExceeded(ValueError):
    pass


@dataclass(frozen=True)
class Certificate:
    vertex_count: int
    arcs: tuple[tuple[int, int], ...]

    def digraph(self) -> Digraph:
        return Digraph.from_arcs(self.vertex_count, self.arcs)


@dataclass(frozen=True)
class EngineResult:
    generators: tuple[Perm, ...]
    order: int
    labeling: Perm          # vertex -> canonical position
    certificate: Certificate
    base: tuple[int, ...]
    nodes: int


def _refine(N, outm, inm, lab, cend, pending, ncells):
    trace = []
    while pending and ncells < N:
        w = min(pending)
        pending.discard(w)
        wmask = 0
        for v in lab[w:cend[w]]:
            wmask |= 1 << v
        s = 0
        while s < N:
            e = cend[s]
            if e - s > 1:
                groups = {}
                for v in lab[s:e]:
                    k = ((outm[v] & wmask).bit_count(), (inm[v] & wmask).bit_count())
                    groups.setdefault(k, []).append(v)
                if len(groups) > 1:
                    keys = sorted(groups)
                    was_pending = s in pending
                    frags = []
                    pos = s
                    for k in keys:
                        vs = groups[k]
                        lab[pos:pos + len(vs)] = vs
                        cend[pos] = pos + len(vs)
                        frags.append((pos, len(vs)))
                        pos += len(vs)
                    ncells += len(keys) - 1
                    trace.append((s, tuple((k, len(groups[k])) for k in keys)))
                    if was_pending:
                        pending.update(p for p, _ in frags)
                    else:
                        big = max(frags, key=lambda f: (f[1], -f[0]))
                        pending.update(p for p, _ in frags if p != big[0])
            s = e
    return hash((ncells, tuple(trace))), ncells


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb


class _Search:
    def __init__(self, g: Digraph):
        self.g = g
        self.N = g.vertex_count
        self.outm = g.out_masks
        self.inm = g.in_masks
        self.outl = g.out_lists
        self.first = None       # (lab, path, invs, key)
        self.best = None
        self.gens = []
        self.orbits = []        # union-find per first-path level
        self.nodes = 0

    def run(self) -> EngineResult:
        N = self.N
        lab = list(range(N))
        cend = [0] * N
        cend[0] = N
        inv, ncells = _refine(N, self.outm, self.inm, lab, cend, {0}, 1)
        self._search(lab, cend, ncells, 0, [], (inv,), True)

        first_path = self.first[1]
        chain = schreier_sims(self.gens, N, first_path)
        best_lab = self.best[0]
        labeling = [0] * N
        for i, v in enumerate(best_lab):
            labeling[v] = i
        key = self.best[3]
        arcs = tuple((i, j) for i, m in enumerate(key) for j in range(N) if m >> j & 1)
        return EngineResult(
            generators=tuple(Perm._trusted(x) for x in self.gens),
            order=chain.order,
            labeling=Perm._trusted(labeling),
            certificate=Certificate(N, arcs),
            base=tuple(chain.base),
            nodes=self.nodes,
        )

    def _leaf_key(self, lab):
        pos = [0] * self.N
        for i, v in enumerate(lab):
            pos[v] = i
        key = []
        for v in lab:
            m = 0
            for w in self.outl[v]:
                m |= 1 << pos[w]
            key.append(m)
        return tuple(key)

    def _add_generator(self, gamma):
        self.gens.append(gamma)
        path = self.first[1]
        f = 0
        while f < len(path) and gamma[path[f]] == path[f]:
            f += 1
        for d in range(min(f, len(path) - 1) + 1):
            uf = self.orbits[d]
            for v in range(self.N):
                uf.union(v, gamma[v])

    @staticmethod
    def _common(a, b):
        c = 0
        while c < len(a) and c < len(b) and a[c] == b[c]:
            c += 1
        return c

    def _leaf(self, lab, path, invs, depth):
        key = self._leaf_key(lab)
        if self.first is None:
            self.first = self.best = (tuple(lab), tuple(path), invs, key)
            self.orbits = [_UnionFind(self.N) for _ in range(len(path) + 1)]
            return depth
        flab, fpath, finvs, fkey = self.first
        if invs == finvs and key == fkey:
            gamma = [0] * self.N
            for i, v in enumerate(flab):
                gamma[v] = lab[i]
            self._add_generator(tuple(gamma))
            return self._common(path, fpath)
        blab, bpath, binvs, bkey = self.best
        if invs == binvs and key == bkey:
            gamma = [0] * self.N
            for i, v in enumerate(blab):
                gamma[v] = lab[i]
            self._add_generator(tuple(gamma))
            return self._common(path, bpath)
        if (invs, key) > (binvs, bkey):
            self.best = (tuple(lab), tuple(path), invs, key)
        return depth

    def _search(self, lab, cend, ncells, depth, path, invs, on_first):
        self.nodes += 1
        N = self.N
        if ncells == N:
            return self._leaf(lab, path, invs, depth)
        # first smallest non-singleton cell
        s = 0
        ts, tsize = -1, N + 1
        while s < N:
            size = cend[s] - s
            if 1 < size < tsize:
                ts, tsize = s, size
            s = cend[s]
        e = ts + tsize
        cell = sorted(lab[ts:e])
        explored = []
        for idx, v in enumerate(cell):
            if on_first and explored and self.orbits:
                uf = self.orbits[depth]
                rv = uf.find(v)
                if any(uf.find(u) == rv for u in explored):
                    continue
            lab2 = lab[:]
            cend2 = cend[:]
            i = lab2.index(v, ts, e)
            lab2[i], lab2[ts] = lab2[ts], lab2[i]
            cend2[ts] = ts + 1
            cend2[ts + 1] = e
            inv, nc = _refine(N, self.outm, self.inm, lab2, cend2, {ts}, ncells + 1)
            child_invs = invs + (inv,)
            explored.append(v)
            if self.first is not None:
                finvs = self.first[2]
                if child_invs != finvs[:len(child_invs)]:
                    binvs = self.best[2]
                    m = min(len(child_invs), len(binvs))
                    if child_invs[:m] < binvs[:m]:
                        continue
            t = self._search(lab2, cend2, nc, depth + 1, path + [v], child_invs,
                             on_first and idx == 0)
            if t < depth:
                return t
        return depth


def _check(g: Digraph):
    if g.vertex_count > ENGINE_LIMIT:
        raise EngineLimitExceeded(f"{g.vertex_count} vertices exceeds the engine limit {ENGINE_LIMIT}")


@lru_cache(maxsize=8192)
def analyze(g: Digraph) -> EngineResult:
    """Run the search once; automorphism group and canonical form come together."""
    _check(g)
    return _Search(g).run()


def automorphism_group(g: Digraph) -> PermGroup:
    res = analyze(g)
    G = PermGroup(g.vertex_count, res.generators)
    G._chain = schreier_sims(res.generators, g.vertex_count, res.base)
    return G


def canonical_form(g: Digraph) -> Certificate:
    return analyze(g).certificate


def canonical_labeling(g: Digraph) -> Perm:
    return analyze(g).labeling


def isomorphism(g1: Digraph, g2: Digraph) -> Perm | None:
    """A vertex bijection phi with (phi[u], phi[v]) an arc of g2 for each arc (u, v) of g1."""
    if g1.vertex_count != g2.vertex_count or g1.arc_count() != g2.arc_count():
        return None
    r1, r2 = analyze(g1), analyze(g2)
    if r1.certificate != r2.certificate:
        return None
    inv2 = r2.labeling.inverse()
    return Perm._trusted(inv2[r1.labeling[u]] for u in range(g1.vertex_count))


def are_isomorphic(g1: Digraph, g2: Digraph) -> bool:
    return isomorphism(g1, g2) is not None
