"""Deciders for (directed) perfect phylogeny haplotyping.

Two independent routes check the resolution graphs for odd-weight cycles:

* ``parity``: a union-find that tracks the parity of each element relative
  to its set representative;
* ``bipartite``: every 0-edge is subdivided, weights are dropped and the
  disjoint union of all graphs is 2-colored by breadth-first search.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Hashable, Iterable, Union

import numpy as np

from .matrix import (
    THREE,
    FlipSet,
    GenotypeMatrix,
    induced_set_genotypes,
    pph_to_dpph,
)
from .ordering import InducedTable
from .resolution import Edge, ResolutionGraph, analyze

ROUTES = ("parity", "bipartite")


class ParityUnionFind:
    """Disjoint sets whose members carry a parity relative to their root."""

    def __init__(self):
        self.parent: dict = {}
        self.parity: dict = {}
        self.rank: dict = {}

    def add(self, x) -> None:
        if x not in self.parent:
            self.parent[x] = x
            self.parity[x] = 0
            self.rank[x] = 0

    def find(self, x) -> tuple[Hashable, int]:
        """Return ``(root, parity of x relative to root)``."""
        path = []
        while self.parent[x] != x:
            path.append(x)
            x = self.parent[x]
        root = x
        # compress, accumulating parities from the top down
        acc = 0
        for y in reversed(path):
            acc ^= self.parity[y]
            self.parity[y] = acc
            self.parent[y] = root
        return root, (self.parity[path[0]] if path else 0)

    def union(self, a, b, parity: int) -> bool:
        """Require ``parity(a) xor parity(b) == parity``; False on conflict."""
        ra, pa = self.find(a)
        rb, pb = self.find(b)
        if ra == rb:
            return (pa ^ pb) == parity
        if self.rank[ra] < self.rank[rb]:
            ra, rb, pa, pb = rb, ra, pb, pa
        self.parent[rb] = ra
        self.parity[rb] = pa ^ pb ^ parity
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return True


def find_odd_weight_cycle(G: ResolutionGraph) -> list[Edge] | None:
    """Return an odd-weight cycle of ``G`` as a closed walk of edges, or None.

    Each returned edge is oriented ``(from, to, weight)`` so consecutive
    edges share endpoints and the last edge ends where the first starts.
    """
    uf = ParityUnionFind()
    forest: dict[int, list[tuple[int, int]]] = {v: [] for v in G.vertices}
    for v in sorted(G.vertices):
        uf.add(v)
    for k, l, w in G.sorted_edges():
        if uf.union(k, l, w):
            forest[k].append((l, w))
            forest[l].append((k, w))
            continue
        path = _forest_path(forest, l, k)
        return path + [(k, l, w)]
    return None


def has_odd_weight_cycle(G: ResolutionGraph) -> bool:
    return find_odd_weight_cycle(G) is not None


def _forest_path(forest, src, dst) -> list[Edge]:
    prev = {src: None}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        if u == dst:
            break
        for v, w in forest[u]:
            if v not in prev:
                prev[v] = (u, w)
                queue.append(v)
    path = []
    u = dst
    while prev[u] is not None:
        p, w = prev[u]
        path.append((p, u, w))
        u = p
    path.reverse()
    return path


@dataclass(frozen=True)
class PlainGraph:
    """Undirected simple graph without weights."""

    vertices: tuple
    edges: tuple

    def __post_init__(self):
        vs = set(self.vertices)
        for a, b in self.edges:
            if a == b:
                raise ValueError(f"self-loop at {a!r}")
            if a not in vs or b not in vs:
                raise ValueError(f"edge {(a, b)!r} has an endpoint outside the vertex set")

    def adjacency(self) -> dict:
        adj = {v: [] for v in self.vertices}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj


def expand_to_bipartite_instance(graphs: Iterable[ResolutionGraph]) -> PlainGraph:
    """Disjoint union of the graphs with every 0-edge replaced by a 2-path.

    Column vertices are named ``(anchor, k)``; subdivision vertices are
    ``(anchor, k, l, "mid")``.
    """
    vertices: list = []
    edges: list = []
    for G in graphs:
        a = G.anchor
        vertices.extend((a, v) for v in sorted(G.vertices))
        for k, l, w in G.sorted_edges():
            if w == 1:
                edges.append(((a, k), (a, l)))
            else:
                mid = (a, k, l, "mid")
                vertices.append(mid)
                edges.append(((a, k), mid))
                edges.append((mid, (a, l)))
    return PlainGraph(tuple(vertices), tuple(edges))


def find_odd_cycle(G: PlainGraph) -> list | None:
    """BFS 2-coloring; on failure return an odd cycle as a vertex list."""
    adj = G.adjacency()
    color: dict = {}
    parent: dict = {}
    for s in G.vertices:
        if s in color:
            continue
        color[s] = 0
        parent[s] = None
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if v not in color:
                    color[v] = color[u] ^ 1
                    parent[v] = u
                    queue.append(v)
                elif color[v] == color[u]:
                    return _close_cycle(parent, u, v)
    return None


def is_bipartite(G: PlainGraph) -> bool:
    return find_odd_cycle(G) is None


def _close_cycle(parent, u, v) -> list:
    up = [u]
    while parent[up[-1]] is not None:
        up.append(parent[up[-1]])
    vp = [v]
    while parent[vp[-1]] is not None:
        vp.append(parent[vp[-1]])
    on_u = {x: i for i, x in enumerate(up)}
    for j, x in enumerate(vp):
        if x in on_u:
            # u ... lca ... v, closed by the edge v-u
            return up[: on_u[x] + 1] + vp[:j][::-1]
    raise AssertionError("BFS trees of one component share a root")


def _cycle_from_plain(cycle: list) -> tuple[int, list[Edge]]:
    """Translate an odd cycle of the expanded graph back into a weighted cycle."""
    anchor = cycle[0][0]
    start = next(i for i, v in enumerate(cycle) if len(v) == 2)
    walk = cycle[start:] + cycle[:start]
    edges = []
    i = 0
    n = len(walk)
    while i < n:
        u = walk[i]
        nxt = walk[(i + 1) % n]
        if len(nxt) == 4:
            edges.append((u[1], walk[(i + 2) % n][1], 0))
            i += 2
        else:
            edges.append((u[1], nxt[1], 1))
            i += 1
    return anchor, edges


@dataclass(frozen=True)
class GametePair:
    """Columns ``i < j`` whose induced set contains {01, 10, 11}."""

    i: int
    j: int

    def describe(self) -> str:
        return f"gamete-pair {self.i + 1} {self.j + 1}"


@dataclass(frozen=True)
class OddCycleWitness:
    """A closed walk of edges in ``G_anchor`` with odd total weight."""

    anchor: int
    edges: tuple[Edge, ...]

    @property
    def weight(self) -> int:
        return sum(w for _, _, w in self.edges)

    def describe(self) -> str:
        parts = " ".join(f"{k + 1}-{l + 1}:{w}" for k, l, w in self.edges)
        return f"odd-cycle {self.anchor + 1} {parts}"


Witness = Union[GametePair, OddCycleWitness]


@dataclass(frozen=True)
class Verdict:
    """Outcome of a decision.

    ``flips`` is set for undirected decisions: the witness then refers to
    the column-complemented matrix.
    """

    admits: bool
    witness: Witness | None = None
    directed: bool = True
    route: str = "parity"
    flips: FlipSet | None = None

    def __post_init__(self):
        if not self.admits and self.witness is None:
            raise ValueError("a rejecting verdict needs a witness")

    def __bool__(self) -> bool:
        return self.admits

    def report(self) -> str:
        return "YES" if self.admits else "NO " + self.witness.describe()


def gamete_precheck(A: GenotypeMatrix, table: InducedTable | None = None) -> tuple[int, int] | None:
    """Smallest pair ``(i, j)`` with {01,10,11} in its induced set, else None."""
    if table is None:
        table = InducedTable(A)
    m = A.n_cols
    if table.table is not None:
        bad = np.triu((table.table & THREE) == THREE, k=1)
        hits = np.argwhere(bad)
        return (int(hits[0][0]), int(hits[0][1])) if len(hits) else None
    for i in range(m):
        for j in range(i + 1, m):
            if table.bits(i, j) & THREE == THREE:
                return i, j
    return None


def _decide(A: GenotypeMatrix, route: str) -> Witness | None:
    if route not in ROUTES:
        raise ValueError(f"unknown route {route!r}; expected one of {ROUTES}")
    analysis = analyze(A)
    pair = gamete_precheck(A, analysis.table)
    if pair is not None:
        return GametePair(*pair)
    if route == "parity":
        for G in analysis.graphs:
            cycle = find_odd_weight_cycle(G)
            if cycle is not None:
                return OddCycleWitness(G.anchor, tuple(cycle))
        return None
    cycle = find_odd_cycle(expand_to_bipartite_instance(analysis.graphs))
    if cycle is None:
        return None
    anchor, edges = _cycle_from_plain(cycle)
    return OddCycleWitness(anchor, tuple(edges))


def decide_dpph(A: GenotypeMatrix, route: str = "parity") -> Verdict:
    """Does ``A`` admit a directed perfect phylogeny (root = all-0 haplotype)?"""
    witness = _decide(A, route)
    return Verdict(witness is None, witness, directed=True, route=route)


def decide_pph(A: GenotypeMatrix, route: str = "bipartite") -> Verdict:
    """Does ``A`` admit a perfect phylogeny?

    Complements columns to obtain an equivalent directed instance and
    decides that.
    """
    flipped, flips = pph_to_dpph(A)
    witness = _decide(flipped, route)
    return Verdict(witness is None, witness, directed=False, route=route, flips=flips)


def decide(A: GenotypeMatrix, directed: bool, route: str = "parity") -> Verdict:
    return decide_dpph(A, route) if directed else decide_pph(A, route)


def check_witness(A: GenotypeMatrix, verdict: Verdict) -> bool:
    """Re-validate a rejection witness from scratch against ``A``."""
    if verdict.admits:
        return False
    target = A if verdict.flips is None else pph_to_dpph(A)[0]
    w = verdict.witness
    if isinstance(w, GametePair):
        if not 0 <= w.i < w.j < A.n_cols:
            return False
        return induced_set_genotypes(target, w.i, w.j).bits & THREE == THREE
    if not w.edges or w.weight % 2 != 1:
        return False
    G = analyze(target).graphs[w.anchor]
    for (k, l, wt), (k2, _, _) in zip(w.edges, w.edges[1:] + w.edges[:1]):
        if l != k2 or not G.has_edge(k, l, wt):
            return False
    return True
