"""Build an explaining haplotype matrix for an accepted genotype matrix."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .decide import Verdict, decide_dpph, decide_pph, find_odd_weight_cycle
from .errors import AnchorMissing, NotAdmitting, OddCycle
from .matrix import GenotypeMatrix, HaplotypeMatrix, pph_to_dpph, unflip_haplotypes
from .resolution import ResolutionAnalysis, ResolutionGraph, analyze


@dataclass(frozen=True)
class ParityLabeling:
    anchor: int
    parity: dict[int, int]

    def __getitem__(self, v: int) -> int:
        return self.parity[v]


def augment_graph(G: ResolutionGraph) -> ResolutionGraph:
    """Connect every component missing the anchor to it by a 0-edge.

    The component's smallest vertex is the attachment point.
    """
    if G.is_empty:
        return G
    if G.anchor not in G.vertices:
        raise AnchorMissing(f"anchor column {G.anchor + 1} is not a vertex")
    if find_odd_weight_cycle(G) is not None:
        raise OddCycle(f"G{G.anchor + 1} has an odd-weight cycle")
    adj = _adjacency(G)
    seen = _component(adj, G.anchor)
    extra = set()
    for v in sorted(G.vertices):
        if v in seen:
            continue
        seen |= _component(adj, v)
        extra.add((min(v, G.anchor), max(v, G.anchor), 0))
    if not extra:
        return G
    return ResolutionGraph(G.anchor, G.vertices, G.edges | extra)


def _adjacency(G: ResolutionGraph) -> dict[int, list[tuple[int, int]]]:
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in G.vertices}
    for k, l, w in G.sorted_edges():
        adj[k].append((l, w))
        adj[l].append((k, w))
    return adj


def _component(adj, start) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for v, _ in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return seen


def parity_labels(G: ResolutionGraph) -> ParityLabeling:
    """Parity of the path weight from the anchor to every vertex."""
    if G.is_empty:
        return ParityLabeling(G.anchor, {})
    if G.anchor not in G.vertices:
        raise AnchorMissing(f"anchor column {G.anchor + 1} is not a vertex")
    adj = _adjacency(G)
    parity = {G.anchor: 0}
    queue = deque([G.anchor])
    while queue:
        u = queue.popleft()
        for v, w in adj[u]:
            p = parity[u] ^ w
            if v not in parity:
                parity[v] = p
                queue.append(v)
            elif parity[v] != p:
                raise OddCycle(f"G{G.anchor + 1} has an odd-weight cycle through {v + 1}")
    if len(parity) != len(G.vertices):
        raise ValueError(f"G{G.anchor + 1} is not connected; augment it first")
    return ParityLabeling(G.anchor, parity)


def haplotypes_from_analysis(analysis: ResolutionAnalysis) -> HaplotypeMatrix:
    A = analysis.matrix
    g = A.entries
    h = np.where(g == 2, 0, g).astype(np.uint8)
    h2 = h.copy()
    labels = {
        i: parity_labels(augment_graph(analysis.graphs[i]))
        for i in sorted(set(analysis.partition.owner.values()))
    }
    for r, owner in analysis.partition.owner.items():
        parity = labels[owner].parity
        cols = np.flatnonzero(g[r] == 2)
        bits = np.fromiter((parity[c] for c in cols), dtype=np.uint8, count=len(cols))
        h[r, cols] = bits
        h2[r, cols] = bits ^ 1
    out = np.empty((2 * A.n_rows, A.n_cols), dtype=np.uint8)
    out[0::2] = h
    out[1::2] = h2
    return HaplotypeMatrix(out)


def construct_haplotypes_dpph(A: GenotypeMatrix, verdict: Verdict | None = None) -> HaplotypeMatrix:
    """Haplotypes explaining ``A`` that satisfy the three-gamete condition.

    Raises :class:`NotAdmitting` when ``A`` is rejected.
    """
    if verdict is None:
        verdict = decide_dpph(A)
    if not verdict.admits:
        raise NotAdmitting(verdict)
    return haplotypes_from_analysis(analyze(A))


def construct_haplotypes_pph(A: GenotypeMatrix, verdict: Verdict | None = None) -> HaplotypeMatrix:
    """Haplotypes explaining ``A`` that satisfy the four-gamete condition."""
    flipped, flips = pph_to_dpph(A)
    if verdict is None:
        verdict = decide_pph(A, route="parity")
    if not verdict.admits:
        raise NotAdmitting(verdict)
    return unflip_haplotypes(haplotypes_from_analysis(analyze(flipped)), flips)


def construct_haplotypes(A: GenotypeMatrix, directed: bool) -> HaplotypeMatrix:
    return construct_haplotypes_dpph(A) if directed else construct_haplotypes_pph(A)
