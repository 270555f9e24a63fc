"""Resolution graphs: per-column multigraphs whose 0/1 edge weights record
forced equal/unequal resolutions of heterozygous column pairs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import BadColumnIndex
from .matrix import BOTH_MIXED, GenotypeMatrix, gamete_bit
from .ordering import GenotypePartition, InducedTable, assign_genotypes

_ELEVEN = gamete_bit(1, 1)

Edge = tuple[int, int, int]


@dataclass(frozen=True)
class ResolutionGraph:
    """Graph over column indices anchored at column ``anchor``.

    Edges are ``(k, l, weight)`` with ``k < l``; a pair may carry both a
    0-edge and a 1-edge.
    """

    anchor: int
    vertices: frozenset[int] = frozenset()
    edges: frozenset[Edge] = frozenset()

    def __post_init__(self):
        for k, l, w in self.edges:
            if not k < l or w not in (0, 1):
                raise ValueError(f"malformed edge {(k, l, w)}")
            if k not in self.vertices or l not in self.vertices:
                raise ValueError(f"edge {(k, l, w)} has an endpoint outside the vertex set")

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def has_edge(self, k: int, l: int, w: int) -> bool:
        return (min(k, l), max(k, l), w) in self.edges


@dataclass
class ResolutionAnalysis:
    """Everything derived from one genotype matrix on the way to a verdict."""

    matrix: GenotypeMatrix
    table: InducedTable
    partition: GenotypePartition
    graphs: list[ResolutionGraph] = field(default_factory=list)


def analyze(A: GenotypeMatrix) -> ResolutionAnalysis:
    table = InducedTable(A)
    partition = assign_genotypes(A, table)
    graphs = _build_graphs(A, partition, table, range(A.n_cols))
    return ResolutionAnalysis(A, table, partition, [graphs[i] for i in range(A.n_cols)])


def build_resolution_graph(
    A: GenotypeMatrix,
    partition: GenotypePartition,
    i: int,
    table: InducedTable | None = None,
) -> ResolutionGraph:
    if not 0 <= i < A.n_cols:
        raise BadColumnIndex(f"column {i + 1} out of range 1..{A.n_cols}")
    if table is None:
        table = InducedTable(A)
    return _build_graphs(A, partition, table, [i])[i]


def build_all_resolution_graphs(A: GenotypeMatrix) -> list[ResolutionGraph]:
    return analyze(A).graphs


def _build_graphs(A, partition, table, anchors) -> dict[int, ResolutionGraph]:
    wanted = set(anchors)
    twos = A.entries == 2
    vertices: dict[int, set[int]] = {i: set() for i in wanted}
    # pair -> owners of the genotypes with 2s at both columns
    pair_owners: dict[tuple[int, int], set[int]] = {}
    wanted_pairs: dict[int, set[tuple[int, int]]] = {i: set() for i in wanted}

    for r, owner in partition.owner.items():
        cols = np.flatnonzero(twos[r]).tolist()
        if owner in wanted:
            vertices[owner].update(cols)
        for pair in combinations(cols, 2):
            pair_owners.setdefault(pair, set()).add(owner)
            if owner in wanted:
                wanted_pairs[owner].add(pair)

    out = {}
    for i in wanted:
        edges = set()
        for k, l in wanted_pairs[i]:
            bits = table.bits(k, l)
            if bits & _ELEVEN or len(pair_owners[(k, l)]) > 1:
                edges.add((k, l, 0))
            if bits & BOTH_MIXED == BOTH_MIXED:
                edges.add((k, l, 1))
        out[i] = ResolutionGraph(i, frozenset(vertices[i]), frozenset(edges))
    return out


def graphs_to_dot(graphs: list[ResolutionGraph], name: str = "resolution") -> str:
    """Render graphs as one undirected DOT graph, one cluster per anchor.

    Columns are printed 1-based; each edge carries its weight as ``w``.
    """
    lines = [f"graph {name} {{"]
    for G in graphs:
        a = G.anchor + 1
        lines.append(f"  subgraph cluster_G{a} {{")
        lines.append(f'    label="G{a}";')
        for v in sorted(G.vertices):
            lines.append(f'    "G{a}_{v + 1}" [label="{v + 1}"];')
        for k, l, w in G.sorted_edges():
            lines.append(f'    "G{a}_{k + 1}" -- "G{a}_{l + 1}" [label="{w}", w={w}];')
        lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"
