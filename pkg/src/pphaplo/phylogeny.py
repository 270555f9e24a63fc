"""Perfect phylogenetic trees for binary haplotype matrices."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotPerfectPhylogeny
from .matrix import HaplotypeMatrix, four_gamete_check, three_gamete_check


@dataclass(frozen=True)
class PhylogenyTree:
    """Rooted tree with row-labelled nodes and column-labelled edges.

    Node 0 is the root.  ``parent[v]`` is ``None`` only for the root; the
    edge into node ``v`` carries the columns ``edge_labels[v]``.  Nodes may
    be unlabelled.  ``haplotypes[v]`` is the binary string at node ``v``.
    """

    parent: tuple[int | None, ...]
    node_labels: dict[int, frozenset[int]]
    edge_labels: dict[int, frozenset[int]]
    haplotypes: tuple[str, ...]
    directed: bool = False
    root: int = 0

    @property
    def n_nodes(self) -> int:
        return len(self.parent)

    def children(self, v: int) -> list[int]:
        return [u for u, p in enumerate(self.parent) if p == v]

    def node_of_row(self) -> dict[int, int]:
        return {r: v for v, rows in self.node_labels.items() for r in rows}

    def edges(self) -> list[tuple[int, int]]:
        return [(p, v) for v, p in enumerate(self.parent) if p is not None]


@dataclass(frozen=True)
class TreeCheck:
    ok: bool
    condition: int | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def build_tree(B: HaplotypeMatrix, directed: bool = False) -> PhylogenyTree:
    """Assemble the perfect phylogeny of ``B``.

    Identical columns share an edge; the 1-sets of the remaining columns
    form a laminar family whose containment order gives the tree.  With
    ``directed`` the root carries the all-0 haplotype, otherwise the tree is
    rooted at the first row.  Columns that never separate two nodes label a
    pendant edge to an unlabelled leaf.
    """
    check = three_gamete_check if directed else four_gamete_check
    pair = check(B)
    if pair is not None:
        raise NotPerfectPhylogeny(pair)
    X = B.entries if directed else B.entries ^ B.entries[0]
    parent, edge_cols, row_node, node_bits = _rooted_tree(X.astype(bool))
    if not directed:
        node_bits = node_bits ^ B.entries[0].astype(bool)
    node_labels: dict[int, set[int]] = {}
    for r, v in enumerate(row_node):
        node_labels.setdefault(v, set()).add(r)
    haplotypes = tuple("".join("1" if x else "0" for x in row) for row in node_bits)
    return PhylogenyTree(
        parent=tuple(parent),
        node_labels={v: frozenset(rs) for v, rs in sorted(node_labels.items())},
        edge_labels={v: frozenset(cs) for v, cs in edge_cols.items()},
        haplotypes=haplotypes,
        directed=directed,
    )


def _rooted_tree(X: np.ndarray):
    n, m = X.shape
    classes: dict[bytes, list[int]] = {}
    for c in range(m):
        classes.setdefault(np.packbits(X[:, c]).tobytes(), []).append(c)
    groups = sorted(classes.values(), key=lambda cols: (-int(X[:, cols[0]].sum()), cols[0]))
    constant = [cols for cols in groups if not X[:, cols[0]].any()]
    groups = [cols for cols in groups if X[:, cols[0]].any()]

    K = np.stack([X[:, cols[0]] for cols in groups], axis=1) if groups else np.zeros((n, 0), bool)
    parent: list[int | None] = [None] + [0] * len(groups)
    edge_cols = {k + 1: cols for k, cols in enumerate(groups)}
    row_node = [0] * n
    for r in range(n):
        chain = np.flatnonzero(K[r])
        prev = 0
        for k in chain:
            parent[k + 1] = prev
            prev = k + 1
        row_node[r] = prev

    node_bits = np.zeros((len(parent), m), dtype=bool)
    for v in range(1, len(parent)):
        # classes are sorted by decreasing size, so parents precede children
        node_bits[v] = node_bits[parent[v]]
        node_bits[v, edge_cols[v]] = True
    if constant:
        leaf = len(parent)
        parent.append(0)
        edge_cols[leaf] = constant[0]
        node_bits = np.vstack([node_bits, node_bits[0]])
        node_bits[leaf, constant[0]] = True
    return parent, edge_cols, row_node, node_bits


def verify_tree(B: HaplotypeMatrix, T: PhylogenyTree) -> TreeCheck:
    """Check the three defining conditions of a perfect phylogeny directly.

    For a directed tree the all-0 haplotype is treated as an extra row
    placed at the root.  Condition 3 is checked over every pair of distinct
    (haplotype, node) combinations.
    """
    n, m = B.shape
    nodes = range(T.n_nodes)

    # tree shape
    roots = [v for v in nodes if T.parent[v] is None]
    if roots != [T.root]:
        return TreeCheck(False, 0, f"expected a single root {T.root}, found {roots}")
    for v in nodes:
        seen = set()
        u = v
        while u is not None:
            if u in seen:
                return TreeCheck(False, 0, f"cycle through node {v}")
            seen.add(u)
            u = T.parent[u]

    # condition 1
    where: dict[int, int] = {}
    for v, rows in T.node_labels.items():
        for r in rows:
            if not 0 <= r < n:
                return TreeCheck(False, 1, f"label {r + 1} is not a row")
            if r in where:
                return TreeCheck(False, 1, f"row {r + 1} labels nodes {where[r]} and {v}")
            where[r] = v
    missing = [r + 1 for r in range(n) if r not in where]
    if missing:
        return TreeCheck(False, 1, f"rows {missing} label no node")

    # condition 2
    owner: dict[int, int] = {}
    for v in nodes:
        if v == T.root:
            continue
        cols = T.edge_labels.get(v, frozenset())
        if not cols:
            return TreeCheck(False, 2, f"edge into node {v} has no column")
        for c in cols:
            if not 0 <= c < m:
                return TreeCheck(False, 2, f"label {c + 1} is not a column")
            if c in owner:
                return TreeCheck(False, 2, f"column {c + 1} labels two edges")
            owner[c] = v
    if T.root in T.edge_labels and T.edge_labels[T.root]:
        return TreeCheck(False, 2, "the root has a labelled parent edge")
    unlabelled = [c + 1 for c in range(m) if c not in owner]
    if unlabelled:
        return TreeCheck(False, 2, f"columns {unlabelled} label no edge")

    # condition 3: path columns between u and v = symmetric difference of root paths
    to_root = np.zeros((T.n_nodes, m), dtype=bool)
    for v in nodes:
        u = v
        while u != T.root:
            to_root[v, list(T.edge_labels[u])] = True
            u = T.parent[u]
    haps = B.entries.astype(bool)
    at = np.array([where[r] for r in range(n)])
    if T.directed:
        haps = np.vstack([haps, np.zeros((1, m), dtype=bool)])
        at = np.append(at, T.root)
    combos = np.unique(np.column_stack([haps.astype(np.int64), at]), axis=0)
    h, pos = combos[:, :m].astype(bool), combos[:, m]
    paths = to_root[pos]
    for a in range(len(combos)):
        differ = h ^ h[a]
        on_path = paths ^ paths[a]
        bad = np.argwhere(differ != on_path)
        if len(bad):
            b, c = bad[0]
            return TreeCheck(
                False, 3,
                f"column {c + 1}: haplotypes at nodes {pos[a]} and {pos[b]} "
                f"{'differ' if differ[b, c] else 'agree'} but the column is "
                f"{'on' if on_path[b, c] else 'off'} their path",
            )
    return TreeCheck(True)


def tree_to_dot(T: PhylogenyTree, name: str = "phylogeny") -> str:
    """DOT text for a tree; rows and columns are printed 1-based.

    Nodes appear in order of their smallest row label, unlabelled nodes last.
    """
    def key(v):
        rows = T.node_labels.get(v)
        return (0, min(rows), v) if rows else (1, 0, v)

    lines = [f"digraph {name} {{", "  node [shape=box];"]
    for v in sorted(range(T.n_nodes), key=key):
        rows = sorted(r + 1 for r in T.node_labels.get(v, ()))
        text = ("rows " + ",".join(map(str, rows))) if rows else "-"
        if v == T.root:
            text = "root\\n" + text
        lines.append(f'  n{v} [label="{text}\\n{T.haplotypes[v]}"];')
    for v in sorted(range(T.n_nodes), key=key):
        p = T.parent[v]
        if p is None:
            continue
        cols = ",".join(str(c + 1) for c in sorted(T.edge_labels[v]))
        lines.append(f'  n{p} -> n{v} [label="{cols}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
