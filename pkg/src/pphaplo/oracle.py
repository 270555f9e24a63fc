"""Exhaustive reference solver and planted-instance generator.

The oracle tries every way to phase the heterozygous sites and checks the
gamete condition directly; it shares no code with the graph-based deciders
apart from the matrix types.
"""

from __future__ import annotations

import random
from itertools import product
from typing import Iterator

import numpy as np

from .errors import TooLarge
from .matrix import GenotypeMatrix, HaplotypeMatrix

DEFAULT_CAP = 24


def _row_options(g: tuple[int, ...]) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All haplotype pairs for one genotype, with h = 0 at the first 2-site."""
    sites = [c for c, x in enumerate(g) if x == 2]
    if not sites:
        return [(g, g)]
    options = []
    for rest in product((0, 1), repeat=len(sites) - 1):
        h, h2 = list(g), list(g)
        for c, bit in zip(sites, (0,) + rest):
            h[c] = bit
            h2[c] = 1 - bit
        options.append((tuple(h), tuple(h2)))
    return options


def _forbidden(directed: bool) -> frozenset[tuple[int, int]]:
    if directed:
        return frozenset({(0, 1), (1, 0), (1, 1)})
    return frozenset({(0, 0), (0, 1), (1, 0), (1, 1)})


def _check_cap(A: GenotypeMatrix, cap: int) -> None:
    count = int((A.entries == 2).sum())
    if count > cap:
        raise TooLarge(count, cap)


def _search(rows, order, directed: bool) -> Iterator[dict[int, tuple]]:
    """Depth-first search over phasings, pruning on the first gamete violation."""
    m = len(rows[0])
    pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
    bad = _forbidden(directed)
    options = {r: _row_options(rows[r]) for r in order}
    chosen: dict[int, tuple] = {}

    def extend(seen, haps):
        new = list(seen)
        for p, (i, j) in enumerate(pairs):
            s = new[p]
            for h in haps:
                s = s | {(h[i], h[j])}
            if bad <= s:
                return None
            new[p] = s
        return new

    def go(depth, seen):
        if depth == len(order):
            yield dict(chosen)
            return
        r = order[depth]
        for pair in options[r]:
            nxt = extend(seen, pair)
            if nxt is None:
                continue
            chosen[r] = pair
            yield from go(depth + 1, nxt)
        chosen.pop(r, None)

    yield from go(0, [frozenset()] * len(pairs))


def oracle_decide(A: GenotypeMatrix, directed: bool, cap: int = DEFAULT_CAP) -> bool:
    """True iff some phasing of ``A`` passes the four- (three-) gamete test."""
    _check_cap(A, cap)
    rows = A.rows()
    # most constrained rows first; fixed rows prune everything after them
    order = sorted(range(len(rows)), key=lambda r: rows[r].count(2))
    return next(_search(rows, order, directed), None) is not None


def oracle_solutions(
    A: GenotypeMatrix, directed: bool, cap: int = DEFAULT_CAP
) -> Iterator[HaplotypeMatrix]:
    """Every explaining matrix that passes the gamete test.

    Solutions are produced in lexicographic order of the per-row phasing
    choices; in each pair the first haplotype carries 0 at the row's first
    2-site.
    """
    _check_cap(A, cap)
    rows = A.rows()
    for chosen in _search(rows, list(range(len(rows))), directed):
        out = []
        for r in range(len(rows)):
            out.extend(chosen[r])
        yield HaplotypeMatrix(out)


def plant_instance(seed: int, n_genotypes: int, m_cols: int) -> tuple[GenotypeMatrix, HaplotypeMatrix]:
    """Sample a genotype matrix together with a perfect-phylogeny witness.

    A random recursive tree with ``m_cols`` edges is grown by attaching each
    new node to a uniformly chosen earlier node; each edge gets one column.
    Node haplotypes are read off the tree (root = all zeros) and random
    pairs of nodes form the genotypes.
    """
    if n_genotypes < 1 or m_cols < 1:
        raise ValueError("need at least one genotype and one column")
    rng = random.Random(seed)
    columns = rng.sample(range(m_cols), m_cols)
    haps = np.zeros((m_cols + 1, m_cols), dtype=np.uint8)
    for node in range(1, m_cols + 1):
        parent = rng.randrange(node)
        haps[node] = haps[parent]
        haps[node, columns[node - 1]] = 1
    picks = [rng.randrange(m_cols + 1) for _ in range(2 * n_genotypes)]
    B = haps[picks]
    h, h2 = B[0::2], B[1::2]
    A = np.where(h == h2, h, 2).astype(np.uint8)
    return GenotypeMatrix(A), HaplotypeMatrix(B)
