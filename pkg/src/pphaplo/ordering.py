"""Column order on genotype matrices and the owner partition of genotypes."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import BadColumnIndex, SameColumnIndex
from .matrix import GenotypeMatrix, gamete_bit, genotype_induced_table, induced_set_genotypes

# i > j exactly when 01 never appears in ind(i, j) and the columns differ.
_FORBIDDEN = gamete_bit(0, 1)

TABLE_LIMIT = 4096


class InducedTable:
    """Pairwise induced sets of a genotype matrix.

    Precomputed as an m x m array when ``m <= TABLE_LIMIT`` and computed
    lazily per pair otherwise.
    """

    def __init__(self, A: GenotypeMatrix, precompute: bool | None = None):
        self.matrix = A
        if precompute is None:
            precompute = A.n_cols <= TABLE_LIMIT
        self.table = genotype_induced_table(A) if precompute else None
        _, self.column_ids = np.unique(A.entries.T, axis=0, return_inverse=True)
        self.column_ids = self.column_ids.reshape(-1)
        self._cache: dict[tuple[int, int], int] = {}

    def bits(self, i: int, j: int) -> int:
        if self.table is not None:
            return int(self.table[i, j])
        key = (i, j)
        if key not in self._cache:
            self._cache[key] = induced_set_genotypes(self.matrix, i, j).bits
        return self._cache[key]

    def greater(self, i: int, j: int) -> bool:
        return not self.bits(i, j) & _FORBIDDEN and bool(self.column_ids[i] != self.column_ids[j])

    def greater_block(self, cols: np.ndarray) -> np.ndarray:
        """Boolean matrix ``M[a, b] = cols[a] > cols[b]`` over the given columns."""
        if self.table is not None:
            sub = self.table[np.ix_(cols, cols)]
        else:
            sub = np.array([[self.bits(i, j) if i != j else 0 for j in cols] for i in cols],
                           dtype=np.uint8).reshape(len(cols), len(cols))
        ids = self.column_ids[cols]
        return ((sub & _FORBIDDEN) == 0) & (ids[:, None] != ids[None, :])


def column_greater(A: GenotypeMatrix, i: int, j: int) -> bool:
    """True iff column ``i`` is greater than column ``j`` in the column order of ``A``."""
    m = A.n_cols
    for c in (i, j):
        if not 0 <= c < m:
            raise BadColumnIndex(f"column {c + 1} out of range 1..{m}")
    if i == j:
        raise SameColumnIndex(f"column {i + 1} compared with itself")
    if induced_set_genotypes(A, i, j).bits & _FORBIDDEN:
        return False
    return not np.array_equal(A.entries[:, i], A.entries[:, j])


@dataclass(frozen=True)
class GenotypePartition:
    """Maps each row with a 2-entry to the column that owns it."""

    owner: Mapping[int, int]
    n_cols: int

    def members(self, i: int) -> list[int]:
        return sorted(r for r, c in self.owner.items() if c == i)

    def groups(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for r in sorted(self.owner):
            out.setdefault(self.owner[r], []).append(r)
        return out


def assign_genotypes(A: GenotypeMatrix, table: InducedTable | None = None) -> GenotypePartition:
    """Assign every row with a 2-entry to its owning column.

    The owner is the smallest-index 2-column of the row that no other
    2-column of the same row exceeds.
    """
    if table is None:
        table = InducedTable(A)
    owner: dict[int, int] = {}
    twos = A.entries == 2
    for r in np.flatnonzero(twos.any(axis=1)):
        cols = np.flatnonzero(twos[r])
        if len(cols) == 1:
            owner[int(r)] = int(cols[0])
            continue
        dominated = table.greater_block(cols).any(axis=0)
        maximal = cols[~dominated]
        # the column order is a strict partial order, so a maximal column exists
        owner[int(r)] = int(maximal[0])
    return GenotypePartition(owner, A.n_cols)
