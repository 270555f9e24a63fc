"""Genotype and haplotype matrices, induced sets and gamete checks.

Matrices are immutable wrappers around read-only ``uint8`` numpy arrays.
Row and column indices are 0-based in the library API; text I/O and error
messages use 1-based positions.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    BadColumnIndex,
    BadSymbol,
    EmptyInput,
    LengthMismatch,
    NotHeterozygous,
    RaggedRows,
    ShapeMismatch,
)

GAMETES = ("00", "01", "10", "11")
_BIT = {g: 1 << k for k, g in enumerate(GAMETES)}
ALL_FOUR = 0b1111
THREE = _BIT["01"] | _BIT["10"] | _BIT["11"]
BOTH_MIXED = _BIT["01"] | _BIT["10"]


def gamete_bit(x: int, y: int) -> int:
    return 1 << (2 * x + y)


@dataclass(frozen=True, order=False)
class InducedSet:
    """Subset of {00, 01, 10, 11}, stored as a 4-bit flag word."""

    bits: int = 0

    @classmethod
    def of(cls, *members: str) -> InducedSet:
        bits = 0
        for s in members:
            if s not in _BIT:
                raise ValueError(f"not a two-character binary string: {s!r}")
            bits |= _BIT[s]
        return cls(bits)

    def __contains__(self, member: str) -> bool:
        return bool(self.bits & _BIT[member])

    def __iter__(self) -> Iterator[str]:
        return (g for g in GAMETES if self.bits & _BIT[g])

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __le__(self, other: InducedSet) -> bool:
        return self.bits & ~other.bits == 0

    def __ge__(self, other: InducedSet) -> bool:
        return other <= self

    def __lt__(self, other: InducedSet) -> bool:
        return self <= other and self.bits != other.bits

    def __gt__(self, other: InducedSet) -> bool:
        return other < self

    def __or__(self, other: InducedSet) -> InducedSet:
        return InducedSet(self.bits | other.bits)

    def __str__(self) -> str:
        return "{" + ",".join(self) + "}"

    def __repr__(self) -> str:
        return f"InducedSet({str(self)})"


class ResolutionKind(Enum):
    EQUAL = "equal"
    UNEQUAL = "unequal"


class _BinaryGrid:
    _alphabet = b""

    __slots__ = ("entries",)

    def __init__(self, entries):
        if isinstance(entries, _BinaryGrid):
            arr = entries.entries
        elif isinstance(entries, np.ndarray):
            arr = np.array(entries, dtype=np.uint8, copy=True)
        else:
            rows = [_coerce_row(r) for r in entries]
            if not rows:
                raise ValueError("a matrix needs at least one row")
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("rows have unequal lengths")
            arr = np.array(rows, dtype=np.uint8).reshape(len(rows), width)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"expected a non-empty 2-d grid, got shape {arr.shape}")
        limit = len(self._alphabet)
        if arr.size and int(arr.max()) >= limit:
            r, c = np.argwhere(arr >= limit)[0]
            raise ValueError(
                f"entry {int(arr[r, c])} at row {r + 1}, column {c + 1} "
                f"is not allowed in a {type(self).__name__}"
            )
        arr.flags.writeable = False
        object.__setattr__(self, "entries", arr)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @property
    def n_rows(self) -> int:
        return self.entries.shape[0]

    @property
    def n_cols(self) -> int:
        return self.entries.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    def row(self, i: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self.entries[i])

    def rows(self) -> list[tuple[int, ...]]:
        return [tuple(r) for r in self.entries.tolist()]

    def row_strings(self) -> list[str]:
        table = self._alphabet.decode()
        return ["".join(table[x] for x in r) for r in self.entries.tolist()]

    def to_text(self) -> str:
        return "".join(s + "\n" for s in self.row_strings())

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return np.array_equal(self.entries, other.entries)

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.shape, self.entries.tobytes()))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({';'.join(self.row_strings())})"


class GenotypeMatrix(_BinaryGrid):
    """n x m matrix over {0, 1, 2}; 2 marks a heterozygous site."""

    _alphabet = b"012"
    __slots__ = ()


class HaplotypeMatrix(_BinaryGrid):
    """Matrix over {0, 1}; rows 2i and 2i+1 explain genotype i."""

    _alphabet = b"01"
    __slots__ = ()


def _coerce_row(r) -> list[int]:
    if isinstance(r, str):
        return [int(ch) for ch in r]
    return [int(x) for x in r]


def parse_genotype_matrix(text: str | Iterable[str]) -> GenotypeMatrix:
    """Parse the line-per-row text format.

    Blank lines and lines starting with ``#`` are skipped.  Errors report
    1-based physical line numbers and columns.
    """
    return GenotypeMatrix(_parse_grid(text, "012"))


def parse_haplotype_matrix(text: str | Iterable[str]) -> HaplotypeMatrix:
    return HaplotypeMatrix(_parse_grid(text, "01"))


def _parse_grid(text, alphabet: str) -> np.ndarray:
    lines = text.splitlines() if isinstance(text, str) else list(text)
    rows: list[list[int]] = []
    width = None
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\r\n").strip()
        if not line or line.startswith("#"):
            continue
        for col, ch in enumerate(line, start=1):
            if ch not in alphabet:
                raise BadSymbol(lineno, col, ch)
        if width is None:
            width = len(line)
        elif len(line) != width:
            raise RaggedRows(lineno, width, len(line))
        rows.append([ord(ch) - 48 for ch in line])
    if not rows:
        raise EmptyInput("no matrix rows found in input")
    return np.array(rows, dtype=np.uint8)


def _as_row(h) -> np.ndarray:
    if isinstance(h, str):
        return np.frombuffer(h.encode(), dtype=np.uint8) - 48
    return np.asarray(h, dtype=np.uint8)


def explains(h, h2, g) -> bool:
    """Whether haplotypes ``h`` and ``h2`` explain genotype ``g``."""
    h, h2, g = _as_row(h), _as_row(h2), _as_row(g)
    if not (len(h) == len(h2) == len(g)):
        raise LengthMismatch(f"row lengths differ: {len(h)}, {len(h2)}, {len(g)}")
    fixed = g != 2
    return bool(
        np.all(h[fixed] == g[fixed])
        and np.all(h2[fixed] == g[fixed])
        and np.all(h[~fixed] != h2[~fixed])
    )


def explains_matrix(B: HaplotypeMatrix, A: GenotypeMatrix) -> bool:
    if B.n_rows != 2 * A.n_rows or B.n_cols != A.n_cols:
        raise ShapeMismatch(
            f"haplotype matrix {B.shape} cannot explain genotype matrix {A.shape}"
        )
    g = A.entries
    h, h2 = B.entries[0::2], B.entries[1::2]
    fixed = g != 2
    ok = np.where(fixed, (h == g) & (h2 == g), h != h2)
    return bool(ok.all())


def resolution_kind(h, h2, i: int, j: int) -> ResolutionKind:
    h, h2 = _as_row(h), _as_row(h2)
    for k in (i, j):
        if not 0 <= k < len(h) or len(h2) != len(h):
            raise BadColumnIndex(f"column {k + 1} out of range")
        if h[k] == h2[k]:
            raise NotHeterozygous(f"haplotypes agree at column {k + 1}")
    return ResolutionKind.EQUAL if h[i] == h[j] else ResolutionKind.UNEQUAL


def _check_cols(m: int, *cols: int) -> None:
    for c in cols:
        if not 0 <= c < m:
            raise BadColumnIndex(f"column {c + 1} out of range 1..{m}")


def induced_set_haplotypes(B: HaplotypeMatrix, i: int, j: int) -> InducedSet:
    _check_cols(B.n_cols, i, j)
    codes = 2 * B.entries[:, i].astype(np.int64) + B.entries[:, j]
    bits = 0
    for c in np.unique(codes):
        bits |= 1 << int(c)
    return InducedSet(bits)


def induced_set_genotypes(A: GenotypeMatrix, i: int, j: int) -> InducedSet:
    _check_cols(A.n_cols, i, j)
    bits = 0
    for gi, gj in set(zip(A.entries[:, i].tolist(), A.entries[:, j].tolist())):
        bits |= _pair_bits(gi, gj)
    return InducedSet(bits)


def _pair_bits(gi: int, gj: int) -> int:
    if gi == 2 and gj == 2:
        return 0
    if gi == 2:
        return gamete_bit(0, gj) | gamete_bit(1, gj)
    if gj == 2:
        return gamete_bit(gi, 0) | gamete_bit(gi, 1)
    return gamete_bit(gi, gj)


def genotype_induced_table(A: GenotypeMatrix) -> np.ndarray:
    """All pairwise induced sets of ``A`` as an m x m array of flag words.

    Diagonal entries are meaningless and must not be read.
    """
    g = A.entries
    two = (g == 2).astype(np.float64)
    ind = [(g == x).astype(np.float64) for x in (0, 1)]
    table = np.zeros((A.n_cols, A.n_cols), dtype=np.uint8)
    for x in (0, 1):
        for y in (0, 1):
            hits = ind[x].T @ (ind[y] + two) + two.T @ ind[y]
            table |= np.where(hits > 0, gamete_bit(x, y), 0).astype(np.uint8)
    return table


def haplotype_induced_table(B: HaplotypeMatrix) -> np.ndarray:
    b = B.entries
    ind = [(b == x).astype(np.float64) for x in (0, 1)]
    table = np.zeros((B.n_cols, B.n_cols), dtype=np.uint8)
    for x in (0, 1):
        for y in (0, 1):
            hits = ind[x].T @ ind[y]
            table |= np.where(hits > 0, gamete_bit(x, y), 0).astype(np.uint8)
    return table


def _first_pair(table: np.ndarray, forbidden: int) -> tuple[int, int] | None:
    bad = (table & forbidden) == forbidden
    bad = np.triu(bad, k=1)
    hits = np.argwhere(bad)
    if len(hits) == 0:
        return None
    i, j = hits[0]
    return int(i), int(j)


def four_gamete_check(B: HaplotypeMatrix) -> tuple[int, int] | None:
    """Return ``None`` if no column pair shows all four gametes.

    Otherwise the lexicographically smallest violating pair (0-based).
    """
    return _first_pair(haplotype_induced_table(B), ALL_FOUR)


def three_gamete_check(B: HaplotypeMatrix) -> tuple[int, int] | None:
    """Like :func:`four_gamete_check` but forbids {01, 10, 11} as a subset."""
    return _first_pair(haplotype_induced_table(B), THREE)


@dataclass(frozen=True)
class FlipSet:
    """Columns complemented by :func:`pph_to_dpph` (0-based)."""

    columns: frozenset[int] = frozenset()

    def __contains__(self, c: int) -> bool:
        return c in self.columns

    def __iter__(self):
        return iter(sorted(self.columns))

    def __len__(self) -> int:
        return len(self.columns)


def pph_to_dpph(A: GenotypeMatrix) -> tuple[GenotypeMatrix, FlipSet]:
    """Complement every column whose topmost non-2 entry is a 1."""
    g = A.entries
    fixed = g != 2
    has_fixed = fixed.any(axis=0)
    top = fixed.argmax(axis=0)
    top_value = g[top, np.arange(A.n_cols)]
    flip = has_fixed & (top_value == 1)
    out = np.where(fixed & flip[None, :], 1 - g, g).astype(np.uint8)
    return GenotypeMatrix(out), FlipSet(frozenset(int(c) for c in np.flatnonzero(flip)))


def append_all_zero(A: GenotypeMatrix) -> GenotypeMatrix:
    zero = np.zeros((1, A.n_cols), dtype=np.uint8)
    return GenotypeMatrix(np.vstack([A.entries, zero]))


def unflip_haplotypes(B: HaplotypeMatrix, flips: FlipSet | Sequence[int]) -> HaplotypeMatrix:
    cols = sorted(flips.columns if isinstance(flips, FlipSet) else set(flips))
    _check_cols(B.n_cols, *cols)
    out = np.array(B.entries, copy=True)
    if cols:
        out[:, cols] ^= 1
    return HaplotypeMatrix(out)
