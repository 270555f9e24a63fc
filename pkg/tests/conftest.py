import itertools

import pytest
from hypothesis import strategies as st

from pphaplo.matrix import GenotypeMatrix, HaplotypeMatrix


def gm(text):
    """Genotype matrix from ``"220;202;022"`` shorthand."""
    return GenotypeMatrix(text.split(";"))


def hm(text):
    return HaplotypeMatrix(text.split(";"))


def all_small_matrices(max_rows=3, max_cols=3):
    for n in range(1, max_rows + 1):
        for m in range(1, max_cols + 1):
            for vals in itertools.product(range(3), repeat=n * m):
                yield GenotypeMatrix([vals[r * m:(r + 1) * m] for r in range(n)])


@st.composite
def genotype_matrices(draw, max_rows=5, max_cols=5, weights=None):
    n = draw(st.integers(1, max_rows))
    m = draw(st.integers(1, max_cols))
    cell = st.sampled_from([0, 0, 1, 2, 2]) if weights is None else st.sampled_from(weights)
    rows = draw(st.lists(st.lists(cell, min_size=m, max_size=m), min_size=n, max_size=n))
    return GenotypeMatrix(rows)


@st.composite
def haplotype_matrices(draw, max_rows=6, max_cols=5):
    n = draw(st.integers(1, max_rows))
    m = draw(st.integers(1, max_cols))
    rows = draw(st.lists(st.lists(st.integers(0, 1), min_size=m, max_size=m), min_size=n, max_size=n))
    return HaplotypeMatrix(rows)


@pytest.fixture
def paper_matrix():
    return gm("220;202;022")


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
