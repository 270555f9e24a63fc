import itertools

import pytest
from hypothesis import given, settings

from pphaplo.errors import BadColumnIndex, SameColumnIndex
from pphaplo.ordering import InducedTable, assign_genotypes, column_greater

from conftest import all_small_matrices, genotype_matrices, gm
from reference import greater, owner_sets


def test_greater_examples():
    # columns (1,1,0) and (1,0,0)
    A = gm("11;10;00")
    assert column_greater(A, 0, 1)
    assert not column_greater(A, 1, 0)


def test_identical_columns_not_greater():
    A = gm("11;00;22")
    assert not column_greater(A, 0, 1)
    assert not column_greater(A, 1, 0)


def test_greater_blocked_by_01():
    A = gm("01;10")
    assert not column_greater(A, 0, 1)


def test_greater_errors():
    with pytest.raises(SameColumnIndex):
        column_greater(gm("01"), 1, 1)
    with pytest.raises(BadColumnIndex):
        column_greater(gm("01"), 0, 5)


@given(genotype_matrices(max_rows=6, max_cols=5))
def test_greater_matches_reference(A):
    rows = A.row_strings()
    table = InducedTable(A)
    lazy = InducedTable(A, precompute=False)
    for i, j in itertools.permutations(range(A.n_cols), 2):
        expected = greater(rows, i, j)
        assert column_greater(A, i, j) is expected
        assert table.greater(i, j) is expected
        assert lazy.greater(i, j) is expected


@given(genotype_matrices(max_rows=6, max_cols=6))
def test_strict_partial_order(A):
    m = A.n_cols
    gt = {(i, j): column_greater(A, i, j) for i, j in itertools.permutations(range(m), 2)}
    for i, j in itertools.permutations(range(m), 2):
        assert not (gt[i, j] and gt[j, i])
    for i, j, k in itertools.permutations(range(m), 3):
        if gt[i, j] and gt[j, k]:
            assert gt[i, k]


def test_transitivity_exhaustive_report(capsys):
    """Transitivity on every matrix up to 3x3 (reported, not assumed)."""
    checked = violations = 0
    for A in all_small_matrices(3, 3):
        m = A.n_cols
        table = InducedTable(A)
        for i, j, k in itertools.permutations(range(m), 3):
            checked += 1
            if table.greater(i, j) and table.greater(j, k) and not table.greater(i, k):
                violations += 1
    print(f"transitivity: {checked} triples checked, {violations} violations")
    assert violations == 0


def test_assign_paper_example():
    P = assign_genotypes(gm("220;202;022"))
    assert dict(P.owner) == {0: 0, 1: 0, 2: 1}


def test_assign_single_two():
    assert dict(assign_genotypes(gm("012")).owner) == {0: 2}


def test_assign_no_twos():
    assert dict(assign_genotypes(gm("010")).owner) == {}


def test_assign_prefers_greater_column():
    # column 2 is greater than column 1, so it owns the genotype
    A = gm("22;10;11")
    assert column_greater(A, 1, 0) is False
    assert column_greater(A, 0, 1) is True
    A = gm("22;01;11")
    assert column_greater(A, 1, 0)
    assert dict(assign_genotypes(A).owner) == {0: 1}


@settings(max_examples=200)
@given(genotype_matrices(max_rows=5, max_cols=5))
def test_assign_matches_set_definition(A):
    rows = A.row_strings()
    P = assign_genotypes(A)
    sets = owner_sets(rows)
    for r, g in enumerate(rows):
        owners = [i for i in sets if r in sets[i]]
        if "2" in g:
            assert owners == [P.owner[r]]
        else:
            assert owners == [] and r not in P.owner


@settings(max_examples=200)
@given(genotype_matrices(max_rows=6, max_cols=6))
def test_owner_invariants(A):
    P = assign_genotypes(A)
    for r, i in P.owner.items():
        g = A.row(r)
        assert g[i] == 2
        for k in range(A.n_cols):
            if k != i and g[k] == 2:
                assert not column_greater(A, k, i)
                if k < i:
                    # a smaller 2-column must be dominated
                    assert any(g[j] == 2 and column_greater(A, j, k) for j in range(A.n_cols) if j != k)
    assert set(P.owner) == {r for r in range(A.n_rows) if 2 in A.row(r)}
