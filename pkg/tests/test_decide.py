import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pphaplo.decide import (
    GametePair,
    OddCycleWitness,
    ParityUnionFind,
    PlainGraph,
    Verdict,
    check_witness,
    decide_dpph,
    decide_pph,
    expand_to_bipartite_instance,
    find_odd_cycle,
    find_odd_weight_cycle,
    gamete_precheck,
    has_odd_weight_cycle,
    is_bipartite,
)
from pphaplo.matrix import GenotypeMatrix, append_all_zero, pph_to_dpph
from pphaplo.oracle import oracle_decide
from pphaplo.resolution import ResolutionGraph, build_all_resolution_graphs

from conftest import genotype_matrices, gm
from reference import odd_cycle_free


def graph(anchor, edges):
    verts = {anchor} | {k for k, _, _ in edges} | {l for _, l, _ in edges}
    return ResolutionGraph(anchor, frozenset(verts), frozenset(edges))


@st.composite
def weighted_graphs(draw, max_vertices=6):
    n = draw(st.integers(1, max_vertices))
    pairs = [(k, l) for k in range(n) for l in range(k + 1, n)]
    edges = draw(st.sets(st.tuples(st.sampled_from(pairs), st.integers(0, 1)), max_size=10)) if pairs else set()
    return ResolutionGraph(0, frozenset(range(n)), frozenset((k, l, w) for (k, l), w in edges))


class TestPrecheck:
    def test_violating(self):
        assert gamete_precheck(gm("01;10;11")) == (0, 1)

    def test_paper_example_ok(self, paper_matrix):
        assert gamete_precheck(paper_matrix) is None

    def test_ok_with_two(self):
        assert gamete_precheck(gm("012")) is None


class TestParityUnionFind:
    def test_conflict(self):
        uf = ParityUnionFind()
        for v in "abc":
            uf.add(v)
        assert uf.union("a", "b", 1)
        assert uf.union("b", "c", 1)
        assert uf.union("a", "c", 0)
        assert not uf.union("a", "c", 1)
        assert uf.find("a")[0] == uf.find("c")[0]

    def test_long_chain_parities(self):
        uf = ParityUnionFind()
        for v in range(100):
            uf.add(v)
        for v in range(99):
            assert uf.union(v, v + 1, 1)
        for v in range(100):
            _, p = uf.find(v)
            _, p0 = uf.find(0)
            assert p ^ p0 == v % 2


class TestOddCycle:
    def test_triangle_odd(self):
        G = graph(0, {(0, 1, 1), (1, 2, 1), (0, 2, 1)})
        cycle = find_odd_weight_cycle(G)
        assert cycle is not None and sum(w for *_, w in cycle) % 2 == 1

    def test_triangle_even(self):
        assert not has_odd_weight_cycle(graph(0, {(0, 1, 1), (1, 2, 1), (0, 2, 0)}))

    def test_parallel_pair(self):
        cycle = find_odd_weight_cycle(graph(0, {(0, 1, 0), (0, 1, 1)}))
        assert sorted(w for *_, w in cycle) == [0, 1]

    @settings(max_examples=300)
    @given(weighted_graphs())
    def test_against_brute_force(self, G):
        cycle = find_odd_weight_cycle(G)
        assert (cycle is None) == odd_cycle_free(G.vertices, G.edges)
        if cycle is not None:
            assert sum(w for *_, w in cycle) % 2 == 1
            for (k, l, w), (k2, _, _) in zip(cycle, cycle[1:] + cycle[:1]):
                assert l == k2 and G.has_edge(k, l, w)

    @settings(max_examples=300)
    @given(weighted_graphs())
    def test_bipartite_route_agrees(self, G):
        assert is_bipartite(expand_to_bipartite_instance([G])) == (not has_odd_weight_cycle(G))


class TestExpansion:
    def test_zero_edge_subdivided(self):
        P = expand_to_bipartite_instance([graph(0, {(0, 1, 0)})])
        assert len(P.vertices) == 3 and len(P.edges) == 2
        assert (0, 0, 1, "mid") in P.vertices

    def test_one_edge_kept(self):
        P = expand_to_bipartite_instance([graph(0, {(0, 1, 1)})])
        assert len(P.vertices) == 2 and P.edges == (((0, 0), (0, 1)),)

    def test_disjoint_union(self):
        P = expand_to_bipartite_instance([graph(0, set()), graph(1, set())])
        assert set(P.vertices) == {(0, 0), (1, 1)} and not P.edges

    def test_same_column_in_two_graphs_kept_apart(self):
        P = expand_to_bipartite_instance([graph(0, {(0, 1, 1)}), graph(1, {(0, 1, 1)})])
        assert len(P.vertices) == 4 and len(P.edges) == 2


class TestBipartite:
    def cycle(self, n):
        return PlainGraph(tuple(range(n)), tuple((i, (i + 1) % n) for i in range(n)))

    def test_even_cycle(self):
        assert is_bipartite(self.cycle(4))

    def test_odd_cycle(self):
        assert not is_bipartite(self.cycle(3))
        assert len(find_odd_cycle(self.cycle(5))) == 5

    def test_empty(self):
        assert is_bipartite(PlainGraph((), ()))

    def test_self_loop_rejected(self):
        with pytest.raises(ValueError):
            PlainGraph((1,), ((1, 1),))

    @given(st.integers(2, 9), st.sets(st.tuples(st.integers(0, 8), st.integers(0, 8)), max_size=20))
    def test_odd_cycle_witness_is_odd_cycle(self, n, raw):
        edges = tuple({(min(a, b), max(a, b)) for a, b in raw if a != b and a < n and b < n})
        P = PlainGraph(tuple(range(n)), edges)
        cyc = find_odd_cycle(P)
        if cyc is None:
            return
        assert len(cyc) % 2 == 1 and len(set(cyc)) == len(cyc)
        es = {frozenset(e) for e in edges}
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            assert frozenset((a, b)) in es


class TestDeciders:
    def test_dpph_paper_example(self, paper_matrix):
        v = decide_dpph(paper_matrix)
        assert v.admits and v.report() == "YES"
        assert oracle_decide(paper_matrix, directed=True)

    def test_dpph_gamete_rejection(self):
        v = decide_dpph(gm("01;10;11;22"))
        assert not v.admits
        assert v.witness == GametePair(0, 1)
        assert v.report() == "NO gamete-pair 1 2"

    def test_dpph_trivial(self):
        assert decide_dpph(gm("00"))

    def test_pph_flip_example(self):
        A = gm("22;11;01;10")
        v = decide_pph(A)
        assert v.admits
        assert oracle_decide(A, directed=False)
        flipped, _ = pph_to_dpph(A)
        graphs = build_all_resolution_graphs(flipped)
        assert [sorted(G.edges) for G in graphs] == [[(0, 1, 1)], []]

    def test_pph_four_fixed_gametes(self):
        v = decide_pph(gm("22;00;01;10;11"))
        assert not v.admits and isinstance(v.witness, GametePair)

    def test_pph_single(self):
        assert decide_pph(gm("2"))

    def test_odd_cycle_verdict(self):
        A = gm("102;122;222;120")
        for route in ("parity", "bipartite"):
            v = decide_dpph(A, route)
            assert not v.admits and isinstance(v.witness, OddCycleWitness)
            assert v.witness.weight % 2 == 1
            assert check_witness(A, v)
        assert not oracle_decide(A, directed=True)

    def test_unknown_route(self):
        with pytest.raises(ValueError):
            decide_dpph(gm("0"), route="magic")

    def test_rejecting_verdict_needs_witness(self):
        with pytest.raises(ValueError):
            Verdict(False)

    def test_forged_witness_fails(self, paper_matrix):
        assert not check_witness(paper_matrix, Verdict(False, GametePair(0, 1)))
        fake = OddCycleWitness(0, ((0, 1, 1), (1, 2, 1), (2, 0, 1)))
        assert not check_witness(paper_matrix, Verdict(False, fake))

    @settings(max_examples=300)
    @given(genotype_matrices(max_rows=5, max_cols=4))
    def test_reductions_and_routes(self, A):
        d = decide_dpph(A, "parity")
        assert d.admits == decide_dpph(A, "bipartite").admits
        assert d.admits == decide_pph(append_all_zero(A)).admits
        p = decide_pph(A)
        assert p.admits == decide_pph(A, "parity").admits
        assert p.admits == decide_dpph(pph_to_dpph(A)[0]).admits
        for v in (d, p):
            if not v.admits:
                assert check_witness(A, v)

    @settings(max_examples=100)
    @given(genotype_matrices(max_rows=5, max_cols=4), st.randoms(use_true_random=False))
    def test_row_permutation_invariant(self, A, rng):
        rows = A.rows()
        rng.shuffle(rows)
        B = GenotypeMatrix(rows)
        assert decide_dpph(A).admits == decide_dpph(B).admits
        assert decide_pph(A).admits == decide_pph(B).admits

    @settings(max_examples=200)
    @given(genotype_matrices(max_rows=4, max_cols=4))
    def test_matches_oracle(self, A):
        assert decide_dpph(A).admits == oracle_decide(A, directed=True)
        assert decide_pph(A).admits == oracle_decide(A, directed=False)


def test_deterministic_witness():
    rng = random.Random(5)
    for _ in range(200):
        A = GenotypeMatrix([[rng.choice([0, 1, 2, 2]) for _ in range(4)] for _ in range(4)])
        assert decide_dpph(A).report() == decide_dpph(A).report()


@settings(max_examples=100)
@given(genotype_matrices(max_rows=5, max_cols=5))
def test_lazy_table_path_agrees(A):
    import pphaplo.ordering as ordering

    eager = (decide_dpph(A).report(), decide_pph(A).report())
    saved = ordering.TABLE_LIMIT
    ordering.TABLE_LIMIT = 0
    try:
        lazy = (decide_dpph(A).report(), decide_pph(A).report())
    finally:
        ordering.TABLE_LIMIT = saved
    assert lazy == eager
