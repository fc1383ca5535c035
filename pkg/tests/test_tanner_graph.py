import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_force_girth, brute_force_local_girth, random_bipartite
from pegldpc.degree_model import DegreeDistribution
from pegldpc.tanner_graph import (
    AlistError,
    StructuralError,
    TannerGraph,
    degree2_chain_report,
    from_alist,
    girth,
    local_girth,
    local_girths,
    realized_check_distribution,
    rho_compliance,
    to_alist,
)

FOUR_CYCLE = [(0, 0), (1, 0), (1, 1), (0, 1)]
CHAIN = [(0, 0), (1, 0), (1, 1), (2, 1)]


def four_cycle():
    return TannerGraph.from_edges(2, 2, FOUR_CYCLE)


def ring(k):
    """k degree-2 symbols closing a cycle of length 2k."""
    return TannerGraph.from_edges(k, k, [(c, s) for s in range(k) for c in (s, (s + 1) % k)])


class TestAddEdge:
    def test_first_edge(self):
        g = TannerGraph(1, 1)
        g.add_edge(0, 0)
        assert g.symbol_adj == [[0]]
        assert g.check_adj == [[0]]
        assert g.check_partial.tolist() == [1]

    def test_duplicate(self):
        g = TannerGraph(1, 1)
        g.add_edge(0, 0)
        with pytest.raises(StructuralError):
            g.add_edge(0, 0)

    def test_sorted_adjacency(self):
        g = TannerGraph(1, 3)
        g.add_edge(2, 0)
        g.add_edge(0, 0)
        g.add_edge(1, 0)
        assert g.symbol_adj[0] == [0, 1, 2]

    def test_out_of_range(self):
        with pytest.raises(StructuralError):
            TannerGraph(2, 2).add_edge(2, 0)

    def test_free_degree(self):
        g = TannerGraph(2, 1, check_target=[3])
        g.add_edge(0, 0)
        assert g.free_degrees().tolist() == [2]


class TestGirth:
    def test_four_cycle(self):
        assert girth(four_cycle()) == 4

    def test_chain_is_a_tree(self):
        assert girth(TannerGraph.from_edges(2, 3, CHAIN)) == math.inf

    def test_complete_3x3(self):
        g = TannerGraph.from_edges(3, 3, [(c, s) for c in range(3) for s in range(3)])
        assert girth(g) == 4
        assert brute_force_girth(g) == 4

    @pytest.mark.parametrize("k, expected", [(2, 4), (3, 6), (5, 10)])
    def test_rings(self, k, expected):
        assert girth(ring(k)) == expected

    def test_empty(self):
        assert girth(TannerGraph(0, 0)) == math.inf
        assert girth(TannerGraph(3, 2)) == math.inf

    def test_local_four_cycle(self):
        assert local_girth(four_cycle(), 0) == 4

    def test_local_tree(self):
        assert local_girth(TannerGraph.from_edges(2, 3, CHAIN), 0) == math.inf

    def test_six_cycle_with_remote_four_cycle(self):
        # s0,s1,s2 on a 6-cycle through c0,c1,c2; s2,s3 close a 4-cycle on c3,c4
        edges = [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (0, 2), (3, 2), (3, 3), (4, 3), (4, 2)]
        g = TannerGraph.from_edges(4, 5, edges)
        assert local_girth(g, 0) == 6
        assert brute_force_local_girth(g, 0) == 6
        assert local_girth(g, 2) == 4
        assert girth(g) == 4


def random_instances(count, seed=20241):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        n = int(rng.integers(1, 9))
        m = int(rng.integers(1, 15 - n))
        out.append(random_bipartite(rng, n, m, float(rng.uniform(0.2, 0.8))))
    return out


def test_girth_matches_brute_force_oracle():
    graphs = random_instances(250)
    with_cycles = 0
    for g in graphs:
        expected = brute_force_girth(g)
        assert girth(g) == expected, g.edges()
        with_cycles += expected != math.inf
    # the ensemble should exercise both branches
    assert 50 < with_cycles < 250


def test_local_girth_matches_brute_force_oracle():
    for g in random_instances(120, seed=7):
        lg = local_girths(g)
        for s in range(g.n):
            assert lg[s] == brute_force_local_girth(g, s)
        assert girth(g) == min(lg, default=math.inf)
        assert all(x == math.inf or x % 2 == 0 for x in lg)


class TestCompliance:
    def test_regular(self):
        g = TannerGraph.from_edges(6, 1, [(0, s) for s in range(6)])
        assert rho_compliance(g, DegreeDistribution({6: 1.0})) == 0.0

    def test_hand_computed(self):
        # checks of degree 2, 2, 4: edge masses 4/8 and 4/8
        edges = [(0, 0), (0, 1), (1, 2), (1, 3), (2, 0), (2, 1), (2, 2), (2, 3)]
        g = TannerGraph.from_edges(4, 3, edges)
        assert realized_check_distribution(g) == {2: 0.5, 4: 0.5}
        assert rho_compliance(g, DegreeDistribution({2: 0.5, 4: 0.5})) == 0.0
        # node view: 2/3 vs 1/3 against (1/2)/(1/2+1/4) = 2/3
        assert rho_compliance(g, DegreeDistribution({2: 0.5, 4: 0.5}), "node") == pytest.approx(0.0, abs=1e-12)

    def test_out_of_support_counts_in_full(self):
        g = TannerGraph.from_edges(3, 1, [(0, 0), (0, 1), (0, 2)])
        assert rho_compliance(g, DegreeDistribution({4: 1.0})) == 2.0

    def test_mismatch(self):
        # one check of degree 3, one of degree 5: realized {3: 3/8, 5: 5/8}
        edges = [(0, s) for s in range(3)] + [(1, s) for s in range(5)]
        g = TannerGraph.from_edges(5, 2, edges)
        eta = rho_compliance(g, DegreeDistribution({3: 0.5, 5: 0.5}))
        assert eta == pytest.approx(0.25, abs=1e-12)

    def test_no_edges(self):
        with pytest.raises(StructuralError):
            rho_compliance(TannerGraph(2, 2), DegreeDistribution({3: 1.0}))

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_permutation_invariance(self, seed):
        rng = np.random.default_rng(seed)
        g = random_bipartite(rng, 10, 6, 0.4)
        if g.n_edges == 0:
            return
        perm = rng.permutation(g.m)
        h = TannerGraph.from_edges(g.n, g.m, [(int(perm[c]), s) for c, s in g.edges()])
        rho = DegreeDistribution({2: 0.2, 3: 0.3, 5: 0.5})
        for persp in ("edge", "node"):
            assert rho_compliance(h, rho, persp) == pytest.approx(rho_compliance(g, rho, persp), abs=1e-12)


class TestChains:
    def test_zigzag(self):
        # c0-s0-c1-s1-c2-s2-c3
        g = TannerGraph.from_edges(3, 4, [(s, s) for s in range(3)] + [(s + 1, s) for s in range(3)])
        rep = degree2_chain_report(g)
        assert rep.acyclic
        assert rep.chain_count == 1
        assert rep.longest_chain == 3

    def test_ring(self):
        assert not degree2_chain_report(ring(4)).acyclic

    def test_no_degree_two(self):
        g = TannerGraph.from_edges(1, 3, [(0, 0), (1, 0), (2, 0)])
        rep = degree2_chain_report(g)
        assert rep.acyclic and rep.chain_count == 0 and rep.longest_chain == 0

    def test_two_chains(self):
        g = TannerGraph.from_edges(3, 5, [(0, 0), (1, 0), (1, 1), (2, 1), (3, 2), (4, 2)])
        rep = degree2_chain_report(g)
        assert rep.chain_count == 2 and rep.longest_chain == 2


class TestAlist:
    def test_four_cycle_text(self):
        assert to_alist(four_cycle()) == "2 2\n2 2\n2 2\n2 2\n1 2\n1 2\n1 2\n1 2\n"

    def test_round_trip(self):
        g = four_cycle()
        h = from_alist(to_alist(g))
        assert h.same_structure(g)
        assert h.check_target.tolist() == [2, 2]

    def test_zero_padding_ignored(self):
        text = "2 2\n2 2\n1 2\n2 1\n1 0\n1 2\n1 2\n2 0\n"
        g = from_alist(text)
        assert g.symbol_adj == [[0], [0, 1]]
        assert g.check_adj == [[0, 1], [1]]
        assert to_alist(g) == text

    def test_degree_zero_node(self):
        g = TannerGraph.from_edges(2, 2, [(0, 0), (1, 0)])
        assert from_alist(to_alist(g)).same_structure(g)

    @pytest.mark.parametrize(
        "text, match",
        [
            ("2 2\n2 2\n2 2 2\n2 2\n1 2\n1 2\n1 2\n1 2\n", "column degrees"),
            ("2 2\n2 2\n2 2\n2 2\n1 2\n1 2\n1 2\n", "neighbour lines"),
            ("2 2\n2 2\n2 2\n2 2\n1 3\n1 2\n1 2\n1 2\n", "out of range"),
            ("2 2\n2 2\n2 2\n2 2\n1 2\n1 2\n1 2\n2 0\n", "row 2"),
            ("2 2\n3 2\n2 2\n2 2\n1 2\n1 2\n1 2\n1 2\n", "maximum"),
            ("2 2\nx 2\n2 2\n2 2\n1 2\n1 2\n1 2\n1 2\n", "non-integer"),
            ("2 2\n", "four header"),
        ],
    )
    def test_malformed(self, text, match):
        with pytest.raises(AlistError, match=match):
            from_alist(text)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_round_trip_property(self, seed):
        rng = np.random.default_rng(seed)
        g = random_bipartite(rng, int(rng.integers(1, 20)), int(rng.integers(1, 12)), 0.3)
        assert from_alist(to_alist(g)).same_structure(g)
