from fractions import Fraction
from itertools import combinations

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from scipy.optimize import linprog

from distfactor.errors import CapabilityError, InvalidParameterError
from distfactor.graph import (
    ExtremalParams,
    Graph,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    extremal_graph,
    path_graph,
    random_min_degree_graph,
    star_graph,
)
from distfactor.matching import (
    FractionalMatchingNumber,
    fractional_matching_number,
    half_integral_oracle,
    has_fractional_perfect_matching,
    has_k2_ck_factor,
    has_star_factor,
    isolated_count,
    max_deficiency,
)

from .conftest import brute_deficiency, brute_factor, graphs, random_edge_graph


def lp_alpha_f(g: Graph) -> float:
    """Fractional matching number by linear programming."""
    edges = list(g.edges())
    if not edges:
        return 0.0
    a = np.zeros((g.order, len(edges)))
    for j, (u, v) in enumerate(edges):
        a[u, j] = a[v, j] = 1
    res = linprog(-np.ones(len(edges)), A_ub=a, b_ub=np.ones(g.order), bounds=(0, None), method="highs")
    return -res.fun


def double_cover_alpha_f(g: Graph) -> Fraction:
    """alpha_f equals half the maximum matching of the bipartite double cover."""
    h = nx.Graph()
    h.add_nodes_from([("l", v) for v in range(g.order)] + [("r", v) for v in range(g.order)])
    for u, v in g.edges():
        h.add_edge(("l", u), ("r", v))
        h.add_edge(("l", v), ("r", u))
    left = [("l", v) for v in range(g.order)]
    m = nx.bipartite.hopcroft_karp_matching(h, top_nodes=left)
    return Fraction(len(m) // 2, 2)


class TestIsolated:
    def test_examples(self):
        k13 = star_graph(3)
        assert isolated_count(k13, []) == 0
        assert isolated_count(k13, [0]) == 3
        assert isolated_count(empty_graph(4), [1]) == 3
        assert isolated_count(path_graph(4), [1]) == 1

    def test_out_of_range(self):
        with pytest.raises(InvalidParameterError):
            isolated_count(path_graph(3), [3])


class TestDeficiency:
    def test_star(self):
        r = max_deficiency(star_graph(3))
        assert (r.value, r.witness) == (2, (0,))

    def test_complete(self):
        r = max_deficiency(complete_graph(5))
        assert (r.value, r.witness) == (0, ())

    def test_extremal_a(self):
        r = max_deficiency(extremal_graph(ExtremalParams("A", 22, 1, 1)))
        assert (r.value, r.witness) == (1, (0,))

    def test_weighted_star_deficiency(self):
        # K_{1,5} with weight 2: removing the centre leaves 5 isolated, 5 - 2 = 3
        r = max_deficiency(star_graph(5), weight=2)
        assert (r.value, r.witness) == (3, (0,))

    def test_capability(self):
        with pytest.raises(CapabilityError):
            max_deficiency(path_graph(27))
        assert max_deficiency(path_graph(27), mode="pruned").value == 1

    def test_bad_mode(self):
        with pytest.raises(InvalidParameterError):
            max_deficiency(path_graph(3), mode="greedy")

    @settings(max_examples=300, deadline=None)
    @given(graphs(max_n=9))
    def test_brute_force(self, g):
        for w in (1, 2, 3):
            r = max_deficiency(g, w)
            assert r.value == brute_deficiency(g, w)
            assert isolated_count(g, r.witness) - w * len(r.witness) == r.value

    @settings(max_examples=300, deadline=None)
    @given(graphs(max_n=11))
    def test_pruned_agrees(self, g):
        for w in (1, 2):
            assert max_deficiency(g, w, "pruned") == max_deficiency(g, w)

    def test_witness_tiebreak(self):
        # on P4 the empty set already attains the maximum 0
        r = max_deficiency(path_graph(4))
        assert r.witness == ()
        assert r.value == 0
        r = max_deficiency(path_graph(5))
        assert (r.value, r.witness) == (1, (1, 3))

    def test_pruned_on_larger_extremal(self):
        p = ExtremalParams("A", 40, 3, 2)
        r = max_deficiency(extremal_graph(p), mode="pruned")
        assert (r.value, r.witness) == (p.k, (0, 1, 2))


class TestFractional:
    @pytest.mark.parametrize(
        "g, expected",
        [
            (cycle_graph(5), Fraction(5, 2)),
            (star_graph(3), Fraction(1)),
            (complete_graph(4), Fraction(2)),
            (path_graph(3), Fraction(1)),
            (extremal_graph(ExtremalParams("A", 22, 1, 1)), Fraction(21, 2)),
        ],
    )
    def test_examples(self, g, expected):
        assert fractional_matching_number(g).value == expected

    def test_rendering(self):
        assert str(FractionalMatchingNumber(21)) == "21/2"
        assert str(FractionalMatchingNumber(10)) == "5"

    @settings(max_examples=200, deadline=None)
    @given(graphs(max_n=10))
    def test_lp_oracle(self, g):
        got = fractional_matching_number(g)
        assert 0 <= got.twice_value <= g.order
        assert float(got.value) == pytest.approx(lp_alpha_f(g), abs=1e-7)
        assert got.value == double_cover_alpha_f(g)

    @settings(max_examples=150, deadline=None)
    @given(graphs(max_n=7))
    def test_half_integral_oracle(self, g):
        if g.num_edges > 12:
            return
        assert half_integral_oracle(g) == fractional_matching_number(g)

    def test_half_integral_examples(self):
        assert half_integral_oracle(path_graph(3)).value == 1
        assert half_integral_oracle(cycle_graph(5)).value == Fraction(5, 2)
        with pytest.raises(CapabilityError):
            half_integral_oracle(complete_graph(6))

    def test_edge_addition_monotone(self):
        rng = np.random.default_rng(8)
        for _ in range(200):
            n = int(rng.integers(3, 12))
            g = random_edge_graph(n, int(rng.integers(0, n * (n - 1) // 2)), rng)
            missing = [p for p in combinations(range(n), 2) if not g.has_edge(*p)]
            h = g.add_edges([missing[int(rng.integers(len(missing)))]])
            assert fractional_matching_number(h).twice_value >= fractional_matching_number(g).twice_value


class TestFactors:
    def test_fpm_examples(self):
        assert has_fractional_perfect_matching(cycle_graph(5))
        assert not has_fractional_perfect_matching(star_graph(3))
        assert not has_fractional_perfect_matching(extremal_graph(ExtremalParams("A", 22, 1, 1)))

    def test_k2ck_examples(self):
        assert has_k2_ck_factor(cycle_graph(5))
        assert has_k2_ck_factor(disjoint_union(complete_graph(2), cycle_graph(3)))
        assert not has_k2_ck_factor(star_graph(2))

    def test_star_examples(self):
        assert has_star_factor(star_graph(3), 3)
        assert not has_star_factor(star_graph(3), 2)
        assert has_star_factor(path_graph(5), 2)
        assert not has_star_factor(extremal_graph(ExtremalParams("B", 17, 1, 2)), 2)
        with pytest.raises(InvalidParameterError):
            has_star_factor(path_graph(3), 1)

    @settings(max_examples=120, deadline=None)
    @given(graphs(min_n=2, max_n=6))
    def test_brute_factor_oracle(self, g):
        if g.num_edges > 11:
            return
        assert has_k2_ck_factor(g) == brute_factor(g, "k2ck")
        assert has_k2_ck_factor(g) == has_fractional_perfect_matching(g)
        for k in (2, 3):
            assert has_star_factor(g, k) == brute_factor(g, "star", k)

    def test_random_connected(self):
        rng = np.random.default_rng(21)
        for _ in range(60):
            n = int(rng.integers(3, 8))
            g = random_min_degree_graph(n, 1, 0.3, int(rng.integers(2**32)))
            if g.num_edges > 12:
                continue
            assert has_k2_ck_factor(g) == brute_factor(g, "k2ck")
            assert has_star_factor(g, 2) == brute_factor(g, "star", 2)
