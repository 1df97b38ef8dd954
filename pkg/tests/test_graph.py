from math import comb

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings

from distfactor.errors import DisconnectedGraphError, GraphParseError, InvalidParameterError
from distfactor.graph import (
    ExtremalParams,
    Graph,
    all_pairs_distances,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    extremal_graph,
    from_graph6,
    is_connected,
    join,
    min_degree,
    non_bridge_edges,
    path_graph,
    random_min_degree_graph,
    read_graph6_lines,
    standard_graph,
    star_graph,
    to_graph6,
)

from .conftest import floyd_warshall, graphs


def edge_set(g):
    return set(g.edges())


class TestGraph6:
    @pytest.mark.parametrize(
        "text, n, edges",
        [("A?", 2, set()), ("A_", 2, {(0, 1)}), ("Bw", 3, {(0, 1), (0, 2), (1, 2)})],
    )
    def test_hand_encoded(self, text, n, edges):
        g = from_graph6(text)
        assert g.order == n
        assert edge_set(g) == edges

    def test_header_and_newline(self):
        assert edge_set(from_graph6(">>graph6<<Bw\n")) == edge_set(complete_graph(3))

    def test_read_lines_skips_headers_and_blanks(self):
        gs = read_graph6_lines([">> some header", "", "A_", "Bw\n"])
        assert [g.order for g in gs] == [2, 3]

    @pytest.mark.parametrize(
        "text, offset",
        [("A\x01", 1), ("Bw ", 2), ("B", 1), ("Bww", 2), ("", 0), ("~?", 2)],
    )
    def test_errors_carry_offset(self, text, offset):
        with pytest.raises(GraphParseError) as exc:
            from_graph6(text)
        assert exc.value.offset == offset

    def test_large_order_header(self):
        g = path_graph(70)
        text = to_graph6(g)
        assert text[0] == "~"
        assert text == nx.to_graph6_bytes(nx.path_graph(70), header=False).decode().strip()
        assert edge_set(from_graph6(text)) == edge_set(g)

    @settings(max_examples=200, deadline=None)
    @given(graphs(max_n=12))
    def test_round_trip_against_networkx(self, g):
        h = nx.Graph()
        h.add_nodes_from(range(g.order))
        h.add_edges_from(g.edges())
        expected = nx.to_graph6_bytes(h, header=False).decode().strip()
        text = to_graph6(g)
        assert text == expected
        assert to_graph6(from_graph6(text)) == text


class TestConstructors:
    def test_complete(self):
        g = standard_graph("complete", 3)
        assert g.num_edges == 3

    def test_cycle(self):
        g = standard_graph("cycle", 4)
        assert g.num_edges == 4
        assert set(g.degrees) == {2}

    def test_star(self):
        g = standard_graph("star", 3)
        assert sorted(g.degrees) == [1, 1, 1, 3]

    def test_short_cycle_rejected(self):
        with pytest.raises(InvalidParameterError):
            standard_graph("cycle", 2)

    def test_join_union(self):
        p3 = join(complete_graph(1), disjoint_union(complete_graph(1), complete_graph(1)))
        assert edge_set(p3) == {(0, 1), (0, 2)}
        two_k2 = disjoint_union(complete_graph(2), complete_graph(2))
        assert (two_k2.order, two_k2.num_edges) == (4, 2)
        assert edge_set(join(complete_graph(2), complete_graph(2))) == edge_set(complete_graph(4))

    def test_rejects_self_loop(self):
        with pytest.raises(InvalidParameterError):
            Graph.from_edges(3, [(1, 1)])

    def test_rejects_asymmetric(self):
        with pytest.raises(InvalidParameterError):
            Graph(2, (0b10, 0))


def _enumerated_edges(p: ExtremalParams) -> int:
    # pairs touching the hub block, or lying inside the clique block
    hub, clique, _ = p.blocks()
    count = 0
    for u in range(p.n):
        for v in range(u + 1, p.n):
            if u in hub or v in hub or (u in clique and v in clique):
                count += 1
    return count


class TestExtremal:
    def test_a_22_1_1(self):
        p = ExtremalParams("A", 22, 1, 1)
        g = extremal_graph(p)
        assert g.order == 22
        assert g.num_edges == _enumerated_edges(p) == comb(19, 2) + 21 == 192
        assert min_degree(g) == 1
        assert is_connected(g)
        d = all_pairs_distances(g)
        assert d.max() == 2

    def test_b_17_1_2(self):
        g = extremal_graph(ExtremalParams("B", 17, 1, 2))
        assert g.order == 17
        assert min_degree(g) == 1
        assert g.degrees.count(1) == 3

    @pytest.mark.parametrize(
        "family, n, s, k",
        [("A", 22, 1, 1), ("A", 30, 3, 2), ("A", 12, 2, 0), ("B", 17, 1, 2), ("B", 40, 3, 3)],
    )
    def test_degree_signature(self, family, n, s, k):
        p = ExtremalParams(family, n, s, k)
        g = extremal_graph(p)
        assert g.num_edges == _enumerated_edges(p)
        assert sum(g.degrees) == 2 * g.num_edges
        hub, clique, indep = p.blocks()
        assert all(g.degree(v) == n - 1 for v in hub)
        assert all(g.degree(v) == s for v in indep)
        assert all(g.degree(v) == p.clique_size - 1 + s for v in clique)
        if family == "A":
            assert len(indep) == s + k
            assert all(g.degree(v) == n - s - k - 1 for v in clique)
        assert min_degree(g) == s

    def test_distance_two_between_non_adjacent(self):
        g = extremal_graph(ExtremalParams("A", 25, 2, 3))
        d = all_pairs_distances(g)
        a = g.adjacency_matrix()
        off = ~np.eye(g.order, dtype=bool)
        assert np.all(d[a] == 1)
        assert np.all(d[off & ~a] == 2)

    @pytest.mark.parametrize(
        "family, n, s, k", [("A", 5, 2, 1), ("A", 10, 0, 1), ("B", 7, 2, 2), ("B", 20, 1, 1), ("C", 9, 1, 1)]
    )
    def test_invalid(self, family, n, s, k):
        with pytest.raises(InvalidParameterError):
            ExtremalParams(family, n, s, k)


class TestDistances:
    def test_path(self):
        assert all_pairs_distances(path_graph(3)).tolist() == [[0, 1, 2], [1, 0, 1], [2, 1, 0]]

    def test_cycle(self):
        d = all_pairs_distances(cycle_graph(4))
        for i in range(4):
            assert np.roll(d[i], -i).tolist() == [0, 1, 2, 1]

    def test_disconnected(self):
        with pytest.raises(DisconnectedGraphError):
            all_pairs_distances(disjoint_union(complete_graph(2), complete_graph(2)))

    def test_floyd_warshall_agreement(self):
        rng = np.random.default_rng(2024)
        for _ in range(200):
            n = int(rng.integers(2, 13))
            g = random_min_degree_graph(n, 1, float(rng.uniform(0.05, 0.6)), int(rng.integers(2**32)))
            d = all_pairs_distances(g)
            assert np.array_equal(d, floyd_warshall(g))
            assert np.array_equal(d, d.T)
            off = ~np.eye(n, dtype=bool)
            assert d[off].min() >= 1
            # triangle inequality d_ij <= d_il + d_lj
            assert np.all(d[:, None, :] <= d[:, :, None] + d[None, :, :])


class TestQueries:
    def test_min_degree(self):
        assert min_degree(star_graph(3)) == 1
        assert min_degree(extremal_graph(ExtremalParams("A", 22, 1, 1))) == 1

    def test_connectivity(self):
        assert not is_connected(disjoint_union(complete_graph(2), complete_graph(2)))
        assert is_connected(empty_graph(1))

    def test_bridges(self):
        assert non_bridge_edges(path_graph(6)) == []
        assert len(non_bridge_edges(cycle_graph(5))) == 5

    @settings(max_examples=100, deadline=None)
    @given(graphs(max_n=9))
    def test_handshake(self, g):
        assert sum(g.degrees) == 2 * g.num_edges


class TestRandom:
    def test_contract(self):
        g = random_min_degree_graph(10, 2, 0.3, 7)
        assert is_connected(g)
        assert min_degree(g) >= 2

    def test_forced_complete(self):
        for seed in range(5):
            assert edge_set(random_min_degree_graph(5, 4, 0.1, seed)) == edge_set(complete_graph(5))

    def test_deterministic(self):
        a = random_min_degree_graph(15, 3, 0.2, 99)
        b = random_min_degree_graph(15, 3, 0.2, 99)
        assert a == b
        assert a != random_min_degree_graph(15, 3, 0.2, 100)

    @pytest.mark.parametrize("n, delta, p", [(3, 3, 0.5), (5, 0, 0.5), (5, 2, 0.0), (5, 2, 1.0)])
    def test_invalid(self, n, delta, p):
        with pytest.raises(InvalidParameterError):
            random_min_degree_graph(n, delta, p, 0)
