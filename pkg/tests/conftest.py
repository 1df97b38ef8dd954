from __future__ import annotations

from itertools import combinations

import numpy as np
import pytest
from hypothesis import strategies as st

from distfactor.graph import Graph


def floyd_warshall(g: Graph) -> np.ndarray:
    n = g.order
    inf = n + 1
    d = np.full((n, n), inf, dtype=np.int64)
    np.fill_diagonal(d, 0)
    for u, v in g.edges():
        d[u, v] = d[v, u] = 1
    for w in range(n):
        d = np.minimum(d, d[:, [w]] + d[[w], :])
    return d


def brute_deficiency(g: Graph, weight: int = 1) -> int:
    best = None
    for r in range(g.order + 1):
        for s in combinations(range(g.order), r):
            rest = set(range(g.order)) - set(s)
            iso = sum(1 for v in rest if not any(g.has_edge(v, u) for u in rest))
            val = iso - weight * r
            best = val if best is None else max(best, val)
    return best


def _components_of_edges(n, edges):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        parent[find(u)] = find(v)
    comps = {}
    for v in range(n):
        comps.setdefault(find(v), []).append(v)
    return list(comps.values())


def brute_factor(g: Graph, kind: str, k: int = 2) -> bool:
    """Search all spanning edge subsets for a {K2, cycles} or star factor."""
    edges = list(g.edges())
    n = g.order
    for mask in range(1 << len(edges)):
        chosen = [e for i, e in enumerate(edges) if mask >> i & 1]
        deg = [0] * n
        for u, v in chosen:
            deg[u] += 1
            deg[v] += 1
        if min(deg) == 0:
            continue
        ok = True
        for comp in _components_of_edges(n, chosen):
            cset = set(comp)
            m = sum(1 for u, v in chosen if u in cset)
            degs = [deg[v] for v in comp]
            if kind == "k2ck":
                single_edge = len(comp) == 2 and m == 1
                cycle = len(comp) >= 3 and all(d == 2 for d in degs)
                ok = single_edge or cycle
            else:
                star = m == len(comp) - 1 and max(degs) == m and m <= k
                ok = star
            if not ok:
                break
        if ok:
            return True
    return False


def random_edge_graph(n: int, m: int, rng: np.random.Generator) -> Graph:
    pairs = list(combinations(range(n), 2))
    pick = rng.choice(len(pairs), size=m, replace=False)
    return Graph.from_edges(n, [pairs[i] for i in pick])


@st.composite
def graphs(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, keep in zip(pairs, mask) if keep])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance")
        for number in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[number])
