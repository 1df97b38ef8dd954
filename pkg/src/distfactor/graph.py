"""Simple undirected graphs on vertices ``0..n-1``.

Adjacency is stored as one integer bitmask per vertex, which keeps subset
arithmetic (neighbourhoods, isolated-vertex tests) cheap for the exhaustive
routines in :mod:`distfactor.matching`.  Graphs are immutable; every
"modifying" helper returns a new instance.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .errors import DisconnectedGraphError, GraphParseError, InvalidParameterError

MAX_ORDER = 10_000
GRAPH6_MAX_ORDER = 2**18


@dataclass(frozen=True)
class Graph:
    order: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if self.order < 1:
            raise InvalidParameterError("graph order must be at least 1")
        if len(self.adj) != self.order:
            raise InvalidParameterError("adjacency length does not match order")
        full = (1 << self.order) - 1
        for v, nb in enumerate(self.adj):
            if nb >> v & 1:
                raise InvalidParameterError(f"self-loop at vertex {v}")
            if nb & ~full:
                raise InvalidParameterError(f"vertex {v} has out-of-range neighbour")
            rest = nb
            while rest:
                low = rest & -rest
                u = low.bit_length() - 1
                if not self.adj[u] >> v & 1:
                    raise InvalidParameterError(f"asymmetric adjacency {v}-{u}")
                rest ^= low

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidParameterError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InvalidParameterError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @classmethod
    def from_adjacency_matrix(cls, a) -> Graph:
        a = np.asarray(a, dtype=bool)
        n = a.shape[0]
        iu, ju = np.nonzero(np.triu(a, 1))
        return cls.from_edges(n, zip(iu.tolist(), ju.tolist()))

    @property
    def n(self) -> int:
        return self.order

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return _bits(self.adj[v])

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(nb.bit_count() for nb in self.adj)

    @cached_property
    def num_edges(self) -> int:
        return sum(self.degrees) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, nb in enumerate(self.adj):
            for v in _bits(nb >> (u + 1) << (u + 1)):
                yield u, v

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.order, self.order), dtype=bool)
        for u, v in self.edges():
            a[u, v] = a[v, u] = True
        return a

    def add_edges(self, edges: Iterable[tuple[int, int]]) -> Graph:
        adj = list(self.adj)
        for u, v in edges:
            if u == v:
                raise InvalidParameterError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return Graph(self.order, tuple(adj))

    def remove_edge(self, u: int, v: int) -> Graph:
        if not self.has_edge(u, v):
            raise InvalidParameterError(f"({u}, {v}) is not an edge")
        adj = list(self.adj)
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
        return Graph(self.order, tuple(adj))

    def delete_vertices(self, vertices: Iterable[int]) -> Graph:
        """Induced subgraph on the remaining vertices, relabelled in order."""
        drop = set(vertices)
        keep = [v for v in range(self.order) if v not in drop]
        index = {v: i for i, v in enumerate(keep)}
        edges = [(index[u], index[v]) for u, v in self.edges() if u in index and v in index]
        return Graph.from_edges(len(keep), edges)

    def __repr__(self) -> str:
        return f"Graph(order={self.order}, edges={self.num_edges})"


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)))


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InvalidParameterError("cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(n: int) -> Graph:
    """K_{1,n}: vertex 0 is the centre, 1..n are leaves."""
    if n < 1:
        raise InvalidParameterError("star needs at least one leaf")
    return Graph.from_edges(n + 1, [(0, i) for i in range(1, n + 1)])


_STANDARD = {"complete": complete_graph, "cycle": cycle_graph, "star": star_graph}


def standard_graph(kind: str, n: int) -> Graph:
    try:
        build = _STANDARD[kind]
    except KeyError:
        raise InvalidParameterError(f"unknown graph kind {kind!r}") from None
    if n < 1:
        raise InvalidParameterError("order must be at least 1")
    return build(n)


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    shift = g1.order
    return Graph(g1.order + g2.order, g1.adj + tuple(nb << shift for nb in g2.adj))


def join(g1: Graph, g2: Graph) -> Graph:
    n1, n2 = g1.order, g2.order
    left = ((1 << n2) - 1) << n1
    right = (1 << n1) - 1
    adj = tuple(nb | left for nb in g1.adj) + tuple((nb << n1) | right for nb in g2.adj)
    return Graph(n1 + n2, adj)


@dataclass(frozen=True)
class ExtremalParams:
    """Parameters of the two extremal families.

    Family ``A`` is ``K_s v (K_{n-2s-k} + (s+k)K_1)``; family ``B`` is
    ``K_s v (K_{n-ks-s-1} + (ks+1)K_1)``.  Vertex labels are laid out as
    hub block, clique block, independent block.
    """

    family: str
    n: int
    s: int
    k: int

    def __post_init__(self):
        if self.family not in ("A", "B"):
            raise InvalidParameterError(f"family must be 'A' or 'B', got {self.family!r}")
        if self.s < 1:
            raise InvalidParameterError("s must be at least 1")
        if self.family == "A" and self.k < 0:
            raise InvalidParameterError("family A needs k >= 0")
        if self.family == "B" and self.k < 2:
            raise InvalidParameterError("family B needs k >= 2")
        if self.clique_size < 1:
            raise InvalidParameterError(
                f"clique block would be empty for {self.family}(n={self.n}, s={self.s}, k={self.k})"
            )

    @property
    def clique_size(self) -> int:
        if self.family == "A":
            return self.n - 2 * self.s - self.k
        return self.n - self.k * self.s - self.s - 1

    @property
    def independent_size(self) -> int:
        if self.family == "A":
            return self.s + self.k
        return self.k * self.s + 1

    @property
    def block_sizes(self) -> tuple[int, int, int]:
        return self.s, self.clique_size, self.independent_size

    def blocks(self) -> list[list[int]]:
        a, b, _ = self.block_sizes
        return [list(range(a)), list(range(a, a + b)), list(range(a + b, self.n))]


def extremal_graph(p: ExtremalParams) -> Graph:
    hub, clique, indep = p.block_sizes
    return join(complete_graph(hub), disjoint_union(complete_graph(clique), empty_graph(indep)))


# ---------------------------------------------------------------------------
# queries
# ---------------------------------------------------------------------------


def min_degree(g: Graph) -> int:
    return min(g.degrees)


def max_degree(g: Graph) -> int:
    return max(g.degrees)


def reachable(g: Graph, source: int, adj: Sequence[int] | None = None) -> int:
    """Bitmask of vertices reachable from ``source``."""
    adj = g.adj if adj is None else adj
    seen = frontier = 1 << source
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= adj[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen


def is_connected(g: Graph) -> bool:
    return reachable(g, 0) == (1 << g.order) - 1


def components(g: Graph) -> list[list[int]]:
    left = (1 << g.order) - 1
    out = []
    while left:
        v = (left & -left).bit_length() - 1
        comp = reachable(g, v)
        out.append(_bits(comp))
        left &= ~comp
    return out


def is_bridge(g: Graph, u: int, v: int) -> bool:
    adj = list(g.adj)
    adj[u] &= ~(1 << v)
    adj[v] &= ~(1 << u)
    return not reachable(g, u, adj) >> v & 1


def non_bridge_edges(g: Graph) -> list[tuple[int, int]]:
    return [e for e in g.edges() if not is_bridge(g, *e)]


def all_pairs_distances(g: Graph) -> np.ndarray:
    """Shortest-path distance matrix (int64, read-only) by BFS from every vertex."""
    if not is_connected(g):
        raise DisconnectedGraphError("graph is disconnected; distances are undefined")
    if g.order == 1:
        d = np.zeros((1, 1), dtype=np.int64)
    else:
        rows, cols = zip(*g.edges())
        data = np.ones(len(rows), dtype=np.int8)
        a = csr_matrix((data, (rows, cols)), shape=(g.order, g.order))
        d = shortest_path(a, method="D", directed=False, unweighted=True).astype(np.int64)
    d.setflags(write=False)
    return d


# ---------------------------------------------------------------------------
# graph6
# ---------------------------------------------------------------------------


def _graph6_size_bytes(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> sh) & 63) + 63) for sh in (12, 6, 0))
    return "~~" + "".join(chr(((n >> sh) & 63) + 63) for sh in (30, 24, 18, 12, 6, 0))


def to_graph6(g: Graph) -> str:
    n = g.order
    bits = []
    for j in range(1, n):
        nb = g.adj[j]
        bits.extend(nb >> i & 1 for i in range(j))
    bits.extend([0] * (-len(bits) % 6))
    body = []
    for i in range(0, len(bits), 6):
        val = 0
        for b in bits[i:i + 6]:
            val = val << 1 | b
        body.append(chr(val + 63))
    return _graph6_size_bytes(n) + "".join(body)


def from_graph6(text: str) -> Graph:
    """Decode a single graph6 line (an optional ``>>graph6<<`` prefix is allowed)."""
    data = text.rstrip("\r\n")
    base = 0
    if data.startswith(">>graph6<<"):
        data = data[10:]
        base = 10
    for i, ch in enumerate(data):
        if not 63 <= ord(ch) <= 126:
            raise GraphParseError(f"invalid graph6 character {ch!r}", base + i)
    if not data:
        raise GraphParseError("empty graph6 string", base)
    if data[0] != "~":
        n, pos = ord(data[0]) - 63, 1
    elif len(data) > 1 and data[1] == "~":
        if len(data) < 8:
            raise GraphParseError("truncated size field", base + len(data))
        n, pos = _decode6(data[2:8]), 8
    else:
        if len(data) < 4:
            raise GraphParseError("truncated size field", base + len(data))
        n, pos = _decode6(data[1:4]), 4
    if n < 1:
        raise GraphParseError("graph6 encodes an empty vertex set", base)
    if n > GRAPH6_MAX_ORDER:
        raise GraphParseError(f"order {n} exceeds supported maximum", base)
    nbits = n * (n - 1) // 2
    need = -(-nbits // 6)
    body = data[pos:]
    if len(body) < need:
        raise GraphParseError(
            f"truncated bit field: expected {need} bytes, got {len(body)}", base + len(data)
        )
    if len(body) > need:
        raise GraphParseError("trailing bytes after bit field", base + pos + need)
    adj = [0] * n
    bit = 0
    i, j = 0, 1
    for ch in body:
        val = ord(ch) - 63
        for sh in range(5, -1, -1):
            if bit >= nbits:
                break
            if val >> sh & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            bit += 1
            i += 1
            if i == j:
                i, j = 0, j + 1
    return Graph(n, tuple(adj))


def _decode6(chunk: str) -> int:
    val = 0
    for ch in chunk:
        val = val << 6 | (ord(ch) - 63)
    return val


def read_graph6_lines(lines: Iterable[str]) -> list[Graph]:
    out = []
    for line in lines:
        line = line.rstrip("\r\n")
        if not line.strip() or line == ">>graph6<<":
            continue
        if line.startswith(">>") and not line.startswith(">>graph6<<"):
            continue
        out.append(from_graph6(line))
    return out


# ---------------------------------------------------------------------------
# random generation
# ---------------------------------------------------------------------------


def _gnp_adjacency(n: int, p: float, rng: np.random.Generator) -> tuple[int, ...]:
    draws = rng.random((n, n))
    adj = [0] * n
    for u, v in zip(*np.nonzero(np.triu(draws < p, 1))):
        adj[u] |= 1 << int(v)
        adj[v] |= 1 << int(u)
    return tuple(adj)


def gnp_graph(n: int, p: float, rng: np.random.Generator) -> Graph:
    """Erdos-Renyi G(n, p) drawn from ``rng`` (no repair)."""
    return Graph(n, _gnp_adjacency(n, p, rng))


def random_min_degree_graph(n: int, delta: int, p: float, seed: int) -> Graph:
    """Connected G(n, p) sample repaired to minimum degree >= ``delta``.

    Uses ``numpy.random.default_rng(seed)`` (PCG64).  Pairs ``i < j`` are
    drawn in row-major order; each deficient vertex (ascending label) is
    then joined to uniformly chosen non-neighbours until its degree reaches
    ``delta``, and remaining components are chained by a bridge between a
    uniform vertex of each consecutive pair.  Both repairs only add edges,
    so the loop ends (``K_n`` is a fixed point).
    """
    if not n > delta >= 1:
        raise InvalidParameterError("need n > delta >= 1")
    if not 0 < p < 1:
        raise InvalidParameterError("need 0 < p < 1")
    rng = np.random.default_rng(seed)
    adj = list(_gnp_adjacency(n, p, rng))
    full = (1 << n) - 1
    while True:
        changed = False
        for v in range(n):
            while adj[v].bit_count() < delta:
                candidates = _bits(full & ~adj[v] & ~(1 << v))
                u = candidates[int(rng.integers(len(candidates)))]
                adj[v] |= 1 << u
                adj[u] |= 1 << v
                changed = True
        comps = components(Graph(n, tuple(adj)))
        for c1, c2 in zip(comps, comps[1:]):
            u = c1[int(rng.integers(len(c1)))]
            v = c2[int(rng.integers(len(c2)))]
            adj[u] |= 1 << v
            adj[v] |= 1 << u
            changed = True
        if not changed:
            return Graph(n, tuple(adj))
