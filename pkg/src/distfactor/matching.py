"""Deficiency, fractional matching number and factor predicates.

Everything here is exact integer arithmetic.  The deficiency
``max_S i(G-S) - w|S|`` is evaluated by walking all subsets in Gray-code
order, so each step toggles one vertex and the isolated-vertex count is
updated from that vertex's neighbourhood alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .errors import CapabilityError, InvalidParameterError
from .graph import Graph, _bits

EXHAUSTIVE_MAX_ORDER = 26
ORACLE_MAX_EDGES = 12

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda fn: fn


@dataclass(frozen=True)
class DeficiencyResult:
    value: int
    witness: tuple[int, ...]
    weight: int = 1


@dataclass(frozen=True, order=True)
class FractionalMatchingNumber:
    twice_value: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.twice_value, 2)

    def __str__(self) -> str:
        return str(self.value)


def isolated_count(g: Graph, s: Iterable[int]) -> int:
    """Number of vertices outside ``s`` whose neighbours all lie in ``s``."""
    mask = 0
    for v in s:
        if not 0 <= v < g.order:
            raise InvalidParameterError(f"vertex {v} out of range for order {g.order}")
        mask |= 1 << v
    return _isolated_mask(g, mask)


def _isolated_mask(g: Graph, mask: int) -> int:
    return sum(1 for v, nb in enumerate(g.adj) if not mask >> v & 1 and not nb & ~mask)


@njit(cache=True)
def _gray_scan(n, indptr, indices, weight):
    outside = np.empty(n, dtype=np.int64)
    in_s = np.zeros(n, dtype=np.bool_)
    iso = 0
    for v in range(n):
        outside[v] = indptr[v + 1] - indptr[v]
        if outside[v] == 0:
            iso += 1
    best, best_mask, best_size = iso, np.int64(0), 0
    mask = np.int64(0)
    size = 0
    total = np.int64(1) << n
    for i in range(1, total):
        u = 0
        t = i
        while t & 1 == 0:
            t >>= 1
            u += 1
        if not in_s[u]:
            if outside[u] == 0:
                iso -= 1
            in_s[u] = True
            for e in range(indptr[u], indptr[u + 1]):
                w = indices[e]
                outside[w] -= 1
                if outside[w] == 0 and not in_s[w]:
                    iso += 1
            size += 1
            mask |= np.int64(1) << u
        else:
            in_s[u] = False
            for e in range(indptr[u], indptr[u + 1]):
                w = indices[e]
                if outside[w] == 0 and not in_s[w]:
                    iso -= 1
                outside[w] += 1
            if outside[u] == 0:
                iso += 1
            size -= 1
            mask &= ~(np.int64(1) << u)
        val = iso - weight * size
        if val > best:
            best, best_mask, best_size = val, mask, size
        elif val == best and size <= best_size:
            if size < best_size:
                best_mask, best_size = mask, size
            else:
                diff = mask ^ best_mask
                if mask & diff & -diff:
                    best_mask = mask
    return best, best_mask


def _csr(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    indptr = np.zeros(g.order + 1, dtype=np.int64)
    indices = []
    for v in range(g.order):
        nbrs = _bits(g.adj[v])
        indices.extend(nbrs)
        indptr[v + 1] = indptr[v] + len(nbrs)
    return indptr, np.asarray(indices, dtype=np.int64)


def _better(val: int, mask: int, best: int, best_mask: int) -> bool:
    if val != best:
        return val > best
    size, best_size = mask.bit_count(), best_mask.bit_count()
    if size != best_size:
        return size < best_size
    diff = mask ^ best_mask
    return bool(mask & diff & -diff)


def _pruned_scan(g: Graph, weight: int) -> tuple[int, int]:
    # only S = N(T) for independent T can be strictly better than every other S
    best, best_mask = _isolated_mask(g, 0), 0
    seen = {0}
    stack = [(0, 0, 0)]  # (independent set, its neighbourhood, next vertex)
    while stack:
        t, nbhd, start = stack.pop()
        for v in range(start, g.order):
            if (t | nbhd) >> v & 1:
                continue
            t2, n2 = t | 1 << v, nbhd | g.adj[v]
            stack.append((t2, n2, v + 1))
            if n2 not in seen:
                seen.add(n2)
                val = _isolated_mask(g, n2) - weight * n2.bit_count()
                if _better(val, n2, best, best_mask):
                    best, best_mask = val, n2
    return best, best_mask


def max_deficiency(g: Graph, weight: int = 1, mode: str = "exhaustive") -> DeficiencyResult:
    """Maximum of ``i(G-S) - weight*|S|`` over all vertex subsets ``S``.

    The witness is the smallest maximiser, ties broken lexicographically.
    ``mode="pruned"`` restricts to ``S = N(T)`` for independent ``T``,
    which gives the same value and witness but has no order cap.
    """
    if mode == "exhaustive":
        if g.order > EXHAUSTIVE_MAX_ORDER:
            raise CapabilityError(
                f"exhaustive deficiency limited to n <= {EXHAUSTIVE_MAX_ORDER} "
                f"(got {g.order}); use mode='pruned'"
            )
        indptr, indices = _csr(g)
        best, mask = _gray_scan(g.order, indptr, indices, weight)
        best, mask = int(best), int(mask)
    elif mode == "pruned":
        best, mask = _pruned_scan(g, weight)
    else:
        raise InvalidParameterError(f"unknown mode {mode!r}")
    return DeficiencyResult(best, tuple(_bits(mask)), weight)


def fractional_matching_number(g: Graph, mode: str = "exhaustive") -> FractionalMatchingNumber:
    return FractionalMatchingNumber(g.order - max_deficiency(g, 1, mode).value)


def has_fractional_perfect_matching(g: Graph, mode: str = "exhaustive") -> bool:
    return fractional_matching_number(g, mode).twice_value == g.order


def has_k2_ck_factor(g: Graph, mode: str = "exhaustive") -> bool:
    """Whether a spanning subgraph with every component K2 or a k-cycle (any k >= 3) exists."""
    return max_deficiency(g, 1, mode).value <= 0


def has_star_factor(g: Graph, k: int, mode: str = "exhaustive") -> bool:
    """Whether a spanning subgraph with every component in {K_{1,1}, ..., K_{1,k}} exists."""
    if k < 2:
        raise InvalidParameterError("star factor needs k >= 2")
    return max_deficiency(g, k, mode).value <= 0


def half_integral_oracle(g: Graph) -> FractionalMatchingNumber:
    """Best edge weighting with values in {0, 1/2, 1}, found by exhaustive search."""
    edges = list(g.edges())
    m = len(edges)
    if m > ORACLE_MAX_EDGES:
        raise CapabilityError(f"half-integral oracle limited to m <= {ORACLE_MAX_EDGES} (got {m})")
    load = [0] * g.order  # in half units, capacity 2
    best = 0

    def walk(i: int, total: int) -> None:
        nonlocal best
        if total + 2 * (m - i) <= best:
            return
        if i == m:
            best = total
            return
        u, v = edges[i]
        for w in (2, 1, 0):
            if load[u] + w <= 2 and load[v] + w <= 2:
                load[u] += w
                load[v] += w
                walk(i + 1, total + w)
                load[u] -= w
                load[v] -= w

    walk(0, 0)
    return FractionalMatchingNumber(best)
