"""Distance spectral radius, quotient matrices and the extremal cubics."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import BracketingError, ConvergenceError, InvalidParameterError
from .graph import ExtremalParams

POWER_TOL = 1e-12
RESIDUAL_TOL = 1e-10
MAX_ITER = 100_000
ROOT_TOL = 1e-10


@dataclass(frozen=True)
class SpectralResult:
    radius: float
    iterations: int
    residual: float
    vector: np.ndarray | None = None


def perron_root(
    m,
    tol: float = POWER_TOL,
    residual_tol: float = RESIDUAL_TOL,
    max_iter: int = MAX_ITER,
) -> SpectralResult:
    """Perron root of a nonnegative irreducible matrix by power iteration.

    Starts from the all-ones vector.  Stops once the Rayleigh quotient
    changes by at most ``tol * max(1, mu)`` *and* the residual
    ``||M v - mu v||_inf`` (``v`` of unit 2-norm) is at most
    ``residual_tol * max(1, mu)``.
    """
    m = np.asarray(m, dtype=np.float64)
    n = m.shape[0]
    if m.shape != (n, n):
        raise InvalidParameterError("matrix must be square")
    if (m < 0).any():
        raise InvalidParameterError("matrix must be nonnegative")
    x = np.full(n, 1.0 / math.sqrt(n))
    y = m @ x
    mu = float(x @ y)
    for it in range(1, max_iter + 1):
        norm = float(np.linalg.norm(y))
        if norm == 0.0:
            return SpectralResult(0.0, it, 0.0, x)
        x = y / norm
        y = m @ x
        prev, mu = mu, float(x @ y)
        scale = max(1.0, abs(mu))
        residual = float(np.abs(y - mu * x).max())
        if abs(mu - prev) <= tol * scale and residual <= residual_tol * scale:
            return SpectralResult(mu, it, residual, x)
    raise ConvergenceError(f"power iteration did not converge in {max_iter} steps", mu, max_iter)


def check_distance_matrix(d) -> np.ndarray:
    d = np.asarray(d)
    n = d.shape[0]
    if d.ndim != 2 or d.shape != (n, n):
        raise InvalidParameterError("distance matrix must be square")
    if not np.array_equal(d, d.T):
        raise InvalidParameterError("distance matrix must be symmetric")
    if np.any(np.diag(d) != 0):
        raise InvalidParameterError("distance matrix must have zero diagonal")
    off = d[~np.eye(n, dtype=bool)]
    if off.size and off.min() < 1:
        raise InvalidParameterError("off-diagonal distances must be at least 1")
    return d


def distance_spectral_radius(d, **kwargs) -> SpectralResult:
    return perron_root(check_distance_matrix(d), **kwargs)


# ---------------------------------------------------------------------------
# quotient matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuotientMatrix:
    entries: np.ndarray
    block_sizes: tuple[int, ...]
    equitable: bool

    @property
    def t(self) -> int:
        return len(self.block_sizes)


def _check_partition(n: int, partition: Sequence[Sequence[int]]) -> list[np.ndarray]:
    seen = np.zeros(n, dtype=bool)
    blocks = []
    for block in partition:
        idx = np.asarray(list(block), dtype=np.int64)
        if idx.size == 0:
            raise InvalidParameterError("partition blocks must be nonempty")
        if idx.min() < 0 or idx.max() >= n:
            raise InvalidParameterError("partition refers to a vertex out of range")
        if seen[idx].any() or np.unique(idx).size != idx.size:
            raise InvalidParameterError("partition blocks overlap")
        seen[idx] = True
        blocks.append(idx)
    if not seen.all():
        raise InvalidParameterError("partition does not cover every vertex")
    return blocks


def quotient_matrix(m, partition: Sequence[Sequence[int]]) -> QuotientMatrix:
    """Block-average quotient; ``equitable`` is decided exactly for integer input."""
    m = np.asarray(m)
    blocks = _check_partition(m.shape[0], partition)
    t = len(blocks)
    sums = np.stack([m[:, b].sum(axis=1) for b in blocks], axis=1)
    entries = np.empty((t, t), dtype=np.float64)
    equitable = True
    for i, b in enumerate(blocks):
        rows = sums[b]
        entries[i] = rows.sum(axis=0) / len(b)
        if np.any(rows != rows[0]):
            equitable = False
    return QuotientMatrix(entries, tuple(len(b) for b in blocks), equitable)


def equitable_partition(m) -> list[list[int]]:
    """Coarsest equitable partition of ``m`` by iterated row-sum refinement."""
    m = np.asarray(m)
    n = m.shape[0]
    label = np.zeros(n, dtype=np.int64)
    count = 1
    while True:
        sums = np.stack([m[:, label == c].sum(axis=1) for c in range(count)], axis=1)
        keys = {}
        new = np.empty(n, dtype=np.int64)
        for v in range(n):
            key = (int(label[v]), tuple(sums[v].tolist()))
            new[v] = keys.setdefault(key, len(keys))
        if len(keys) == count:
            break
        label, count = new, len(keys)
    blocks: dict[int, list[int]] = {}
    for v in range(n):
        blocks.setdefault(int(label[v]), []).append(v)
    return sorted(blocks.values())


def extremal_quotient(p: ExtremalParams) -> QuotientMatrix:
    """Closed-form 3x3 equitable quotient of D for the hub/clique/independent split."""
    s, a, b = p.block_sizes
    entries = np.array(
        [
            [s - 1, a, b],
            [s, a - 1, 2 * b],
            [s, 2 * a, 2 * (b - 1)],
        ],
        dtype=np.float64,
    )
    return QuotientMatrix(entries, p.block_sizes, True)


# ---------------------------------------------------------------------------
# cubics
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CubicPoly:
    """Monic cubic ``x^3 + c2 x^2 + c1 x + c0``."""

    c3: int
    c2: int
    c1: int
    c0: int

    def __post_init__(self):
        if self.c3 != 1:
            raise InvalidParameterError("cubic must be monic")

    @classmethod
    def monic(cls, c2, c1, c0) -> CubicPoly:
        return cls(1, c2, c1, c0)

    @property
    def coefficients(self) -> tuple:
        return self.c3, self.c2, self.c1, self.c0

    def __call__(self, x):
        return ((x + self.c2) * x + self.c1) * x + self.c0

    def derivative(self, x):
        return (3 * x + 2 * self.c2) * x + self.c1


def char_poly_family(p: ExtremalParams) -> CubicPoly:
    """Characteristic polynomial of the extremal quotient, in closed form."""
    n, s, k = p.n, p.s, p.k
    if p.family == "A":
        return CubicPoly.monic(
            -s - n - k + 4,
            5 * s**2 - 2 * n * s + 7 * k * s - s - 2 * k * n - 3 * n + 2 * k**2 - k + 5,
            -2 * s**3 + (n - 3 * k + 5) * s**2 + (k * n - 2 * n - k**2 + 7 * k) * s
            - 2 * k * n - 2 * n + 2 * k**2 + 2,
        )
    return CubicPoly.monic(
        -k * s - n + 3,
        2 * k**2 * s**2 + 3 * k * s**2 - 2 * k * n * s + 3 * k * s + 3 * s - 5 * n + 6,
        -(k**2 + k) * s**3 + (k * n + 2 * k**2 + k - 1) * s**2 + (n - 2 * k * n + 4 * k + 2) * s
        + 4 - 4 * n,
    )


def k2ck_char_poly(n: int, s: int) -> CubicPoly:
    """The {K2, Ck} form of the family-A (k = 1) cubic."""
    return CubicPoly.monic(
        3 - s - n,
        5 * s**2 - 2 * n * s + 6 * s - 5 * n + 6,
        -2 * s**3 + (n + 2) * s**2 + (6 - n) * s - 4 * n + 4,
    )


def char_poly_from_matrix(m) -> CubicPoly:
    """det(xI - M) of a 3x3 matrix via trace, principal 2x2 minors and determinant."""
    a = [[Fraction(v).limit_denominator() for v in row] for row in np.asarray(m).tolist()]
    trace = a[0][0] + a[1][1] + a[2][2]
    minors = sum(a[i][i] * a[j][j] - a[i][j] * a[j][i] for i, j in ((0, 1), (0, 2), (1, 2)))
    det = (
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    )
    return CubicPoly.monic(*(int(c) if c.denominator == 1 else c for c in (-trace, minors, -det)))


def _critical_points(c: CubicPoly) -> tuple[float, float] | None:
    # f'(x) = 3x^2 + 2 c2 x + c1
    disc = 4 * c.c2 * c.c2 - 12 * c.c1
    if disc <= 0:
        return None
    r = math.sqrt(disc)
    return (-2 * c.c2 - r) / 6, (-2 * c.c2 + r) / 6


def _repeated_root(c: CubicPoly) -> Fraction | None:
    """Rightmost critical point when it is rational, else None."""
    disc = 4 * c.c2 * c.c2 - 12 * c.c1
    if disc < 0:
        return None
    r = math.isqrt(disc)
    if r * r != disc:
        return None
    return Fraction(-2 * c.c2 + r, 6)


def _bisect(f, lo: float, hi: float) -> float:
    flo = f(lo)
    if flo == 0:
        return lo
    while True:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            return mid
        fm = f(mid)
        if fm == 0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid


def _horner_error(c: CubicPoly, x: float) -> float:
    ax = abs(x)
    return 16 * 2.220446049250313e-16 * (ax**3 + abs(c.c2) * ax**2 + abs(c.c1) * ax + abs(c.c0))


def largest_real_root(
    c: CubicPoly, bracket: tuple[float, float] | None = None, tol: float = ROOT_TOL
) -> float:
    """Largest real root of a monic cubic.

    The critical points split the line into monotone branches; the
    rightmost branch holding a sign change is bisected to machine
    resolution and then Newton-polished.  A ``bracket`` narrows the search;
    if it holds no sign change it is widened once to ``[-R, R]`` with
    ``R = max(|lo|, |hi|)`` before giving up.
    """
    f = lambda x: float(c(x))  # noqa: E731
    bound = 1.0 + max(abs(float(v)) for v in (c.c2, c.c1, c.c0))
    repeated = _repeated_root(c)
    if repeated is not None and c(repeated) == 0 and c.derivative(repeated) == 0:
        # repeated root at the local minimum; integer coefficients make it rational
        return float(repeated)
    crit = _critical_points(c)
    if crit is None:
        lo, hi = -bound, bound
    else:
        left, right = crit
        fr = f(right)
        if abs(fr) <= _horner_error(c, right) and fr >= 0:
            lo = hi = right  # double root at the local minimum
        elif fr < 0:
            lo, hi = right, bound
        else:
            lo, hi = -bound, left

    if bracket is not None:
        b_lo, b_hi = sorted(map(float, bracket))
        r = max(abs(b_lo), abs(b_hi))
        for cand_lo, cand_hi in ((b_lo, b_hi), (-r, r)):
            s_lo, s_hi = max(lo, cand_lo), min(hi, cand_hi)
            if s_lo <= s_hi and f(s_lo) <= 0 <= f(s_hi):
                lo, hi = s_lo, s_hi
                break
        else:
            raise BracketingError(f"no sign change of the cubic on [{-r}, {r}]")

    if lo == hi:
        return lo
    x = _bisect(f, lo, hi)
    for _ in range(3):
        d = float(c.derivative(x))
        if d == 0:
            break
        step = f(x) / d
        nx = x - step
        if not lo <= nx <= hi or abs(f(nx)) > abs(f(x)):
            break
        x = nx
        if abs(step) <= tol * 1e-3:
            break
    return x
