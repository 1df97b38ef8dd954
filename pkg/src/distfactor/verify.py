"""Theorem-level checks: sharpness, monotonicity in s, quotient equality,
edge-deletion monotonicity and randomized counterexample search.

Each entry point returns a :class:`~distfactor.report.VerificationReport`.
Strict spectral inequalities use ``STRICT_MARGIN``; equalities use
``EQUAL_TOL``.
"""

from __future__ import annotations

import time
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import CapabilityError, InvalidParameterError
from .graph import (
    ExtremalParams,
    Graph,
    all_pairs_distances,
    components,
    extremal_graph,
    gnp_graph,
    is_bridge,
    is_connected,
    min_degree,
    non_bridge_edges,
    random_min_degree_graph,
    to_graph6,
)
from .matching import EXHAUSTIVE_MAX_ORDER, isolated_count, max_deficiency
from .report import VerificationReport
from .spectral import (
    char_poly_family,
    char_poly_from_matrix,
    distance_spectral_radius,
    extremal_quotient,
    largest_real_root,
    perron_root,
    quotient_matrix,
)

STRICT_MARGIN = 1e-7
EQUAL_TOL = 1e-8
EDGE_MARGIN = 1e-9
EDGE_MAX_ORDER = 60

_ALIASES = {
    "fm": "FM",
    "fpm": "FPM",
    "k2ck": "K2CK",
    "star": "STAR",
    "quotient": "QUOTIENT",
    "edgemono": "EDGE_MONO",
    "edge_mono": "EDGE_MONO",
    "mono-s": "MONO_S",
    "mono_s": "MONO_S",
}


def normalize_theorem(tag: str) -> str:
    key = tag.strip()
    return _ALIASES.get(key.lower(), key.upper())


def hypothesis_met(theorem: str, n: int, delta: int, k: int) -> bool:
    """Order threshold under which the theorem is asserted."""
    theorem = normalize_theorem(theorem)
    if theorem == "FM":
        return n > 9 * k + 10 * delta + 2
    if theorem in ("FPM", "K2CK"):
        return n > 11 + 10 * delta
    if theorem == "STAR":
        bound = Fraction(3 + 5 * k, k * k) + 3 + (Fraction(3, k) + 5 + 2 * k) * delta
        return n > bound
    raise InvalidParameterError(f"no order threshold for theorem {theorem}")


def theorem_params(theorem: str, n: int, delta: int, k: int) -> ExtremalParams:
    theorem = normalize_theorem(theorem)
    if theorem == "FM":
        return ExtremalParams("A", n, delta, k)
    if theorem in ("FPM", "K2CK"):
        return ExtremalParams("A", n, delta, 1)
    if theorem == "STAR":
        return ExtremalParams("B", n, delta, k)
    raise InvalidParameterError(f"theorem {theorem} has no extremal graph")


def _deficiency_weight(theorem: str, k: int) -> int:
    return k if theorem == "STAR" else 1


def _mode_for(n: int) -> str:
    return "exhaustive" if n <= EXHAUSTIVE_MAX_ORDER else "pruned"


def _mu(g: Graph) -> float:
    return distance_spectral_radius(all_pairs_distances(g)).radius


def _cubic_root(p: ExtremalParams) -> float:
    return largest_real_root(char_poly_family(p), (p.n - 1, 3 * p.n))


def conclusion_holds(theorem: str, g: Graph, k: int, mode: str = "exhaustive") -> bool:
    """The property the theorem guarantees below the spectral threshold."""
    theorem = normalize_theorem(theorem)
    n = g.order
    if theorem == "FM":
        return n - max_deficiency(g, 1, mode).value > n - k
    if theorem in ("FPM", "K2CK"):
        return max_deficiency(g, 1, mode).value <= 0
    if theorem == "STAR":
        return max_deficiency(g, k, mode).value <= 0
    raise InvalidParameterError(f"theorem {theorem} has no conclusion predicate")


def is_extremal_structure(g: Graph, p: ExtremalParams) -> bool:
    """Whether ``g`` is isomorphic to ``extremal_graph(p)``.

    Such a graph has exactly ``s`` vertices of full degree, and deleting
    them leaves a clique of the clique-block size plus isolated vertices.
    """
    if g.order != p.n:
        return False
    hubs = [v for v, d in enumerate(g.degrees) if d == g.order - 1]
    if len(hubs) != p.s:
        return False
    rest = g.delete_vertices(hubs)
    sizes = []
    for comp in components(rest):
        c = len(comp)
        if any(rest.degree(v) != c - 1 for v in comp):
            return False
        sizes.append(c)
    return sorted(sizes) == sorted([p.clique_size] + [1] * p.independent_size)


def _finish(report: VerificationReport, t0: float) -> VerificationReport:
    report.runtime_ms = (time.perf_counter() - t0) * 1000.0
    return report


# ---------------------------------------------------------------------------
# sharpness
# ---------------------------------------------------------------------------


def verify_sharpness(
    theorem: str, n: int, delta: int, k: int = 1, tol: float = EQUAL_TOL
) -> VerificationReport:
    t0 = time.perf_counter()
    theorem = normalize_theorem(theorem)
    p = theorem_params(theorem, n, delta, k)
    report = VerificationReport(
        theorem,
        {"n": n, "delta": delta, "k": p.k, "family": p.family},
        tolerances={"equal": tol},
    )
    if not hypothesis_met(theorem, n, delta, p.k):
        report.status = "hypothesis-unmet"
    g = extremal_graph(p)
    mode = _mode_for(n)
    weight = _deficiency_weight(theorem, p.k)

    report.check("min_degree", delta, min_degree(g), min_degree(g) == delta)

    plain = max_deficiency(g, 1, mode)
    twice = n - plain.value
    if theorem == "STAR":
        dres = max_deficiency(g, weight, mode)
        report.check("star_deficiency", 1, dres.value, dres.value == 1)
        report.check("no_star_factor", False, dres.value <= 0, dres.value > 0)
    else:
        dres = plain
        expected = p.k if theorem == "FM" else 1
        report.check("max_deficiency", expected, dres.value, dres.value == expected)
        if theorem == "FM":
            report.check(
                "alpha_f_equals_(n-k)/2", str(Fraction(n - p.k, 2)), str(Fraction(twice, 2)),
                twice == n - p.k,
            )
        elif theorem == "FPM":
            report.check("no_fractional_perfect_matching", False, twice == n, twice != n)
        else:
            report.check("no_k2_ck_factor", False, dres.value <= 0, dres.value > 0)

    mu_full = _mu(g)
    mu_cubic = _cubic_root(p)
    report.check(
        "mu_matches_cubic_root", mu_cubic, mu_full, abs(mu_full - mu_cubic) <= tol
    )

    hub = tuple(range(delta))
    report.check("witness_is_hub_block", list(hub), list(dres.witness), dres.witness == hub)
    recomputed = isolated_count(g, dres.witness) - weight * len(dres.witness)
    report.check("witness_reproduces_value", dres.value, recomputed, recomputed == dres.value)

    report.values.update(
        mu=mu_full,
        mu_cubic=mu_cubic,
        alpha_f=str(Fraction(twice, 2)),
        alpha_f_times2=twice,
        deficiency=dres.value,
        witness=list(dres.witness),
        deficiency_mode=mode,
        extremal_graph6=to_graph6(g),
    )
    return _finish(report, t0)


# ---------------------------------------------------------------------------
# monotonicity in s
# ---------------------------------------------------------------------------


def s_range(family: str, n: int, k: int) -> int:
    """Largest s with a nonempty clique block."""
    if family == "A":
        return (n - k - 1) // 2
    return (n - 2) // (k + 1)


def sweep_rows(family: str, n: int, delta: int, k: int) -> list[dict]:
    """Largest root of each quotient cubic for s = delta .. s_max."""
    rows = []
    for s in range(delta, s_range(family, n, k) + 1):
        p = ExtremalParams(family, n, s, k)
        root = largest_real_root(char_poly_from_matrix(extremal_quotient(p).entries), (n - 1, 3 * n))
        rows.append({"n": n, "delta": delta, "k": k, "s": s, "mu_quotient": root})
    return rows


def sweep_table(family: str, n: int, delta: int, k: int) -> list[dict]:
    """CSV rows per s; the full-matrix radius, 2*alpha_f and factor flags are
    filled only when affordable (n <= 500, resp. n <= 26)."""
    rows = []
    for row in sweep_rows(family, n, delta, k):
        p = ExtremalParams(family, n, row["s"], k)
        out = dict(row, mu_full="", alpha_f_times2="", factor_flags="")
        g = extremal_graph(p) if n <= 500 else None
        if g is not None:
            out["mu_full"] = _mu(g)
        if n <= EXHAUSTIVE_MAX_ORDER:
            plain = max_deficiency(g, 1)
            out["alpha_f_times2"] = n - plain.value
            flags = [f"k2ck={int(plain.value <= 0)}"]
            if family == "B":
                flags.append(f"star={int(max_deficiency(g, k).value <= 0)}")
            out["factor_flags"] = ";".join(flags)
        rows.append(out)
    return rows


def verify_monotonicity_in_s(
    family: str, n: int, delta: int, k: int, margin: float = STRICT_MARGIN
) -> VerificationReport:
    t0 = time.perf_counter()
    report = VerificationReport(
        "MONO_S",
        {"family": family, "n": n, "delta": delta, "k": k},
        tolerances={"strict_margin": margin},
    )
    theorem = "FM" if family == "A" else "STAR"
    if not hypothesis_met(theorem, n, delta, k):
        report.status = "hypothesis-unmet"
    rows = sweep_rows(family, n, delta, k)
    base = ExtremalParams(family, n, delta, k)
    f_delta = char_poly_family(base)
    mu_delta = rows[0]["mu_quotient"]
    for row in rows[1:]:
        s, mu_s = row["s"], row["mu_quotient"]
        f_s = char_poly_family(ExtremalParams(family, n, s, k))
        report.check(f"mu[s={s}]>mu[delta]", f"> {mu_delta + margin}", mu_s, mu_s > mu_delta + margin)
        gap_mu = f_s(mu_s) - f_delta(mu_s)
        report.check(f"f_s-f_delta<0 at mu[s={s}]", "< 0", gap_mu, gap_mu < 0)
        gap_n = f_s(n) - f_delta(n)
        report.check(f"f_s-f_delta<0 at x=n [s={s}]", "< 0", gap_n, gap_n < 0)
    report.values["mu_by_s"] = {str(r["s"]): r["mu_quotient"] for r in rows}
    report.values["s_max"] = rows[-1]["s"]
    # mu(G_s) is unimodal in s, not monotone; only the comparison with s = delta is claimed
    report.values["s_argmax"] = max(rows, key=lambda r: r["mu_quotient"])["s"]
    return _finish(report, t0)


# ---------------------------------------------------------------------------
# quotient equality
# ---------------------------------------------------------------------------


def verify_quotient_equality(p: ExtremalParams, tol: float = EQUAL_TOL) -> VerificationReport:
    t0 = time.perf_counter()
    report = VerificationReport(
        "QUOTIENT",
        {"family": p.family, "n": p.n, "s": p.s, "k": p.k},
        tolerances={"equal": tol},
    )
    if p.n > 500:
        raise CapabilityError("quotient equality check is limited to n <= 500")
    d = all_pairs_distances(extremal_graph(p))
    template = extremal_quotient(p)
    measured = quotient_matrix(d, p.blocks())
    report.check("partition_equitable", True, measured.equitable, measured.equitable)
    same = np.array_equal(measured.entries, template.entries)
    report.check("template_matches_D", template.entries.tolist(), measured.entries.tolist(), same)
    poly = char_poly_family(p)
    det_poly = char_poly_from_matrix(template.entries)
    report.check(
        "cubic_matches_det", list(det_poly.coefficients), list(poly.coefficients),
        poly.coefficients == det_poly.coefficients,
    )
    mu_full = distance_spectral_radius(d).radius
    mu_root = largest_real_root(poly, (p.n - 1, 3 * p.n))
    mu_q = perron_root(template.entries).radius
    report.check("cubic_root=mu_full", mu_full, mu_root, abs(mu_root - mu_full) <= tol)
    report.check("quotient_power=mu_full", mu_full, mu_q, abs(mu_q - mu_full) <= tol)
    report.values.update(mu_full=mu_full, mu_cubic=mu_root, mu_quotient_power=mu_q)
    return _finish(report, t0)


# ---------------------------------------------------------------------------
# edge deletion
# ---------------------------------------------------------------------------


def verify_edge_monotonicity(
    n: int,
    trials: int,
    seed: int,
    graph: Graph | None = None,
    margin: float = EDGE_MARGIN,
) -> VerificationReport:
    """For random connected graphs, deleting a non-bridge edge raises mu.

    With ``graph`` given, every trial uses that graph and only the deleted
    edge is random.
    """
    t0 = time.perf_counter()
    if graph is None and n > EDGE_MAX_ORDER:
        raise InvalidParameterError(f"edge monotonicity sampling needs n <= {EDGE_MAX_ORDER}")
    report = VerificationReport(
        "EDGE_MONO",
        {"n": graph.order if graph is not None else n, "trials": trials, "seed": seed},
        tolerances={"strict_margin": margin},
    )
    rng = np.random.default_rng(seed)
    skipped = violations = 0
    gaps = []
    for _ in range(trials):
        if graph is None:
            p = float(rng.uniform(0.1, 0.5))
            g = random_min_degree_graph(n, 1, p, int(rng.integers(2**63)))
        else:
            g = graph
        candidates = non_bridge_edges(g)
        if not candidates:
            skipped += 1
            continue
        u, v = candidates[int(rng.integers(len(candidates)))]
        h = g.remove_edge(u, v)
        gap = _mu(h) - _mu(g)
        gaps.append(gap)
        if not gap > margin:
            violations += 1
            report.counterexamples.append(f"{to_graph6(g)} -{u},{v}")
    report.check("violations", 0, violations, violations == 0)
    report.values.update(
        evaluated=len(gaps),
        skipped=skipped,
        min_gap=min(gaps) if gaps else None,
    )
    return _finish(report, t0)


# ---------------------------------------------------------------------------
# counterexample search
# ---------------------------------------------------------------------------


def _calibrate_p(n: int, delta: int, rng: np.random.Generator, batch: int = 20) -> tuple[float, list]:
    """Raise p until fewer than 10% of raw G(n, p) draws need repair."""
    p = 0.1
    schedule = []
    while True:
        draws = [gnp_graph(n, p, rng) for _ in range(batch)]
        rate = sum(min_degree(g) < delta or not is_connected(g) for g in draws) / batch
        schedule.append({"p": round(p, 6), "repair_rate": rate})
        if rate <= 0.1 or p >= 0.9:
            return p, schedule
        p = min(0.9, p * 1.25)


def _trim_to_min_degree(g: Graph, delta: int, rng: np.random.Generator) -> Graph | None:
    """Lower one minimum-degree vertex to degree ``delta`` by deleting non-bridge edges
    whose other endpoint keeps degree >= ``delta``.  ``None`` when stuck."""
    low = min(g.degrees)
    pool = [v for v, d in enumerate(g.degrees) if d == low]
    v = pool[int(rng.integers(len(pool)))]
    while g.degree(v) > delta:
        options = [u for u in g.neighbors(v) if g.degree(u) > delta and not is_bridge(g, v, u)]
        if not options:
            return None
        g = g.remove_edge(v, options[int(rng.integers(len(options)))])
    return g


def _perturb(g: Graph, rng: np.random.Generator) -> Graph:
    non_edges = [(u, v) for u in range(g.order) for v in range(u + 1, g.order) if not g.has_edge(u, v)]
    if not non_edges:
        return g
    r = int(rng.integers(1, 4))
    pick = rng.choice(len(non_edges), size=min(r, len(non_edges)), replace=False)
    return g.add_edges(non_edges[i] for i in sorted(pick.tolist()))


def search_counterexamples(
    theorem: str,
    n: int,
    delta: int,
    k: int,
    samples: int,
    seed: int,
    inject: Sequence[Graph] = (),
    margin: float = STRICT_MARGIN,
) -> VerificationReport:
    """Sample connected graphs of minimum degree ``delta`` with mu(G) <= mu(G*)
    and check the theorem's conclusion or the extremal exception.

    Sample ``i`` uses its own child seed.  Every fourth sample is the
    extremal graph plus 1-3 random edges; the rest are G(n, p) with p drawn
    between the calibrated bias and 0.9.  Each is repaired, then one
    minimum-degree vertex is trimmed to degree exactly ``delta``.
    """
    t0 = time.perf_counter()
    theorem = normalize_theorem(theorem)
    if n > EXHAUSTIVE_MAX_ORDER:
        raise CapabilityError(f"counterexample search needs exact deficiency, n <= {EXHAUSTIVE_MAX_ORDER}")
    p_star = theorem_params(theorem, n, delta, k)
    report = VerificationReport(
        theorem,
        {"n": n, "delta": delta, "k": p_star.k, "samples": samples, "seed": seed},
        tolerances={"strict_margin": margin},
    )
    if not hypothesis_met(theorem, n, delta, p_star.k):
        report.status = "exploratory"
    g_star = extremal_graph(p_star)
    mu_star = _mu(g_star)
    report.check("extremal_signature", True, is_extremal_structure(g_star, p_star), is_extremal_structure(g_star, p_star))
    star_fails = not conclusion_holds(theorem, g_star, p_star.k)
    report.check("extremal_violates_conclusion", True, star_fails, star_fails)

    ss = np.random.SeedSequence(seed)
    p_bias, schedule = _calibrate_p(n, delta, np.random.default_rng(ss.spawn(1)[0]))
    child_seeds = ss.generate_state(samples, dtype=np.uint64)

    stats = {"evaluated": 0, "condition_met": 0, "extremal_matches": 0, "rejected": 0,
             "by_kind": {"random": 0, "perturbed": 0, "injected": 0}}
    mus = []

    def evaluate(g: Graph, kind: str) -> None:
        stats["evaluated"] += 1
        stats["by_kind"][kind] += 1
        mu = _mu(g)
        mus.append(mu)
        if mu > mu_star + margin:
            return
        stats["condition_met"] += 1
        if is_extremal_structure(g, p_star):
            stats["extremal_matches"] += 1
            return
        if not conclusion_holds(theorem, g, p_star.k):
            target = report.findings if report.status == "exploratory" else report.counterexamples
            target.append(to_graph6(g))

    for g in inject:
        evaluate(g, "injected")

    for i in range(samples):
        rng = np.random.default_rng(int(child_seeds[i]))
        perturbed = i % 4 == 3
        for _attempt in range(20):
            if perturbed:
                g = _perturb(g_star, rng)
            else:
                p = float(rng.uniform(p_bias, 0.9))
                g = random_min_degree_graph(n, delta, p, int(rng.integers(2**63)))
            g = _trim_to_min_degree(g, delta, rng)
            if g is not None and is_connected(g):
                break
            stats["rejected"] += 1
        else:
            continue
        evaluate(g, "perturbed" if perturbed else "random")

    report.check("samples_evaluated", samples + len(inject), stats["evaluated"],
                 stats["evaluated"] == samples + len(inject))
    report.check("counterexamples", 0, len(report.counterexamples), not report.counterexamples)
    report.values.update(
        mu_extremal=mu_star,
        mu_min=min(mus) if mus else None,
        mu_max=max(mus) if mus else None,
        bias_schedule=schedule,
        p_bias=p_bias,
        **stats,
    )
    return _finish(report, t0)
