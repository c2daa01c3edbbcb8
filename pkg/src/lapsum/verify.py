"""Brouwer and Nordhaus-Gaddum verdicts, auxiliary bounds and spectral identities.

Equality is decided combinatorially (threshold recognition plus clique
number); the numeric slack only corroborates.  A disagreement between the
two is reported through ``consistent=False`` and never resolved silently.
"""

from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from math import comb

import numpy as np

from lapsum.graph import (
    Graph,
    GraphError,
    clique_number,
    complement,
    components,
    degree_sequence,
    disjoint_union,
    empty_graph,
    is_connected,
    join,
)
from lapsum.spectra import (
    Spectrum,
    adjacency_spectrum,
    complement_spectrum,
    laplacian_spectrum,
    top_sum,
)
from lapsum.threshold import conjugate_degrees, is_threshold

TOL_EQ = 1e-6


class Verdict(str, enum.Enum):
    STRICT = "Strict"
    EQUALITY = "Equality"
    VIOLATION = "Violation"


def classify(slack: float, combinatorial_equality: bool, tol_eq: float = TOL_EQ) -> tuple[Verdict, bool]:
    """Verdict and consistency flag for one inequality instance."""
    if slack < -tol_eq:
        verdict = Verdict.VIOLATION
    elif combinatorial_equality:
        verdict = Verdict.EQUALITY
    else:
        verdict = Verdict.STRICT
    consistent = (abs(slack) <= tol_eq) == combinatorial_equality
    return verdict, consistent


@dataclass(frozen=True)
class BrouwerVerdict:
    k: int
    s_k: float
    bound: int
    slack: float
    verdict: Verdict
    combinatorial_equality: bool
    consistent: bool

    def as_dict(self) -> dict:
        out = asdict(self)
        out["verdict"] = self.verdict.value
        return out


@dataclass(frozen=True)
class NGVerdict:
    k: int
    lhs: float
    rhs: int
    slack: float
    verdict: Verdict
    equality_class: bool
    consistent: bool


@dataclass(frozen=True)
class GraphProfile:
    """Everything the verdicts need, computed once per graph."""

    graph: Graph
    spectrum: Spectrum
    threshold: bool
    omega: int

    @classmethod
    def of(cls, g: Graph) -> GraphProfile:
        return cls(g, laplacian_spectrum(g), is_threshold(g), clique_number(g))


def _check_k(k: int, lo: int, hi: int, what: str = "k") -> None:
    if not lo <= k <= hi:
        raise ValueError(f"{what}={k} outside {lo}..{hi}")


def brouwer_bound(m: int, k: int) -> int:
    return m + comb(k + 1, 2)


def _brouwer_from_profile(p: GraphProfile, k: int, tol_eq: float) -> BrouwerVerdict:
    s = top_sum(p.spectrum, k)
    bound = brouwer_bound(p.graph.m, k)
    comb_eq = p.threshold and p.omega == k + 1
    verdict, consistent = classify(bound - s, comb_eq, tol_eq)
    return BrouwerVerdict(k, s, bound, bound - s, verdict, comb_eq, consistent)


def brouwer_check(g: Graph, k: int, tol_eq: float = TOL_EQ) -> BrouwerVerdict:
    """s_k(G) against e(G) + C(k+1, 2) with the threshold/clique equality class."""
    _check_k(k, 1, g.n - 1)
    return _brouwer_from_profile(GraphProfile.of(g), k, tol_eq)


def full_brouwer(g: Graph, tol_eq: float = TOL_EQ) -> list[BrouwerVerdict]:
    if g.n < 2:
        raise ValueError("full Brouwer check needs n >= 2")
    p = GraphProfile.of(g)
    return [_brouwer_from_profile(p, k, tol_eq) for k in range(1, g.n)]


def grone_merris_gap(g: Graph, k: int) -> int:
    """e(G) + C(k+1, 2) minus the sum of the k largest conjugate degrees."""
    _check_k(k, 1, g.n - 1)
    conj = conjugate_degrees(degree_sequence(g)).values
    return g.m + comb(k + 1, 2) - sum(conj[:k])


def ng_bound(n: int, k: int) -> int:
    return comb(n, 2) + 2 * comb(k + 1, 2)


def ng_check(g: Graph, k: int, tol_eq: float = TOL_EQ, cross_check: bool = True) -> NGVerdict:
    """s_k(G) + s_k(co-G) against C(n, 2) + 2 C(k+1, 2).

    The complement spectrum comes from the complement formula; with
    ``cross_check`` it is also eigensolved directly and any mismatch beyond
    10 tol marks the verdict inconsistent.
    """
    _check_k(k, 1, g.n - 1)
    spec = laplacian_spectrum(g)
    co_spec = complement_spectrum(spec, g.n)
    agree = True
    if cross_check:
        direct = laplacian_spectrum(complement(g))
        agree = co_spec.allclose(direct, 10 * max(spec.tol, direct.tol))
    lhs = top_sum(spec, k) + top_sum(co_spec, k)
    rhs = ng_bound(g.n, k)
    eq_class = g.n == 2 * k + 1 and is_threshold(g) and clique_number(g) == k + 1
    verdict, consistent = classify(rhs - lhs, eq_class, tol_eq)
    return NGVerdict(k, lhs, rhs, rhs - lhs, verdict, eq_class, consistent and agree)


def ng_duality_identity(g: Graph, k: int) -> tuple[float, float]:
    """Both sides of s_k + s_k(co) = s_{n-k-1} + s_{n-k-1}(co) - (n - 2k - 1) n."""
    n = g.n
    if not (1 <= k and 2 * k <= n - 1):
        raise ValueError(f"k={k} outside 1..(n-1)/2 for n={n}")
    spec = laplacian_spectrum(g)
    co = laplacian_spectrum(complement(g))
    lhs = top_sum(spec, k) + top_sum(co, k)
    j = n - k - 1
    rhs = top_sum(spec, j) + top_sum(co, j) - (n - 2 * k - 1) * n
    return lhs, rhs


# ---------------------------------------------------------------------------
# auxiliary upper bounds
# ---------------------------------------------------------------------------


def bound_wang(g: Graph, k: int) -> float:
    """2e - n + 2k - (2k - 2)/n, valid for connected graphs and 1 <= k <= n."""
    if not is_connected(g):
        raise GraphError("bound requires a connected graph")
    _check_k(k, 1, g.n)
    n = g.n
    return 2 * g.m - n + 2 * k - (2 * k - 2) / n


def bound_zhou(g: Graph, k: int) -> float:
    """(2ke + sqrt(k(n-k-1)(n(n-1) - 2e)e)) / (n-1), for 1 <= k <= n-2."""
    n, e = g.n, g.m
    _check_k(k, 1, n - 2)
    return (2 * k * e + math.sqrt(k * (n - k - 1) * (n * (n - 1) - 2 * e) * e)) / (n - 1)


def bound_nikiforov_ng(g: Graph, k: int) -> tuple[float, float]:
    """Sum of |k smallest adjacency eigenvalues| over G and co-G, and sqrt(2k)(n/2 + k)."""
    n = g.n
    if not (1 <= k and 2 * k <= n - 1):
        raise ValueError(f"k={k} outside 1..(n-1)/2 for n={n}")
    low = adjacency_spectrum(g).values[::-1][:k]
    co_low = adjacency_spectrum(complement(g)).values[::-1][:k]
    lhs = float(np.abs(low).sum() + np.abs(co_low).sum())
    return lhs, math.sqrt(2 * k) * (n / 2 + k)


def ng_spread_bound(g: Graph, k: int) -> float:
    """k(n - 1 + Delta - delta) + sqrt(2k)(n/2 + k), an upper bound on s_k + s_k(co)."""
    d = degree_sequence(g)
    return k * (g.n - 1 + d[0] - d[-1]) + math.sqrt(2 * k) * (g.n / 2 + k)


@dataclass(frozen=True)
class BoundReport:
    k: int
    s_k: float
    ng_sum: float
    brouwer: int
    grone_merris: int
    wang: float | None
    zhou: float | None
    nikiforov_lhs: float | None
    nikiforov_rhs: float | None
    ng_spread: float | None

    def failures(self, tol: float = TOL_EQ) -> list[str]:
        """Names of bounds that the reference values exceed by more than ``tol``."""
        out = []
        for name in ("brouwer", "grone_merris", "wang", "zhou"):
            value = getattr(self, name)
            if value is not None and self.s_k > value + tol:
                out.append(name)
        if self.nikiforov_lhs is not None and self.nikiforov_lhs > self.nikiforov_rhs + tol:
            out.append("nikiforov")
        if self.ng_spread is not None and self.ng_sum > self.ng_spread + tol:
            out.append("ng_spread")
        return out


def bound_report(g: Graph, k: int) -> BoundReport:
    n = g.n
    _check_k(k, 1, n - 1)
    spec = laplacian_spectrum(g)
    s = top_sum(spec, k)
    ng_sum = s + top_sum(complement_spectrum(spec, n), k)
    conj = conjugate_degrees(degree_sequence(g)).values
    small_k = 2 * k <= n - 1
    nik = bound_nikiforov_ng(g, k) if small_k else (None, None)
    return BoundReport(
        k=k,
        s_k=s,
        ng_sum=ng_sum,
        brouwer=brouwer_bound(g.m, k),
        grone_merris=sum(conj[:k]),
        wang=bound_wang(g, k) if is_connected(g) else None,
        zhou=bound_zhou(g, k) if k <= n - 2 else None,
        nikiforov_lhs=nik[0],
        nikiforov_rhs=nik[1],
        ng_spread=ng_spread_bound(g, k) if small_k else None,
    )


# ---------------------------------------------------------------------------
# regions where the Nordhaus-Gaddum inequality is known to be strict
# ---------------------------------------------------------------------------


def ng_strict_ranges(n: int) -> tuple[range, range]:
    """k-ranges 1 <= k <= n - (phi+1)/2 and (phi-1)/2 <= k <= n-2, phi = sqrt(2n^2 - 2n + 1).

    Comparisons are done on squares so the boundaries are exact.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    phi2 = 2 * n * n - 2 * n + 1
    low = [k for k in range(1, n) if 2 * (n - k) - 1 > 0 and (2 * (n - k) - 1) ** 2 >= phi2]
    high = [k for k in range(1, n - 1) if (2 * k + 1) ** 2 >= phi2]
    low_range = range(1, max(low) + 1) if low else range(1, 1)
    high_range = range(min(high), n - 1) if high else range(n - 1, n - 1)
    return low_range, high_range


def ng_density_condition(g: Graph) -> bool:
    """e <= (2 - sqrt2)/4 C(n,2) or e >= (2 + sqrt2)/4 C(n,2), decided exactly."""
    total = comb(g.n, 2)
    e = g.m
    sparse_side = 2 * total - 4 * e
    dense_side = 4 * e - 2 * total
    return (sparse_side >= 0 and sparse_side**2 >= 2 * total**2) or (
        dense_side >= 0 and dense_side**2 >= 2 * total**2
    )


def density_margin_poly(n, x):
    """Quartic whose positivity at k gives the density-based strict NG inequality."""
    return (
        4 * x**4
        - 8 * (n - 1) * x**3
        + (3 * n - 2) ** 2 * x**2
        - (5 * n - 4) * n * (n - 1) * x
        + n**2 * (n - 1) ** 2
    )


def spread_min_order(t):
    """(11t^2 + 8t + 4) / (t - 2)^2, exact for int or Fraction t."""
    num = 11 * t * t + 8 * t + 4
    if isinstance(t, (int, Fraction)):
        return Fraction(num) / (t - 2) ** 2
    return num / (t - 2) ** 2


def ng_spread_condition(g: Graph, t) -> bool:
    """n >= (11t^2 + 8t + 4)/(t-2)^2 and Delta - delta <= n/t, for t > 2."""
    if not t > 2:
        raise ValueError(f"need t > 2, got {t}")
    d = degree_sequence(g)
    return g.n >= spread_min_order(t) and (d[0] - d[-1]) * t <= g.n


def spread_margin_poly(n, t, x):
    """Quartic whose positivity at k gives the degree-spread strict NG inequality."""
    return (
        4 * t**2 * x**4
        - 8 * t * (n * t + n - t) * x**3
        + 4 * ((2 * t**2 + 2 * t + 1) * n**2 - (7 * t**2 + 4 * t) * n + 4 * t**2) * x**2
        - 2 * n * t * (2 * (t + 1) * n**2 - (5 * t + 2) * n + 4 * t) * x
        + n**2 * (n - 1) ** 2 * t**2
    )


# ---------------------------------------------------------------------------
# recursions and identities
# ---------------------------------------------------------------------------


def cone_recursion_check(g: Graph, k: int) -> tuple[float, float]:
    """s_k(G v K1) and p + k + s_{k-1}(G), with s_0 = 0."""
    p = g.n
    _check_k(k, 1, p)
    lhs = top_sum(laplacian_spectrum(join(g, empty_graph(1))), k)
    rhs = p + k + top_sum(laplacian_spectrum(g), k - 1)
    return lhs, rhs


def isolated_vertex_shift_check(g: Graph, tol: float = TOL_EQ) -> bool:
    """s_k(G u K1) = s_k(G) for k < p and s_p(G u K1) = s_{p-1}(G)."""
    p = g.n
    spec = laplacian_spectrum(g)
    plus = laplacian_spectrum(disjoint_union(g, empty_graph(1)))
    same = all(abs(top_sum(plus, k) - top_sum(spec, k)) <= tol for k in range(1, p))
    return same and abs(top_sum(plus, p) - top_sum(spec, p - 1)) <= tol


# ---------------------------------------------------------------------------
# edge cuts
# ---------------------------------------------------------------------------


def _is_star(g: Graph) -> bool:
    return g.n >= 2 and g.m == g.n - 1 and degree_sequence(g)[0] == g.n - 1


def _is_spider(g: Graph, legs: int) -> bool:
    """Tree with a centre whose removal leaves ``legs`` copies of K2 and only K1 otherwise."""
    if g.m != g.n - 1 or not is_connected(g):
        return False
    for c in range(g.n):
        rest = [v for v in range(g.n) if v != c]
        sub = g.induced(rest)
        sizes = sorted(len(comp) for comp in components(sub))
        if all(s <= 2 for s in sizes) and sizes.count(2) == legs:
            # every K2 leg must hang from the centre by one end only
            ok = True
            for comp in components(sub):
                if len(comp) == 2 and sum(g.has_edge(c, rest[v]) for v in comp) != 1:
                    ok = False
            if ok:
                return True
    return False


@dataclass(frozen=True)
class EdgeCutReport:
    t: int
    k: int
    n1: int
    n2: int
    e1: int
    e2: int
    nice: bool
    s_k: float
    s_k_parts: float
    algebraic_connectivity: float
    chain_holds: bool
    hypothesis_holds: bool
    cond_i: bool
    cond_ii: bool
    cond_iii: bool
    cond_iv: bool
    strict: bool


def edge_cut_analysis(g: Graph, cut: list[tuple[int, int]], k: int, tol: float = TOL_EQ) -> EdgeCutReport:
    """Evaluate the cut-based inequality s_k(G) <= s_k(G1 u G2) + 2t - mu_{n-1}(G).

    G1 is the larger side of ``G - cut`` (ties go to the side holding the
    smallest vertex); sizes must satisfy n1 >= 3 and n2 >= 2.
    """
    n = g.n
    if not is_connected(g):
        raise GraphError("edge-cut analysis needs a connected graph")
    _check_k(k, 3, n - 2)
    rest = g.remove_edges(cut)
    comps = components(rest)
    if len(comps) != 2:
        raise GraphError(f"cut leaves {len(comps)} components, expected 2")
    comps.sort(key=lambda c: (-len(c), c[0]))
    h1, h2 = (rest.induced(c) for c in comps)
    if h1.n < 3 or h2.n < 2:
        raise GraphError(f"component sizes ({h1.n}, {h2.n}) need n1 >= 3, n2 >= 2")
    t = len(cut)
    spec = laplacian_spectrum(g)
    spec1, spec2 = laplacian_spectrum(h1), laplacian_spectrum(h2)
    union_values = np.sort(np.concatenate([spec1.values, spec2.values]))[::-1]
    s_union = float(union_values[:k].sum())
    s_g = top_sum(spec, k)
    mu_conn = float(spec.values[n - 2])
    chain = s_g <= s_union + 2 * t - mu_conn + tol and mu_conn > tol

    def brouwer_ok(h: Graph, hs: Spectrum, limit: int) -> bool:
        return all(top_sum(hs, ell) <= brouwer_bound(h.m, ell) + tol for ell in range(1, limit + 1))

    hypothesis = brouwer_ok(h1, spec1, min(h1.n - 1, k)) and brouwer_ok(h2, spec2, min(h2.n - 1, k))
    nice = h1.m >= t and h2.m >= t

    one_side = any(
        k <= h.n and abs(s_union - top_sum(hs, k)) <= tol for h, hs in ((h1, spec1), (h2, spec2))
    )
    cond_i = one_side and nice
    split_sum = any(
        k1 <= h1.n and k - k1 <= h2.n
        and abs(s_union - top_sum(spec1, k1) - top_sum(spec2, k - k1)) <= tol
        for k1 in range(1, k)
    )
    cond_ii = split_sum and t <= k - 1
    cond_iii = t <= k - 1 and nice

    def tail_ok(h: Graph) -> bool:
        return (_is_star(h) or (h.n >= 6 and _is_spider(h, 2)) or (h.n >= 7 and _is_spider(h, 3)))

    cond_iv = t == k and (
        (_is_star(h1) and tail_ok(h2)) or (h2.n >= 3 and _is_star(h2) and tail_ok(h1))
    )
    strict = s_g < brouwer_bound(g.m, k) - tol
    return EdgeCutReport(
        t=t, k=k, n1=h1.n, n2=h2.n, e1=h1.m, e2=h2.m, nice=nice, s_k=s_g, s_k_parts=s_union,
        algebraic_connectivity=mu_conn, chain_holds=chain, hypothesis_holds=hypothesis,
        cond_i=cond_i, cond_ii=cond_ii, cond_iii=cond_iii, cond_iv=cond_iv, strict=strict,
    )


# ---------------------------------------------------------------------------
# characteristic polynomial factors of the spiders with 2 and 3 long legs
# ---------------------------------------------------------------------------


def spider2_factor(n2, x):
    """Quintic cofactor: det(xI - L) of the 2-long-leg spider is x (x-1)^(n2-6) times this."""
    return (
        x**5
        - (n2 + 4) * x**4
        + (6 * n2 - 1) * x**3
        - (11 * n2 - 14) * x**2
        + (6 * n2 - 5) * x
        - n2
    )


def spider3_factor(n2, x):
    """Septic cofactor: det(xI - L) of the 3-long-leg spider is x (x-1)^(n2-8) times this."""
    return (
        x**7
        - (n2 + 6) * x**6
        + (9 * n2 + 3) * x**5
        - (30 * n2 - 42) * x**4
        + (45 * n2 - 87) * x**3
        - (30 * n2 - 48) * x**2
        + (9 * n2 - 8) * x
        - n2
    )
