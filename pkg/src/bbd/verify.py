"""Property suites: every identity and inequality of the bounded family as a runnable check.

Each suite returns a :class:`SuiteResult` counting checks and violations.
Randomized suites draw trial ``i`` from ``numpy.random.default_rng(seed ^ i)``
so results do not depend on execution order.
"""
from __future__ import annotations

import csv
import io
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy import integrate, stats

from . import distributions as dist
from .bayes_error import PriorPair, bayes_error, bradt_karlin_witness, kailath_bounds
from .distributions import DiscreteDistribution, closed_form_rho, closed_form_zeta
from .divergences import (
    bbd,
    bbd_via_fdivergence,
    bhattacharyya_distance,
    chernoff,
    hellinger_squared,
    invert_bbd,
    jsd,
    jsd_lower_bound,
    psi_and_base,
    rho_discrete,
)
from .errors import DomainError
from .info_geometry import (
    c_alpha,
    curvature_check,
    curvature_matrix,
    fisher_information,
    generator_second_derivative_at_one,
    rho_derivatives,
)
from .multiway import WeightVector, generalized_bbd, generalized_rho
from .report import emit_figure_table

DEFAULT_TOL = {
    "slack": 1e-12,
    "identity": 1e-12,
    "limit": 1e-7,
    "path": 1e-12,
    "fdiv": 1e-10,
    "roundtrip": 1e-10,
    "ratio": 1e-3,
    "jsd_equality": 1e-9,
    "closed_form": 1e-6,
    "witness_rate": 0.95,
    "curvature": 1e-3,
    "offdiag": 1e-6,
    "symmetry": 1e-10,
    "rho_slope": 1e-8,
    "rho_curvature": 1e-3,
}

RHO_GRID = np.linspace(0.0, 1.0, 1001)
BOUNDED_ALPHAS = (-1e6, -10.0, -1.0, 1.5, 2.0, 10.0, 1e6, math.inf, -math.inf)
MAX_MESSAGES = 20


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    n_violations: int = 0
    messages: list = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.n_violations == 0

    def check(self, ok, message) -> bool:
        """Record one check; ``message`` may be a callable to defer formatting."""
        self.checks += 1
        if not ok:
            self.n_violations += 1
            if len(self.messages) < MAX_MESSAGES:
                self.messages.append(message() if callable(message) else message)
        return bool(ok)

    def check_all(self, mask: np.ndarray, message: Callable[[int], str]) -> None:
        mask = np.asarray(mask, dtype=bool).ravel()
        self.checks += mask.size
        bad = np.flatnonzero(~mask)
        self.n_violations += bad.size
        for i in bad[: max(0, MAX_MESSAGES - len(self.messages))]:
            self.messages.append(message(int(i)))

    def merge(self, other: "SuiteResult") -> None:
        self.checks += other.checks
        self.n_violations += other.n_violations
        self.messages.extend(other.messages[: max(0, MAX_MESSAGES - len(self.messages))])
        self.info.update(other.info)

    def to_dict(self) -> dict:
        return {
            "suite": self.name,
            "passed": self.passed,
            "checks": self.checks,
            "violations": self.n_violations,
            "messages": self.messages,
            "info": self.info,
        }


def trial_rng(seed: int, i: int) -> np.random.Generator:
    return np.random.default_rng(int(seed) ^ int(i))


def random_distribution(rng: np.random.Generator, n: int) -> DiscreteDistribution:
    w = rng.dirichlet(np.full(n, rng.choice([0.3, 1.0, 4.0])))
    if rng.random() < 0.3:
        w = w * (rng.random(n) < 0.6)
        if not np.any(w > 0):
            w[rng.integers(n)] = 1.0
    return DiscreteDistribution.normalized(w)


def random_pair(rng: np.random.Generator, kind: int) -> tuple[DiscreteDistribution, DiscreteDistribution]:
    """kind 0: identical, 1: disjoint supports, otherwise independent draws."""
    n = int(rng.integers(2, 12))
    if kind == 0:
        p = random_distribution(rng, n)
        return p, DiscreteDistribution(p.probs)
    if kind == 1:
        split = int(rng.integers(1, n))
        w = rng.random(n) + 0.05
        return (
            DiscreteDistribution.normalized(np.where(np.arange(n) < split, w, 0.0)),
            DiscreteDistribution.normalized(np.where(np.arange(n) >= split, w, 0.0)),
        )
    return random_distribution(rng, n), random_distribution(rng, n)


def _pairs(trials: int, seed: int):
    for i in range(trials):
        yield i, random_pair(trial_rng(seed, i), i % 10)


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------


def suite_bounded(trials: Optional[int], seed: int, tol: dict) -> SuiteResult:
    """Range, symmetry, identity of indiscernibles and monotonicity in rho."""
    trials = 10_000 if trials is None else trials
    res = SuiteResult("bounded")
    slack = tol["slack"]
    kinds, r_pq, r_qp = [], [], []
    for i, (p, q) in _pairs(trials, seed):
        kinds.append(i % 10)
        r_pq.append(rho_discrete(p, q))
        r_qp.append(rho_discrete(q, p))
    kinds, r_pq, r_qp = np.array(kinds), np.array(r_pq), np.array(r_qp)
    for a in BOUNDED_ALPHAS:
        b_pq = np.atleast_1d(bbd(r_pq, a))
        b_qp = np.atleast_1d(bbd(r_qp, a))
        res.check_all((b_pq >= -slack) & (b_pq <= 1 + slack), lambda i: f"alpha={a}: B={b_pq[i]!r} out of [0,1] (trial {i})")
        res.check_all(np.abs(b_pq - b_qp) <= slack, lambda i: f"alpha={a}: asymmetric at trial {i}")
        same = kinds == 0
        res.check_all(b_pq[same] <= tol["identity"], lambda i: f"alpha={a}: identical pair has B>0")
        apart = r_pq <= 1 - 1e-6
        res.check_all(b_pq[apart] > 0, lambda i: f"alpha={a}: B=0 for rho<1")
        ortho = kinds == 1
        res.check_all(np.abs(b_pq[ortho] - 1) <= slack, lambda i: f"alpha={a}: disjoint pair has B!=1")
        res.check(bbd(1.0, a) == 0.0 and bbd(0.0, a) == 1.0, f"alpha={a}: endpoint values")
        res.check(np.all(np.diff(bbd(RHO_GRID, a)) < 0), f"alpha={a}: not strictly decreasing in rho")
    return res


def suite_limits(trials: Optional[int], seed: int, tol: dict) -> SuiteResult:
    """Closed special cases (alpha = 2, -1, +/-inf, +/-1e8) and inversion round trip."""
    res = SuiteResult("limits")
    r = RHO_GRID
    res.check_all(np.abs(bbd(r, 2) + np.log2((1 + r) / 2)) <= tol["path"], lambda i: f"alpha=2 at rho={r[i]}")
    res.check_all(np.abs(bbd(r, -1) + np.log2(1 / (2 - r))) <= tol["path"], lambda i: f"alpha=-1 at rho={r[i]}")
    for a in (1e8, -1e8):
        res.check_all(np.abs(bbd(r, a) - (1 - r)) <= tol["limit"], lambda i: f"alpha={a} at rho={r[i]}")
    for a in (math.inf, -math.inf):
        res.check_all(bbd(r, a) == 1 - r, lambda i: f"alpha={a} at rho={r[i]}")
    for a in (-1e6, -10, -1, 1.5, 2, 10, 1e6, math.inf):
        back = np.array([invert_bbd(b, a) for b in np.atleast_1d(bbd(r, a))])
        res.check_all(np.abs(back - r) <= tol["roundtrip"], lambda i: f"invert alpha={a} at rho={r[i]}")
    res.info["max_deviation_alpha_1e8"] = float(np.max(np.abs(bbd(r, 1e8) - (1 - r))))
    return res


def suite_ordering(trials: Optional[int], seed: int, tol: dict) -> SuiteResult:
    """B_{alpha>1} <= H^2 <= B_{alpha<0}, on the grid and in the comparison table."""
    res = SuiteResult("ordering")
    h2 = hellinger_squared(RHO_GRID)
    for a in (1.5, 2, 10):
        res.check_all(bbd(RHO_GRID, a) <= h2 + tol["slack"], lambda i: f"B_{a} > H^2 at rho={RHO_GRID[i]}")
    for a in (-1, -10):
        res.check_all(h2 <= bbd(RHO_GRID, a) + tol["slack"], lambda i: f"H^2 > B_{a} at rho={RHO_GRID[i]}")
    res.merge(figure_table_check([2, -1, math.inf, 1.5, 10, -10], 101, tol))
    return res


def figure_table_check(alphas, steps: int, tol: dict) -> SuiteResult:
    """Endpoint rows and row-wise ordering of the emitted comparison table."""
    res = SuiteResult("figure-table")
    rows = list(csv.DictReader(io.StringIO(emit_figure_table(alphas, steps))))
    measure_cols = [c for c in rows[0] if c != "rho"]
    res.check(all(float(rows[0][c]) == 1.0 for c in measure_cols), "rho=0 row is not all ones")
    res.check(all(float(rows[-1][c]) == 0.0 for c in measure_cols), "rho=1 row is not all zeros")
    upper = [c for c in measure_cols if c.startswith("bbd_alpha_") and float(c[10:]) > 1]
    lower = [c for c in measure_cols if c.startswith("bbd_alpha_") and float(c[10:]) < 0]
    for row in rows:
        h2 = float(row["hellinger_sq"])
        for c in upper:
            res.check(float(row[c]) <= h2 + tol["slack"], f"{c} > hellinger_sq at rho={row['rho']}")
        for c in lower:
            res.check(h2 <= float(row[c]) + tol["slack"], f"hellinger_sq > {c} at rho={row['rho']}")
    return res


def suite_sharp_constants(trials: Optional[int], seed: int, tol: dict) -> SuiteResult:
    """zeta <= H^2 <= ln(4) zeta, with both constants attained in the limit."""
    res = SuiteResult("theorem6")
    r = RHO_GRID
    z = bbd(r, 2)
    h2 = hellinger_squared(r)
    res.check_all(z <= h2 + tol["slack"], lambda i: f"zeta > H^2 at rho={r[i]}")
    res.check_all(h2 <= math.log(4) * z + tol["slack"], lambda i: f"H^2 > ln4*zeta at rho={r[i]}")
    interior = r[r < 1]
    ratio = hellinger_squared(interior) / bbd(interior, 2)
    res.check_all(np.diff(ratio) >= -tol["slack"], lambda i: f"H^2/zeta decreases near rho={interior[i]}")

    def hz(x):
        return hellinger_squared(x) / bbd(x, 2)

    near_one, near_zero = hz(0.99), hz(1e-6)
    res.check(abs(near_one - 1.3827) <= tol["ratio"], f"ratio at rho=0.99 is {near_one!r}")
    res.check(abs(near_zero - 1.0) <= tol["ratio"], f"ratio at rho=1e-6 is {near_zero!r}")
    res.info.update(ratio_at_0_99=near_one, ratio_at_1e_6=near_zero, ratio_near_1=hz(1 - 1e-9), ln4=math.log(4))
    res.merge(suite_generic_alpha(trials, seed, tol))
    return res


def suite_generic_alpha(trials: Optional[int], seed: int, tol: dict) -> SuiteResult:
    """B_alpha <= H^2 <= -alpha ln(1 - 1/alpha) B_alpha for alpha > 1."""
    res = SuiteResult("generic-alpha")
    h2 = hellinger_squared(RHO_GRID)
    for a in (1.5, 2, 5, 50):
        b = bbd(RHO_GRID, a)
        k = -a * math.log1p(-1 / a)
        res.check_all(b <= h2 + tol["slack"], lambda i: f"B_{a} > H^2 at rho={RHO_GRID[i]}")
        res.check_all(h2 <= k * b + tol["slack"], lambda i: f"H^2 > {k}*B_{a} at rho={RHO_GRID[i]}")
    return res


def suite_jsd(trials: Optional[int], seed: int, tol: dict) -> SuiteResult:
    """JS >= (2 ln 2) zeta - ln 2, with equality at disjoint supports."""
    trials = 10_000 if trials is None else trials
    res = SuiteResult("jsd")
    literal_violations = 0
    for i, (p, q) in _pairs(trials, seed):
        z = bbd(rho_discrete(p, q), 2)
        bound = jsd_lower_bound(z)
        values = {
            "unsym(p,q)": jsd(p, q, symmetrized=False),
            "unsym(q,p)": jsd(q, p, symmetrized=False),
            "sym": jsd(p, q),
        }
        for label, v in values.items():
            res.check(v >= bound - tol["slack"], lambda: f"trial {i}: JS {label}={v!r} < bound {bound!r}")
            if i % 10 == 1:
                res.check(abs(v - bound) <= tol["jsd_equality"], lambda: f"trial {i}: no equality for disjoint pair ({label})")
        literal_violations += values["unsym(p,q)"] < jsd_lower_bound(z, paper_literal=True)
    res.info["paper_literal_constant_violations"] = int(literal_violations)
    return res


def suite_fdiv_equiv(trials: Optional[int], seed: int, tol: dict) -> SuiteResult:
    """f-divergence, psi/base and Chernoff routes agree with the direct formulas."""
    trials = 1_000 if trials is None else trials
    res = SuiteResult("fdiv-equiv")
    worst = 0.0
    for i, (p, q) in _pairs(trials, seed):
        r = rho_discrete(p, q)
        for a in (1.5, 2, 10):
            direct = bbd(r, a)
            via = bbd_via_fdivergence(p, q, a)
            worst = max(worst, abs(via - direct))
            res.check(abs(via - direct) <= tol["fdiv"], lambda: f"trial {i} alpha={a}: f-div {via!r} vs {direct!r}")
        for a in (-10, -1, 1.5, 2, 10):
            psi, b = psi_and_base(r, a)
            via_psi = -math.log(psi) / math.log(b)
            res.check(abs(via_psi - bbd(r, a)) <= tol["path"], lambda: f"trial {i} alpha={a}: psi route")
        c, bd = chernoff(p, q, 0.5), bhattacharyya_distance(r)
        same = (math.isinf(c) and math.isinf(bd)) or abs(c - bd) <= tol["path"]
        res.check(same, lambda: f"trial {i}: chernoff(1/2)={c!r} vs bhattacharyya={bd!r}")
    for a in (-10, -1, 1.5, 2, 10):
        psi0, b = psi_and_base(0.0, a)
        psi1, _ = psi_and_base(1.0, a)
        res.check(abs(psi0 - 1 / b) <= tol["path"] and abs(psi1 - 1) <= tol["path"], f"psi endpoints alpha={a}")
    res.info["max_fdiv_deviation"] = worst
    return res


# -- closed forms -----------------------------------------------------------


def _trap(y: np.ndarray, x: np.ndarray) -> float:
    return float(integrate.trapezoid(y, x))


def oracle_rho(a, b) -> float:
    """Bhattacharyya coefficient from scipy.stats densities, by exact sums or trapezoid quadrature.

    Continuous windows leave out at most ~1e-10 of the integrand.  Exponential
    and Pareto are integrated in log(x), where the integrand is smooth; Pareto
    uses Simpson's rule because its log-space integrand can be sharply peaked.
    """
    if isinstance(a, dist.Binomial):
        k = np.arange(a.n + 1)
        return math.fsum(np.sqrt(stats.binom.pmf(k, a.n, a.p) * stats.binom.pmf(k, b.n, b.p)))
    if isinstance(a, dist.Poisson):
        lam = max(a.lam, b.lam)
        kmax = int(lam + 40 * math.sqrt(lam) + 60)
        k = np.arange(kmax + 1)
        return math.fsum(np.sqrt(stats.poisson.pmf(k, a.lam) * stats.poisson.pmf(k, b.lam)))
    if isinstance(a, dist.Gaussian):
        lo = min(a.mu - 8 * a.sigma, b.mu - 8 * b.sigma)
        hi = max(a.mu + 8 * a.sigma, b.mu + 8 * b.sigma)
        x = np.linspace(lo, hi, (1 << 14) + 1)
        y = np.sqrt(stats.norm.pdf(x, a.mu, a.sigma) * stats.norm.pdf(x, b.mu, b.sigma))
        return _trap(y, x)
    if isinstance(a, dist.Exponential):
        u = np.linspace(math.log(1e-14 / max(a.rate, b.rate)), math.log(30 / min(a.rate, b.rate)), (1 << 14) + 1)
        x = np.exp(u)
        y = np.sqrt(stats.expon.pdf(x, scale=1 / a.rate) * stats.expon.pdf(x, scale=1 / b.rate)) * x
        return _trap(y, u)
    # sqrt(pq) decays like exp(-(a + b) u / 2) in u = log(x / xm)
    u_max = 2 * math.log(1e16) / (a.shape + b.shape)
    u = np.linspace(0.0, u_max, (1 << 14) + 1)
    x = a.xm * np.exp(u)
    y = np.sqrt(stats.pareto.pdf(x, a.shape, scale=a.xm) * stats.pareto.pdf(x, b.shape, scale=b.xm)) * x
    return float(integrate.simpson(y, x=u))


def random_model_pair(rng: np.random.Generator, family: str):
    u = rng.uniform
    if family == "binomial":
        n = int(rng.integers(1, 61))
        return dist.Binomial(n, u(0.02, 0.98)), dist.Binomial(n, u(0.02, 0.98))
    if family == "poisson":
        return dist.Poisson(u(0.1, 50)), dist.Poisson(u(0.1, 50))
    if family == "gaussian":
        return dist.Gaussian(u(-5, 5), u(0.2, 5)), dist.Gaussian(u(-5, 5), u(0.2, 5))
    if family == "exponential":
        return dist.Exponential(u(0.2, 5)), dist.Exponential(u(0.2, 5))
    xm = u(0.5, 3)
    return dist.Pareto(u(0.5, 5), xm), dist.Pareto(u(0.5, 5), xm)


def suite_closed_forms(trials: Optional[int], seed: int, tol: dict) -> SuiteResult:
    """Closed-form rho and zeta against an independent numeric oracle."""
    trials = 100 if trials is None else trials
    res = SuiteResult("closed-forms")
    worst = {}
    for f_index, family in enumerate(dist.FAMILIES):
        worst[family] = 0.0
        for i in range(trials):
            rng = trial_rng(seed, (f_index << 20) + i)
            a, b = random_model_pair(rng, family)
            r = closed_form_rho(a, b)
            ref = oracle_rho(a, b)
            worst[family] = max(worst[family], abs(r - ref))
            res.check(abs(r - ref) <= tol["closed_form"], lambda: f"{a} vs {b}: closed {r!r}, oracle {ref!r}")
            res.check(0.0 <= r <= 1.0, lambda: f"{a} vs {b}: rho {r!r} out of range")
            res.check(abs(r - closed_form_rho(b, a)) <= tol["slack"], lambda: f"{a} vs {b}: rho asymmetric")
            z = closed_form_zeta(a, b)
            res.check(0.0 <= z <= 1.0, lambda: f"{a} vs {b}: zeta {z!r} out of range")
            res.check(abs(z - closed_form_zeta(b, a)) <= tol["slack"], lambda: f"{a} vs {b}: zeta asymmetric")
            res.check(abs(z - bbd(r, 2)) <= tol["path"], lambda: f"{a} vs {b}: zeta {z!r} != bbd(rho, 2)")
            res.check(closed_form_zeta(a, a) <= tol["identity"], lambda: f"{a}: zeta(a, a) != 0")
            if family in ("exponential", "pareto"):
                c = rng.uniform(0.1, 10)
                if family == "exponential":
                    sa, sb = dist.Exponential(a.rate * c), dist.Exponential(b.rate * c)
                else:
                    sa, sb = dist.Pareto(a.shape * c, a.xm), dist.Pareto(b.shape * c, b.xm)
                res.check(abs(closed_form_zeta(sa, sb) - z) <= tol["path"], lambda: f"{a} vs {b}: not scale invariant")
    res.info["max_abs_error_by_family"] = worst
    return res


# -- Bayes error --------------------------------------------------------------


def suite_bayes_bounds(trials: Optional[int], seed: int, tol: dict) -> SuiteResult:
    """Containment of P_e between the rho bounds, tightness at rho = 1, equal-prior reduction."""
    trials = 10_000 if trials is None else trials
    res = SuiteResult("bayes-bounds")
    slack = tol["slack"]
    literal_lower_violations = 0
    for i, (p, q) in _pairs(trials, seed):
        rng = trial_rng(seed, i)
        pi1 = 0.5 if i % 7 == 0 else float(rng.uniform(0.0, 1.0))
        prior = PriorPair(pi1)
        pe = bayes_error(p, q, prior)
        rep = kailath_bounds(rho_discrete(p, q), prior)
        res.check(rep.lower <= pe + slack, lambda: f"trial {i}: lower {rep.lower!r} > P_e {pe!r}")
        res.check(pe <= rep.upper + slack, lambda: f"trial {i}: P_e {pe!r} > upper {rep.upper!r}")
        literal_lower_violations += rep.lower_paper_literal > pe + slack
        if i % 20 == 2:
            _check_mixture_path(res, p, q, prior, slack, i)

    rng = trial_rng(seed, trials)
    same = random_distribution(rng, 6)
    for k in range(101):
        prior = PriorPair(k / 100)
        pe = bayes_error(same, same, prior)
        lower = kailath_bounds(1.0, prior).lower
        res.check(abs(lower - pe) <= tol["identity"], lambda: f"pi1={k / 100}: lower {lower!r} not tight vs {pe!r}")
        res.check(abs(pe - min(prior.pi1, prior.pi2)) <= tol["identity"], lambda: f"pi1={k / 100}: P_e != min prior")

    for r in RHO_GRID:
        rep = kailath_bounds(r)
        res.check(rep.lower == 0.5 * (1 - math.sqrt(1 - r**2)), f"equal-prior lower differs at rho={r}")
        res.check(rep.upper == 0.5 * r, f"equal-prior upper differs at rho={r}")
        res.check(rep.lower == rep.lower_paper_literal and rep.upper == rep.upper_paper_literal,
                  f"literal forms differ at equal priors, rho={r}")
    res.info["paper_literal_lower_violations"] = int(literal_lower_violations)
    return res


def _check_mixture_path(res: SuiteResult, p, q, prior, slack, i) -> None:
    pes, rhos = [], []
    for t in np.linspace(0, 1, 21):
        mixed = DiscreteDistribution.normalized(t * p.probs + (1 - t) * q.probs)
        pes.append(bayes_error(p, mixed, prior))
        rhos.append(rho_discrete(p, mixed))
    res.check(np.all(np.diff(pes) >= -slack), lambda: f"trial {i}: P_e not monotone along mixture path")
    res.check(np.all(np.diff(rhos) >= -slack), lambda: f"trial {i}: rho not monotone along mixture path")


def random_ranked_instance(rng: np.random.Generator, gap: float = 0.2):
    """Two hypothesis pairs whose coefficients differ by more than ``gap`` (smaller first)."""
    while True:
        pairs = []
        for _ in range(2):
            n = int(rng.integers(2, 9))
            pairs.append((random_distribution(rng, n), random_distribution(rng, n)))
        r0, r1 = rho_discrete(*pairs[0]), rho_discrete(*pairs[1])
        if abs(r0 - r1) > gap:
            return (pairs[0], pairs[1]) if r0 < r1 else (pairs[1], pairs[0])


def suite_bradt_karlin(trials: Optional[int], seed: int, tol: dict) -> SuiteResult:
    """A smaller coefficient admits a prior with strictly smaller Bayes error."""
    trials = 100 if trials is None else trials
    res = SuiteResult("bradt-karlin")
    found = 0
    for i in range(trials):
        beta, beta_prime = random_ranked_instance(trial_rng(seed, i))
        witness = bradt_karlin_witness(beta, beta_prime)
        if witness is not None:
            found += 1
            pe, pe_prime = bayes_error(*beta, witness), bayes_error(*beta_prime, witness)
            res.check(pe < pe_prime - 1e-12, lambda: f"instance {i}: reported witness {witness} fails")
    needed = math.ceil(tol["witness_rate"] * trials)
    res.check(found >= needed, f"witness found in {found}/{trials} instances, need {needed}")

    p = DiscreteDistribution([0.3, 0.7])
    sep = (DiscreteDistribution([1, 0]), DiscreteDistribution([0, 1]))
    res.check(bradt_karlin_witness(sep, (p, p)) is not None, "separable vs identical pair has no witness")
    try:
        bradt_karlin_witness((p, p), (p, p))
        res.check(False, "equal coefficients did not raise")
    except DomainError:
        res.check(True, "")
    res.info.update(witnesses_found=found, instances=trials)
    return res


# -- curvature ----------------------------------------------------------------

CURVATURE_THETAS = {
    "poisson": (0.5, 2.0, 7.0, 20.0),
    "gaussian_mean": (-3.0, 0.0, 1.5, 10.0),
    "gaussian_sigma": (0.3, 1.0, 2.5, 8.0),
    "exponential": (0.2, 1.0, 3.0, 10.0),
    "binomial": (0.1, 0.3, 0.5, 0.85),
    "pareto": (0.5, 1.5, 3.0, 8.0),
}
CURVATURE_ALPHAS = (-10.0, -1.0, 1.5, 2.0, 10.0)


def _natural_scale(family: str, theta: float) -> float:
    """Length scale of the parameter, capped at 1, used to size difference steps."""
    if family == "gaussian_mean":
        return 1.0
    if family == "binomial":
        return min(theta, 1.0 - theta)
    return min(1.0, abs(theta))


def suite_curvature(trials: Optional[int], seed: int, tol: dict) -> SuiteResult:
    """Second derivative of Z_theta at phi = theta equals C(alpha) * Fisher information."""
    res = SuiteResult("curvature")
    ctol = tol["curvature"]
    for family, theta in (("poisson", 2.0), ("gaussian_mean", 0.0), ("exponential", 1.0)):
        for a in (-1, 2, 10):
            rep = curvature_check(family, theta, a, h=1e-3)
            res.check(rep.rel_error <= ctol, lambda: f"{family} alpha={a}: rel error {rep.rel_error!r}")
    for theta in ((0.0, 1.0), (0.0, 2.0), (1.5, 0.7)):
        for a in (-1, 2, 10):
            rep = curvature_matrix(theta, a, h=1e-3)
            m = rep.fd_curvature
            res.check(rep.rel_error <= ctol, lambda: f"gaussian {theta} alpha={a}: rel error {rep.rel_error!r}")
            res.check(abs(m[0, 1]) <= tol["offdiag"], lambda: f"gaussian {theta} alpha={a}: off-diagonal {m[0, 1]!r}")
            res.check(abs(m[0, 1] - m[1, 0]) <= tol["symmetry"], lambda: f"gaussian {theta}: asymmetric Hessian")

    for family, thetas in CURVATURE_THETAS.items():
        for theta in thetas:
            h = 1e-3 * max(1.0, abs(theta))
            for a in CURVATURE_ALPHAS:
                rep = curvature_check(family, theta, a, h=h)
                err = abs(rep.richardson - rep.predicted) / rep.predicted
                res.check(err <= ctol, lambda: f"{family} theta={theta} alpha={a}: extrapolated rel error {err!r}")
                res.check(rep.z_at_theta == 0.0, lambda: f"{family} theta={theta}: Z(theta) != 0")
                res.check(abs(rep.first_difference) <= 10 * h * h * max(1.0, rep.predicted),
                          lambda: f"{family} theta={theta}: first difference {rep.first_difference!r}")
            slope, second = rho_derivatives(family, theta, h=1e-4 * _natural_scale(family, theta))
            info = fisher_information(family, theta)
            res.check(abs(slope) <= tol["rho_slope"], lambda: f"{family} theta={theta}: d rho/d phi = {slope!r}")
            res.check(abs(second + info / 4) <= tol["rho_curvature"] * info / 4,
                      lambda: f"{family} theta={theta}: d2 rho = {second!r}, expected {-info / 4!r}")
            numeric = fisher_information(family, theta, mode="numeric")
            res.check(abs(numeric - info) <= 1e-5 * info, lambda: f"{family} theta={theta}: numeric Fisher {numeric!r}")

    alphas = np.concatenate([-np.logspace(-3, 9, 25), 1 + np.logspace(-3, 9, 25)])
    for a in alphas:
        c = c_alpha(a)
        res.check(c > 0, lambda: f"C({a}) = {c!r} not positive")
        scaled = generator_second_derivative_at_one(a) * (-1.0 / math.log1p(-1.0 / a))
        res.check(abs(scaled - c) <= 1e-12 * c, lambda: f"C({a}) != f''(1) * (-1/log(1-1/alpha))")
    for a in (1e8, -1e8):
        res.check(abs(c_alpha(a) - 0.25) <= tol["limit"], f"C({a}) not near 1/4")
    res.check(c_alpha(math.inf) == 0.25 and c_alpha(-math.inf) == 0.25, "C(+/-inf) != 1/4")
    return res


# -- multiway -----------------------------------------------------------------


def suite_multiway(trials: Optional[int], seed: int, tol: dict) -> SuiteResult:
    """Range, reduction to the pairwise coefficient and permutation invariance."""
    trials = 10_000 if trials is None else trials
    res = SuiteResult("multiway")
    slack = tol["slack"]
    alphas = BOUNDED_ALPHAS
    for i in range(trials):
        rng = trial_rng(seed, i)
        n, m = int(rng.integers(2, 6)), int(rng.integers(2, 9))
        dists = [random_distribution(rng, m) for _ in range(n)]
        w = rng.dirichlet(np.ones(n))
        if rng.random() < 0.2:
            w[rng.integers(n)] = 0.0
            w = w / w.sum()
        weights = WeightVector(w)
        rb = generalized_rho(dists, weights)
        b = generalized_bbd(rb, alphas[i % len(alphas)])
        res.check(0.0 <= rb <= 1.0 and 0.0 <= b <= 1.0, lambda: f"trial {i}: rho_beta={rb!r}, B={b!r}")
        perm = rng.permutation(n)
        rp = generalized_rho([dists[k] for k in perm], WeightVector(w[perm]))
        res.check(abs(rp - rb) <= slack, lambda: f"trial {i}: not permutation invariant")
        res.check(abs(generalized_rho([dists[0]] * n, weights) - 1.0) <= tol["identity"],
                  lambda: f"trial {i}: identical distributions do not give 1")
        p, q = dists[0], dists[1]
        pair = generalized_rho([p, q], WeightVector([0.5, 0.5]))
        res.check(abs(pair - rho_discrete(p, q)) <= slack, lambda: f"trial {i}: n=2 reduction {pair!r}")
        if i % 10 == 1:
            split = int(rng.integers(1, m))
            a = DiscreteDistribution.normalized(np.arange(m) < split)
            c = DiscreteDistribution.normalized(np.arange(m) >= split)
            zero = generalized_rho([a, c, dists[0]], WeightVector(np.full(3, 1 / 3)))
            res.check(zero == 0.0, lambda: f"trial {i}: orthogonal members give {zero!r}")
    return res


SUITES: dict[str, Callable[[Optional[int], int, dict], SuiteResult]] = {
    "bounded": suite_bounded,
    "ordering": suite_ordering,
    "limits": suite_limits,
    "fdiv-equiv": suite_fdiv_equiv,
    "theorem6": suite_sharp_constants,
    "jsd": suite_jsd,
    "bayes-bounds": suite_bayes_bounds,
    "bradt-karlin": suite_bradt_karlin,
    "curvature": suite_curvature,
    "closed-forms": suite_closed_forms,
    "multiway": suite_multiway,
}


def run_suites(
    names: list[str],
    trials: Optional[int] = None,
    seed: int = 0,
    tol: Optional[dict] = None,
    parallel: Optional[bool] = None,
) -> list[SuiteResult]:
    """Run the named suites (``"all"`` expands to every suite) in a fixed order."""
    if "all" in names:
        names = list(SUITES)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise DomainError(f"unknown suite(s) {unknown}; choose from {sorted(SUITES)} or 'all'")
    bad_tol = set(tol or {}) - set(DEFAULT_TOL)
    if bad_tol:
        raise DomainError(f"unknown tolerance key(s) {sorted(bad_tol)}")
    merged = {**DEFAULT_TOL, **(tol or {})}
    if parallel is None:
        parallel = os.environ.get("BBD_NO_PARALLEL") != "1"

    def run(name: str) -> SuiteResult:
        return SUITES[name](trials, seed, merged)

    if parallel and len(names) > 1:
        with ThreadPoolExecutor(max_workers=min(len(names), os.cpu_count() or 1)) as pool:
            return list(pool.map(run, names))
    return [run(n) for n in names]
