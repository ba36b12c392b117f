"""Property suite cross-checking bounds, oracles and quadrature.

Each group returns CheckResults; a group that raises is recorded as a single
failed check rather than aborting the run.
"""

import dataclasses
import logging
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from ..bounds.core import (
    MomentSpec1D,
    bisect_alpha,
    bound_1d_corollary,
    bound_1d_theorem,
    bound_chebyshev_classical,
    bound_chebyshev_one_sided,
    bound_multivariate_chen,
    bound_multivariate_improved,
    cardano_alpha,
    corollary_terms,
    cubic_residual,
    residual_tolerance,
    solve_alpha,
)
from ..bounds.discrete import (
    bound_discrete_theorem,
    discrete_m_eps,
    edge_tail_mask,
    embed_variance,
    embedded_pdf,
    symmetric_tail_mask,
    tail_edges,
    tail_geometry,
    tail_probability,
)
from ..config import Config
from ..oracles.continuous import ExponentialOracle, LaplaceOracle, NormalOracle, UniformOracle
from ..oracles.discrete import BinomialOracle, PoissonOracle
from ..oracles.entropy import differential_entropy, expectation, multivariate_entropy, probability_mass
from ..oracles.montecarlo import make_rng, mc_tail_estimate
from ..oracles.multivariate import BivariateUniformOracle, MultiNormalOracle, exact_tail_multi_normal
from ..report.sweep import BoundViolationError, OracleRef, SweepConfig, grid_values, run_sweep

logger = logging.getLogger(__name__)


GROUPS = ("solver", "bounds", "entropy", "discrete", "multivariate", "montecarlo", "sweeps")

SOLVER_EPS = (0.25, 0.5, 1.0, 2.0, 4.0, 8.0)
SOLVER_M = (1e-4, 1e-2, 0.1, 1.0, 10.0)
SOLVER_REL_TOL = 1e-10

# Slack for entropy inequalities on top of the quadrature error bound
ENTROPY_SLACK = 1e-8
EQUALITY_TOL = 1e-6
EMBEDDING_TOL = 1e-9
PROBABILITY_SLACK = 1e-12
# sigma_f is exactly 1 or 2 here, so the edges below are exact integers
ENGINEERED_EDGES = (
    (0.0, 1.0 - 1.0 / 12.0, 1.5),  # x_L = -1, x_R = 2
    (0.0, 1.0 - 1.0 / 12.0, 0.5),  # x_L = 0, x_R = 1
    (2.5, 4.0 - 1.0 / 12.0, 1.0),  # x_L = 1, x_R = 5
)


@dataclass(frozen=True)
class CheckResult:
    group: str
    name: str
    passed: bool
    detail: str = ""


def _relative(a: float, b: float) -> float:
    return abs(a - b) / abs(b) if b != 0 else abs(a)


class VerificationSuite:
    """Runs the check groups with tolerances, grids and seeds from Config."""

    def __init__(self, config: Config, seed: Optional[int] = None, mc_samples: Optional[int] = None):
        self.config = config
        self.seed = config.monte_carlo.seed if seed is None else seed
        self.mc_samples = config.monte_carlo.samples if mc_samples is None else mc_samples
        self.solver_options = config.solver_options()
        self.quad_options = {
            "epsabs": config.tolerances.quad_epsabs,
            "limit": config.tolerances.quad_limit,
        }

    def run(self, only: Optional[Iterable[str]] = None) -> list[CheckResult]:
        """
        Run every group, or just those named in `only`.

        Raises:
            ValueError: Unknown group name
        """
        selected = list(GROUPS) if not only else list(dict.fromkeys(only))
        unknown = [g for g in selected if g not in GROUPS]
        if unknown:
            raise ValueError(f"unknown check group(s): {', '.join(unknown)}; choose from {', '.join(GROUPS)}")

        results = []
        for group in selected:
            runner: Callable[[], list[CheckResult]] = getattr(self, f"check_{group}")
            try:
                group_results = runner()
            except Exception as e:
                logger.error(f"Check group {group} crashed: {e}", exc_info=True)
                group_results = [CheckResult(group, "group completed", False, f"{type(e).__name__}: {e}")]
            passed = sum(r.passed for r in group_results)
            logger.info(f"Group {group}: {passed}/{len(group_results)} checks passed")
            results.extend(group_results)
        return results

    # --- solver -------------------------------------------------------------

    def check_solver(self) -> list[CheckResult]:
        iterations = self.config.solver.bisection_iterations
        worst_bisect = worst_cardano = worst_residual = 0.0
        uniqueness_failures = []

        for eps in SOLVER_EPS:
            for m in SOLVER_M:
                alpha = solve_alpha(eps, m, **self.solver_options)
                worst_bisect = max(worst_bisect, _relative(alpha, bisect_alpha(eps, m, iterations)))
                worst_cardano = max(worst_cardano, _relative(alpha, cardano_alpha(eps, m)))
                residual = abs(cubic_residual(alpha, eps, m)) / residual_tolerance(
                    m, self.config.solver.residual_scale
                )
                worst_residual = max(worst_residual, residual)
                delta = 1e-6 * alpha
                if not (cubic_residual(alpha - delta, eps, m) < 0 < cubic_residual(alpha + delta, eps, m)):
                    uniqueness_failures.append((eps, m))

        count = len(SOLVER_EPS) * len(SOLVER_M)
        return [
            CheckResult(
                "solver",
                f"agrees with bisection ({count} points)",
                worst_bisect <= SOLVER_REL_TOL,
                f"max relative gap {worst_bisect:.3g}",
            ),
            CheckResult(
                "solver",
                f"agrees with Cardano ({count} points)",
                worst_cardano <= SOLVER_REL_TOL,
                f"max relative gap {worst_cardano:.3g}",
            ),
            CheckResult(
                "solver",
                "residual within tolerance",
                worst_residual <= 1.0,
                f"worst |T(alpha)| / tolerance = {worst_residual:.3g}",
            ),
            CheckResult(
                "solver",
                "sign change at the root",
                not uniqueness_failures,
                f"failures at {uniqueness_failures}" if uniqueness_failures else "T(alpha -/+ delta) straddles 0",
            ),
        ]

    # --- bounds -------------------------------------------------------------

    def check_bounds(self) -> list[CheckResult]:
        rng = make_rng(self.seed)
        cases = self.config.verify.property_cases
        dominance, m_monotone, eps_monotone, scale = [], [], [], []

        for _ in range(cases):
            eps = float(rng.uniform(0.1, 6.0))
            m = float(10.0 ** rng.uniform(-6.0, 1.0))
            spec = MomentSpec1D(mean=0.0, variance=1.0, sup_density_on_tail=m)

            theorem = bound_1d_theorem(eps, spec, **self.solver_options)
            corollary = bound_1d_corollary(eps, spec)
            chebyshev = bound_chebyshev_classical(eps)
            if not (
                theorem.bound <= corollary.bound * (1 + 1e-12)
                and corollary.bound <= chebyshev * (1 + 1e-12)
                and theorem.raw <= min(corollary_terms(eps, m)) * (1 + 1e-12)
            ):
                dominance.append((eps, m))

            larger_m = bound_1d_theorem(eps, MomentSpec1D(0.0, 1.0, 1.5 * m), **self.solver_options)
            if larger_m.raw < theorem.raw * (1 - 1e-12):
                m_monotone.append((eps, m))

            larger_eps = bound_1d_theorem(1.25 * eps, spec, **self.solver_options)
            if larger_eps.raw > theorem.raw * (1 + 1e-12):
                eps_monotone.append((eps, m))

            mu = float(rng.uniform(-100.0, 100.0))
            sigma = float(10.0 ** rng.uniform(-3.0, 3.0))
            scaled = MomentSpec1D(mean=mu, variance=sigma * sigma, sup_density_on_tail=m / sigma)
            if _relative(bound_1d_theorem(eps, scaled, **self.solver_options).raw, theorem.raw) > 1e-10:
                scale.append((eps, m, mu, sigma))

        def result(name, failures):
            detail = f"{cases} cases" if not failures else f"{len(failures)} failures, first {failures[0]}"
            return CheckResult("bounds", name, not failures, detail)

        classical = (
            [bound_chebyshev_classical(e) for e in (1.0, 2.0, 3.0)] == [1.0, 0.25, 1.0 / 9.0]
            and [bound_chebyshev_one_sided(e) for e in (1.0, 2.0, 3.0)] == [0.5, 0.2, 0.1]
            and bound_multivariate_chen(2.0, 2) == 0.5
        )
        return [
            result("theorem <= corollary <= chebyshev", dominance),
            result("theorem nondecreasing in m_eps", m_monotone),
            result("theorem nonincreasing in eps", eps_monotone),
            result("location-scale invariance", scale),
            CheckResult("bounds", "classical comparator values", classical, "eps in {1, 2, 3}"),
        ]

    # --- entropy ------------------------------------------------------------

    def _entropy_zoo(self):
        return [
            NormalOracle(),
            NormalOracle(mu=3.0, sigma=2.5),
            LaplaceOracle(),
            LaplaceOracle(mu=-1.0, scale=2.0),
            UniformOracle(),
            UniformOracle(lo=0.0, hi=1.0),
            ExponentialOracle(),
            ExponentialOracle(rate=3.0),
        ]

    def check_entropy(self) -> list[CheckResult]:
        results = []
        mass_tolerance = self.config.tolerances.mass_deficit
        for oracle in self._entropy_zoo():
            label = repr(oracle)
            h = differential_entropy(oracle, mass_tolerance=mass_tolerance, **self.quad_options)
            slack = h.abs_error_bound + ENTROPY_SLACK
            kinks = [*oracle.breakpoints(), oracle.mean]
            variance, _ = expectation(oracle, lambda x, c=oracle.mean: (x - c) ** 2, points=kinks, **self.quad_options)
            abs_dev, _ = expectation(oracle, lambda x, c=oracle.mean: abs(x - c), points=kinks, **self.quad_options)

            gaussian_cap = 0.5 * (1.0 + math.log(2.0 * math.pi * variance))
            laplace_cap = 1.0 + math.log(2.0 * abs_dev)
            oracle.require("exact_entropy")
            results.append(
                CheckResult(
                    "entropy",
                    f"{label} quadrature matches closed form",
                    abs(h.value - oracle.entropy()) <= EQUALITY_TOL,
                    f"h={h.value:.10g} closed={oracle.entropy():.10g}",
                )
            )
            results.append(
                CheckResult(
                    "entropy",
                    f"{label} normal maximises entropy at fixed variance",
                    h.value <= gaussian_cap + slack,
                    f"h={h.value:.10g} cap={gaussian_cap:.10g}",
                )
            )
            results.append(
                CheckResult(
                    "entropy",
                    f"{label} Laplace maximises entropy at fixed E|X - mu|",
                    h.value <= laplace_cap + slack,
                    f"h={h.value:.10g} cap={laplace_cap:.10g}",
                )
            )
            results.append(
                CheckResult(
                    "entropy",
                    f"{label} moment lower bounds from entropy",
                    variance >= math.exp(2.0 * h.value) / (2.0 * math.pi * math.e) - slack
                    and abs_dev >= math.exp(h.value) / (2.0 * math.e) - slack,
                    f"var={variance:.10g} E|X-mu|={abs_dev:.10g}",
                )
            )
            results.append(
                CheckResult(
                    "entropy",
                    f"{label} exp(h) >= 1/sup f",
                    math.exp(h.value) >= 1.0 / oracle.sup_density() - slack,
                    f"exp(h)={math.exp(h.value):.10g} 1/sup={1.0 / oracle.sup_density():.10g}",
                )
            )
            if isinstance(oracle, NormalOracle):
                results.append(
                    CheckResult(
                        "entropy",
                        f"{label} attains the variance cap",
                        abs(h.value - gaussian_cap) <= EQUALITY_TOL,
                        f"gap {abs(h.value - gaussian_cap):.3g}",
                    )
                )
            if isinstance(oracle, LaplaceOracle):
                results.append(
                    CheckResult(
                        "entropy",
                        f"{label} attains the absolute-deviation cap",
                        abs(h.value - laplace_cap) <= EQUALITY_TOL
                        and abs(abs_dev - oracle.mean_absolute_deviation()) <= EQUALITY_TOL,
                        f"gap {abs(h.value - laplace_cap):.3g} E|X-mu|={abs_dev:.10g} "
                        f"closed={oracle.mean_absolute_deviation():.10g}",
                    )
                )

        for oracle in (MultiNormalOracle(dim=2, cov=[[1.0, 0.0], [0.0, 4.0]]), BivariateUniformOracle()):
            label = repr(oracle)
            h = multivariate_entropy(oracle, mass_tolerance=mass_tolerance, **self.quad_options)
            slack = h.abs_error_bound + ENTROPY_SLACK
            n = oracle.dim
            det_cap = 0.5 * math.log((2.0 * math.pi * math.e) ** n * oracle.cov_det)
            trace_mean = float(np.trace(oracle.cov)) / n
            results.append(
                CheckResult(
                    "entropy",
                    f"{label} entropy <= log-det cap",
                    h.value <= det_cap + slack,
                    f"h={h.value:.10g} cap={det_cap:.10g}",
                )
            )
            results.append(
                CheckResult(
                    "entropy",
                    f"{label} trace lower bound from entropy",
                    trace_mean >= math.exp(2.0 * h.value / n) / (2.0 * math.pi * math.e) - slack,
                    f"tr/n={trace_mean:.10g}",
                )
            )
        return results

    # --- discrete -----------------------------------------------------------

    def check_discrete(self) -> list[CheckResult]:
        results = [self._embedding_moments()]
        results.extend(self._set_identity())
        results.extend(self._containment())
        results.extend(self._discrete_validity())
        results.extend(self._m_eps_scan())
        return results

    def _embedding_moments(self) -> CheckResult:
        spec = BinomialOracle(n=20, p=0.5).spec
        f = embedded_pdf(spec)
        window = (float(spec.support_lo), float(spec.support_hi + 1))
        points = list(range(spec.support_lo + 1, spec.support_hi + 1))
        center = spec.mean + 0.5
        mean, _ = expectation(f, lambda x: x, window, points, **self.quad_options)
        variance, _ = expectation(f, lambda x: (x - center) ** 2, window, points, **self.quad_options)
        passed = abs(mean - center) <= EMBEDDING_TOL and abs(variance - embed_variance(spec)) <= EMBEDDING_TOL
        return CheckResult(
            "discrete",
            "floor embedding of Binomial(20, 0.5) has mean + 1/2, variance + 1/12",
            passed,
            f"mean={mean:.12g} variance={variance:.12g}",
        )

    def _set_identity(self) -> list[CheckResult]:
        rng = make_rng(self.seed + 1)
        cases = self.config.verify.set_identity_cases

        # (mean, variance, eps) with x_L or x_R landing exactly on an integer
        moments = list(ENGINEERED_EDGES)
        for _ in range(cases):
            moments.append(
                (float(rng.uniform(-10.0, 10.0)), float(rng.uniform(0.05, 25.0)), float(rng.uniform(0.1, 4.0)))
            )
        set_failures = []
        for mean, variance, eps in moments:
            geometry = tail_edges(eps, mean, variance)
            ks = np.arange(math.floor(geometry.x_L) - 3, math.ceil(geometry.x_R) + 4, dtype=np.int64)
            if not np.array_equal(symmetric_tail_mask(ks, geometry), edge_tail_mask(ks, geometry)):
                set_failures.append((mean, variance, eps))

        tolerance = self.config.tolerances.tail_truncation
        mass_failures = []
        for i in range(cases):
            eps = float(rng.uniform(0.1, 4.0))
            if i % 2 == 0:
                oracle = PoissonOracle(lam=float(rng.uniform(0.5, 20.0)))
            else:
                oracle = BinomialOracle(n=int(rng.integers(2, 61)), p=float(rng.uniform(0.05, 0.95)))
            spec = oracle.spec
            symmetric = tail_probability(eps, spec, "corollary", tolerance)
            inner = tail_probability(eps, spec, "theorem", tolerance)
            edge = spec.p(tail_geometry(eps, spec).m_eps_lo)
            if abs(symmetric - (inner + edge)) > PROBABILITY_SLACK:
                mass_failures.append((repr(oracle), eps))

        return [
            CheckResult(
                "discrete",
                "quadratic tail set = D'_eps + {floor(x_L)} by enumeration",
                not set_failures,
                f"{len(moments)} (mean, variance, eps)" if not set_failures else f"failures: {set_failures[:3]}",
            ),
            CheckResult(
                "discrete",
                "symmetric tail = inner tail + p(floor(x_L))",
                not mass_failures,
                f"{cases} configurations" if not mass_failures else f"failures: {mass_failures[:3]}",
            ),
        ]

    def _containment(self) -> list[CheckResult]:
        """Pr(D'_eps) <= Pr_f(|x - mu - 1/2| >= eps sigma_f) <= theorem bound."""
        results = []
        for oracle in (PoissonOracle(lam=4.0), BinomialOracle(n=20, p=0.5)):
            spec = oracle.spec
            f = embedded_pdf(spec)
            for eps in (1.0, 1.5, 2.0, 2.5):
                geometry = tail_geometry(eps, spec)
                lo, hi = geometry.x_L, geometry.x_R
                points = list(range(math.ceil(lo), math.floor(hi) + 1))
                continuous_tail = 1.0 - probability_mass(f, (lo, hi), points, self.quad_options["epsabs"])
                inner = oracle.exact_inner_tail(eps)
                bound = bound_discrete_theorem(eps, spec, **self.solver_options)
                results.append(
                    CheckResult(
                        "discrete",
                        f"{oracle!r} eps={eps} inner tail inside embedded tail",
                        inner <= continuous_tail + PROBABILITY_SLACK <= bound + 2 * PROBABILITY_SLACK,
                        f"inner={inner:.10g} embedded={continuous_tail:.10g} bound={bound:.10g}",
                    )
                )
        return results

    def _discrete_validity(self) -> list[CheckResult]:
        grid = self.config.sweeps.discrete
        oracles = [
            OracleRef(name="poisson", params={"lam": lam}) for lam in (1.0, 4.0, 10.0)
        ] + [OracleRef(name="binomial", params={"n": 20, "p": p}) for p in (0.2, 0.5)]
        results = []
        for ref in oracles:
            config = SweepConfig(
                oracle=ref,
                eps_grid=grid_values(grid.start, grid.stop, grid.step),
                bounds=["chebyshev", "discrete_theorem", "discrete_corollary"],
                validity_slack=self.config.tolerances.validity_slack,
                workers=self.config.sweeps.workers,
            )
            label = f"{ref.name}({', '.join(f'{k}={v}' for k, v in ref.params.items())})"
            try:
                rows = run_sweep(config, self.solver_options)
                results.append(CheckResult("discrete", f"{label} bounds hold", True, f"{len(rows)} grid points"))
            except BoundViolationError as e:
                results.append(CheckResult("discrete", f"{label} bounds hold", False, str(e)))
        return results

    def _m_eps_scan(self) -> list[CheckResult]:
        results = []
        for oracle in (BinomialOracle(n=20, p=0.5), BinomialOracle(n=15, p=0.2), PoissonOracle(lam=4.0)):
            spec = oracle.spec
            mismatches = []
            for eps in (0.3, 0.8, 1.0, 1.7, 2.5, 3.0):
                shortcut = discrete_m_eps(eps, spec)
                if spec.bounded:
                    scanned = discrete_m_eps(eps, dataclasses.replace(spec, mode=None))
                else:
                    geometry = tail_geometry(eps, spec)
                    ks, ps = spec.window_values(self.config.tolerances.tail_truncation)
                    in_m = (ks <= geometry.m_eps_lo) | (ks >= geometry.m_eps_hi)
                    scanned = geometry.sigma_f * float(np.max(ps[in_m], initial=0.0))
                if not math.isclose(shortcut, scanned, rel_tol=1e-12, abs_tol=1e-300):
                    mismatches.append((eps, shortcut, scanned))
            results.append(
                CheckResult(
                    "discrete",
                    f"{oracle!r} mode shortcut for m_eps matches a full scan",
                    not mismatches,
                    "6 thresholds" if not mismatches else f"mismatches: {mismatches[:2]}",
                )
            )
        return results

    # --- multivariate -------------------------------------------------------

    def check_multivariate(self) -> list[CheckResult]:
        results = []
        for n in (2, 3):
            oracle = MultiNormalOracle(dim=n)
            for eps in (1.0, 1.5, 2.0, 3.0):
                actual = oracle.exact_tail(eps)
                improved = bound_multivariate_improved(eps, oracle.moment_spec(eps))
                expected_m = (2.0 * math.pi) ** (-n / 2.0) * math.exp(-eps * eps / 2.0)
                closed_term = math.exp((n - eps * eps) / (n + 2.0))
                passed = (
                    actual <= improved.bound + PROBABILITY_SLACK
                    and math.isclose(improved.m_eps, expected_m, rel_tol=1e-12)
                    and math.isclose(improved.term_entropy, closed_term, rel_tol=1e-12)
                )
                results.append(
                    CheckResult(
                        "multivariate",
                        f"standard normal n={n} eps={eps}",
                        passed,
                        f"actual={actual:.10g} bound={improved.bound:.10g}",
                    )
                )

        results.append(
            CheckResult(
                "multivariate",
                "bivariate chi-squared tail at eps=2 is exp(-2)",
                math.isclose(exact_tail_multi_normal(2, 2.0), math.exp(-2.0), rel_tol=1e-12),
                f"{exact_tail_multi_normal(2, 2.0):.12g}",
            )
        )
        results.append(
            CheckResult(
                "multivariate",
                "one-dimensional chi-squared tail matches the normal tail",
                math.isclose(exact_tail_multi_normal(1, 2.0), NormalOracle().exact_tail(2.0), rel_tol=1e-12),
                f"{exact_tail_multi_normal(1, 2.0):.12g}",
            )
        )

        for oracle in (
            MultiNormalOracle(dim=2, cov=[[2.0, 0.5], [0.5, 1.0]]),
            BivariateUniformOracle(),
        ):
            failures = []
            for eps in np.arange(0.25, 3.01, 0.25):
                eps = float(eps)
                actual = oracle.exact_tail(eps)
                spec = oracle.moment_spec(eps)
                bound = min(bound_multivariate_improved(eps, spec).bound, bound_multivariate_chen(eps, 2))
                if actual > bound + PROBABILITY_SLACK:
                    failures.append((eps, actual, bound))
            results.append(
                CheckResult(
                    "multivariate",
                    f"{oracle!r} bound holds",
                    not failures,
                    "12 thresholds" if not failures else f"violations: {failures[:2]}",
                )
            )
        return results

    # --- montecarlo ---------------------------------------------------------

    def check_montecarlo(self) -> list[CheckResult]:
        results = []
        for oracle in (NormalOracle(), LaplaceOracle()):
            for eps in (1.0, 2.0, 3.0):
                estimate = mc_tail_estimate(oracle, eps, self.mc_samples, self.seed)
                exact = oracle.exact_tail(eps)
                z = abs(estimate.estimate - exact) / estimate.std_error if estimate.std_error > 0 else math.inf
                results.append(
                    CheckResult(
                        "montecarlo",
                        f"{oracle!r} eps={eps} within 4 SE",
                        z <= 4.0,
                        f"estimate={estimate.estimate:.6g} exact={exact:.6g} z={z:.2f}",
                    )
                )
        repeat = mc_tail_estimate(NormalOracle(), 2.0, self.mc_samples, self.seed)
        again = mc_tail_estimate(NormalOracle(), 2.0, self.mc_samples, self.seed)
        results.append(
            CheckResult("montecarlo", "same seed, same estimate", repeat == again, f"seed={self.seed}")
        )
        return results

    # --- sweeps -------------------------------------------------------------

    def _sweep(self, name: str, params: dict, grid, bounds: Sequence[str]):
        config = SweepConfig(
            oracle=OracleRef(name=name, params=params),
            eps_grid=grid_values(grid.start, grid.stop, grid.step),
            bounds=list(bounds),
            validity_slack=self.config.tolerances.validity_slack,
            workers=self.config.sweeps.workers,
        )
        return run_sweep(config, self.solver_options)

    def check_sweeps(self) -> list[CheckResult]:
        rows = self._sweep("normal", {}, self.config.sweeps.continuous, ["theorem", "corollary", "chebyshev"])
        ordering, strict = [], []
        for row in rows:
            chebyshev = 1.0 / (row.eps * row.eps)
            theorem, corollary = row.bounds["theorem"], row.bounds["corollary"]
            if not (row.actual <= theorem <= corollary <= chebyshev * (1 + 1e-12)):
                ordering.append(row.eps)
            if row.eps >= 1.2 and not theorem < chebyshev:
                strict.append(row.eps)

        spot = next((row for row in rows if math.isclose(row.eps, 2.0)), None)
        results = [
            CheckResult(
                "sweeps",
                "normal: actual <= theorem <= corollary <= 1/eps^2",
                not ordering,
                f"{len(rows)} grid points" if not ordering else f"fails at eps={ordering[:3]}",
            ),
            CheckResult(
                "sweeps",
                "normal: theorem strictly below 1/eps^2 for eps >= 1.2",
                not strict,
                "strict improvement" if not strict else f"fails at eps={strict[:3]}",
            ),
        ]
        if spot is not None:
            results.append(
                CheckResult(
                    "sweeps",
                    "normal eps=2 spot value",
                    abs(spot.actual - 0.0455003) < 1e-7 and spot.actual <= spot.bounds["theorem"] <= 0.25,
                    f"actual={spot.actual:.7g} theorem={spot.bounds['theorem']:.7g}",
                )
            )

        poisson_rows = self._sweep("poisson", {"lam": 4.0}, self.config.sweeps.discrete, ["discrete_corollary"])
        failures = [row.eps for row in poisson_rows if row.actual > row.bounds["discrete_corollary"]]
        results.append(
            CheckResult(
                "sweeps",
                "Poisson(4): symmetric tail <= discrete corollary",
                not failures,
                f"{len(poisson_rows)} grid points" if not failures else f"fails at eps={failures[:3]}",
            )
        )
        return results


def failed(results: Sequence[CheckResult]) -> list[CheckResult]:
    return [r for r in results if not r.passed]
