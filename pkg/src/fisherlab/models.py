"""Generic parametric statistical models: likelihood, MLE, Fisher information, CRB.

A model is a family ``theta -> p_x(theta)`` over a fixed outcome set.  Two
kinds are supported: plain discrete distributions (probabilities summing to 1)
and continuous densities sampled on a uniform grid (trapezoid integral 1).
All operations are pure functions over immutable values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional

import numpy as np

from .errors import DegenerateModel, FlatLikelihood

SUPPORT_EPS = 1e-14      # outcomes with p below this are excluded from p'^2/p
FD_STEP = 1e-5           # central-difference step when no analytic derivative
GRID_SCAN_POINTS = 201
GOLDEN_TOL = 1e-8
FLAT_TOL = 1e-12

_INVGOLD = (math.sqrt(5.0) - 1.0) / 2.0


class ModelKind(Enum):
    DISCRETE = "discrete"
    CONTINUOUS_GRID = "continuous_grid"


@dataclass(frozen=True)
class ParametricModel:
    """Family of outcome probabilities (or grid densities) over one parameter.

    ``outcomes`` holds outcome labels for discrete models and the uniform grid
    for continuous ones.  ``prob`` maps theta to the probability/density
    vector; ``dprob``, when given, is its analytic theta-derivative, otherwise
    a central finite difference with step ``FD_STEP`` is used.
    """

    kind: ModelKind
    outcomes: np.ndarray
    prob: Callable[[float], np.ndarray]
    theta_domain: tuple[float, float]
    dprob: Optional[Callable[[float], np.ndarray]] = None
    name: str = "model"
    # Optional fast path for likelihood scans: log-probabilities restricted to
    # a subset of outcome indices, agreeing with log(prob(theta)[idx]).
    log_prob_at: Optional[Callable[[np.ndarray, float], np.ndarray]] = None

    def __post_init__(self):
        object.__setattr__(self, "outcomes", np.asarray(self.outcomes))
        lo, hi = self.theta_domain
        if not lo < hi:
            raise ValueError("theta_domain must be a non-empty interval")
        if self.kind is ModelKind.CONTINUOUS_GRID:
            h = np.diff(self.outcomes.astype(float))
            if h.size < 1 or not np.allclose(h, h[0], rtol=1e-9, atol=0.0):
                raise ValueError("continuous models need a uniform grid")

    @property
    def n_outcomes(self) -> int:
        return self.outcomes.shape[0]

    def probabilities(self, theta: float) -> np.ndarray:
        p = np.asarray(self.prob(theta), dtype=float)
        if p.shape != (self.n_outcomes,):
            raise ValueError("prob(theta) shape does not match outcomes")
        return p

    def derivatives(self, theta: float) -> np.ndarray:
        if self.dprob is not None:
            return np.asarray(self.dprob(theta), dtype=float)
        lo, hi = self.theta_domain
        step = min(FD_STEP, (hi - lo) / 4.0)
        a = max(lo, theta - step)
        b = min(hi, theta + step)
        return (self.probabilities(b) - self.probabilities(a)) / (b - a)

    def integrate(self, values: np.ndarray) -> float:
        """Sum for discrete models, trapezoid quadrature for grid models."""
        if self.kind is ModelKind.DISCRETE:
            return float(np.sum(values))
        return float(np.trapezoid(values, self.outcomes.astype(float)))

    def validate(self, theta: float,
                 norm_tol: float | None = None,
                 dnorm_tol: float = 1e-8) -> None:
        """Check the normalization invariants at one parameter value."""
        p = self.probabilities(theta)
        if np.any(p < 0):
            raise ValueError("negative probabilities")
        if norm_tol is None:
            norm_tol = 1e-10 if self.kind is ModelKind.DISCRETE else 1e-8
        total = self.integrate(p)
        if abs(total - 1.0) > norm_tol:
            raise ValueError(f"normalization off by {total - 1.0:.3e}")
        dsum = self.integrate(self.derivatives(theta))
        if abs(dsum) > dnorm_tol:
            raise ValueError(f"derivative of normalization is {dsum:.3e}")


@dataclass(frozen=True)
class DataSet:
    """Observed counts per outcome.

    Counts are non-negative reals: integer for real data, fractional when a
    test substitutes the expected counts ``n * p_x`` for registered data.
    """

    counts: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.counts, dtype=float)
        if c.ndim != 1 or np.any(c < 0) or not np.all(np.isfinite(c)):
            raise ValueError("counts must be a 1-d array of non-negative numbers")
        if c.sum() < 1:
            raise ValueError("need at least one recorded particle")
        object.__setattr__(self, "counts", c)

    @property
    def n(self) -> float:
        return float(self.counts.sum())


@dataclass(frozen=True)
class Estimate:
    """Point estimate with its asymptotic error budget; crb == 1/(n*fisher)."""

    theta_hat: float
    variance: float
    fisher: float
    crb: float


def log_likelihood(model: ParametricModel, data: DataSet, theta: float) -> float:
    """Sum of ``n_x * ln p_x(theta)``; terms with ``n_x == 0`` contribute 0.

    Returns ``-inf`` when some observed outcome has zero probability (the
    non-finite-likelihood flag), never raises for that case.
    """
    counts = data.counts
    if counts.shape[0] != model.n_outcomes:
        raise ValueError("data does not align with model outcomes")
    p = model.probabilities(theta)
    seen = counts > 0
    if np.any(p[seen] <= 0.0):
        return -math.inf
    return float(np.dot(counts[seen], np.log(p[seen])))


def fisher_information(model: ParametricModel, theta: float) -> float:
    """Fisher information: sum (or trapezoid integral) of ``p'^2 / p``."""
    p = model.probabilities(theta)
    dp = model.derivatives(theta)
    support = p > SUPPORT_EPS
    if np.count_nonzero(support) < 2:
        raise DegenerateModel("fewer than 2 outcomes in the model support")
    integrand = np.zeros_like(p)
    integrand[support] = dp[support] ** 2 / p[support]
    return model.integrate(integrand)


def crb(model: ParametricModel, theta: float, n: int) -> float:
    """Cramér–Rao variance bound for ``n`` independent particles: 1/(n F)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return 1.0 / (n * fisher_information(model, theta))


def _golden_max(f: Callable[[float], float], lo: float, hi: float,
                tol: float = GOLDEN_TOL) -> float:
    """Golden-section maximization on [lo, hi] to absolute tolerance tol."""
    a, b = lo, hi
    c = b - _INVGOLD * (b - a)
    d = a + _INVGOLD * (b - a)
    fc, fd = f(c), f(d)
    while (b - a) > tol:
        if fc >= fd:           # ties move left: smallest-theta tie break
            b, d, fd = d, c, fc
            c = b - _INVGOLD * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVGOLD * (b - a)
            fd = f(d)
    return (a + b) / 2.0


def mle(model: ParametricModel, data: DataSet) -> Estimate:
    """Maximum-likelihood estimate by coarse grid scan plus golden refinement.

    variance is reported as the asymptotic CRB at the estimate; the empirical
    variance of the estimator lives in the Monte Carlo harness.
    """
    lo, hi = model.theta_domain
    grid = np.linspace(lo, hi, GRID_SCAN_POINTS)
    ll = np.array([log_likelihood(model, data, t) for t in grid])
    finite = np.isfinite(ll)
    if not np.any(finite):
        raise FlatLikelihood("likelihood is -inf on the whole domain")
    span = ll[finite].max() - ll[finite].min()
    if np.count_nonzero(finite) > 1 and span < FLAT_TOL:
        raise FlatLikelihood(f"likelihood varies by only {span:.3e} on the scan grid")
    best = int(np.argmax(ll))          # argmax takes the first = smallest theta
    blo = grid[max(best - 1, 0)]
    bhi = grid[min(best + 1, grid.size - 1)]
    theta_hat = _golden_max(lambda t: log_likelihood(model, data, t), blo, bhi)
    fisher = fisher_information(model, theta_hat)
    bound = 1.0 / (data.n * fisher)
    return Estimate(theta_hat=theta_hat, variance=bound, fisher=fisher, crb=bound)


def quadratic_expansion_check(model: ParametricModel,
                              theta_true: float) -> tuple[float, float]:
    """Fit the expected log-likelihood near theta_true with a parabola.

    The expected per-particle log-likelihood ``sum_x p_x(theta_true) ln
    p_x(theta)`` is sampled on five points spanning +-0.01 and least-squares
    fitted; the negated quadratic coefficient times 2 must reproduce the
    Fisher information (the asymptotic normality statement).
    """
    p_true = model.probabilities(theta_true)

    def expected_ll(theta: float) -> float:
        p = model.probabilities(theta)
        mask = (p > SUPPORT_EPS) & (p_true > SUPPORT_EPS)
        vals = np.zeros_like(p)
        vals[mask] = p_true[mask] * np.log(p[mask])
        return model.integrate(vals)

    offsets = np.array([-0.01, -0.005, 0.0, 0.005, 0.01])
    thetas = theta_true + offsets
    values = np.array([expected_ll(t) for t in thetas])
    coeffs = np.polyfit(offsets, values, deg=2)
    coefficient = -2.0 * coeffs[0]
    return coefficient, fisher_information(model, theta_true)


# ---------------------------------------------------------------------------
# bundled model factories


def bernoulli_model(theta_domain: tuple[float, float] = (1e-9, 1.0 - 1e-9)
                    ) -> ParametricModel:
    """Two-outcome model p = (theta, 1 - theta)."""
    return ParametricModel(
        kind=ModelKind.DISCRETE,
        outcomes=np.array([0, 1]),
        prob=lambda t: np.array([t, 1.0 - t]),
        dprob=lambda t: np.array([1.0, -1.0]),
        theta_domain=theta_domain,
        name="bernoulli",
    )


def gaussian_location_model(sigma: float = 1.0,
                            x_max: float = 12.0,
                            n_points: int = 4801,
                            theta_domain: tuple[float, float] = (-3.0, 3.0)
                            ) -> ParametricModel:
    """Unit-mass Gaussian density on a grid with a location parameter."""
    grid = np.linspace(-x_max, x_max, n_points)
    norm = 1.0 / (sigma * math.sqrt(2.0 * math.pi))

    def prob(theta: float) -> np.ndarray:
        return norm * np.exp(-((grid - theta) ** 2) / (2.0 * sigma ** 2))

    def dprob(theta: float) -> np.ndarray:
        return prob(theta) * (grid - theta) / sigma ** 2

    return ParametricModel(
        kind=ModelKind.CONTINUOUS_GRID,
        outcomes=grid,
        prob=prob,
        dprob=dprob,
        theta_domain=theta_domain,
        name="gaussian",
    )
