"""Monte-Carlo study of the two-group Bernoulli testing problem.

Under H0 the first group of coordinates has success probability
theta0*theta_i*p and the second theta0*theta_i*q; under H1 the roles of
p and q are swapped. The counting test compares (size-normalized) group
sums; the likelihood-ratio test is the exact optimum benchmark.
Ties decide H0 in both tests.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateProbabilityError, LengthMismatchError


@dataclass(frozen=True)
class TestingInstance:
    """One configuration of the two-group testing problem."""

    __test__ = False  # not a pytest class despite the name

    theta0: float
    theta: np.ndarray
    m: int
    m1: int
    p: float
    q: float
    delta: float = 0.0

    def __post_init__(self):
        theta = np.asarray(self.theta, dtype=float)
        if theta.shape[0] != self.m + self.m1:
            raise LengthMismatchError(
                f"theta length {theta.shape[0]} != m + m1 = {self.m + self.m1}"
            )
        if np.any(theta <= 0) or self.theta0 <= 0:
            raise ValueError("theta values must be positive")
        if np.any(self.theta0 * theta * self.p > 1 + 1e-12):
            raise ValueError("theta0 * theta_i * p must not exceed 1")
        object.__setattr__(self, "theta", theta)

    def null_probs(self) -> np.ndarray:
        probs = self.theta0 * self.theta * np.r_[
            np.full(self.m, self.p), np.full(self.m1, self.q)
        ]
        return probs

    def alt_probs(self) -> np.ndarray:
        probs = self.theta0 * self.theta * np.r_[
            np.full(self.m, self.q), np.full(self.m1, self.p)
        ]
        return probs


def counting_test(x, m: int, m1: int) -> int:
    """Decision of the counting test: 0 keeps H0, 1 rejects.

    Equal groups compare raw sums (strict inequality rejects); unequal
    groups compare size-normalized means. Ties keep H0.
    """
    x = np.asarray(x)
    if x.shape[-1] != m + m1:
        raise LengthMismatchError(f"x length {x.shape[-1]} != m + m1 = {m + m1}")
    s1 = x[..., :m].sum(axis=-1) / (1 if m == m1 else m)
    s2 = x[..., m:].sum(axis=-1) / (1 if m == m1 else m1)
    return (s1 < s2).astype(int) if x.ndim > 1 else int(s1 < s2)


def likelihood_ratio_test(x, instance: TestingInstance) -> int:
    """Decision of the exact log-likelihood-ratio test; ties keep H0."""
    p0 = instance.null_probs()
    p1 = instance.alt_probs()
    if np.any((p0 <= 0) | (p0 >= 1)) or np.any((p1 <= 0) | (p1 >= 1)):
        raise DegenerateProbabilityError("all success probabilities must be in (0, 1)")
    x = np.asarray(x, dtype=float)
    # log L1 - log L0 per coordinate, assembled from the two Bernoulli laws.
    w_one = np.log(p1) - np.log(p0)
    w_zero = np.log1p(-p1) - np.log1p(-p0)
    stat = x @ w_one + (1.0 - x) @ w_zero
    # exact ties keep H0; tolerance absorbs summation round-off
    tol = 1e-12 * (np.abs(w_one).sum() + np.abs(w_zero).sum())
    return (stat > tol).astype(int) if x.ndim > 1 else int(stat > tol)


@dataclass(frozen=True)
class ErrorEstimate:
    """Empirical Type I + Type II error with a binomial standard error."""

    error: float
    se: float
    type1: float
    type2: float
    reps: int


def simulate_errors(
    instance: TestingInstance, test: str, reps: int, seed: int
) -> ErrorEstimate:
    """Empirical Type I+II error of a test over seeded Monte-Carlo draws."""
    if reps < 1:
        raise ValueError("reps must be >= 1")
    if test not in ("counting", "lrt"):
        raise ValueError(f"unknown test {test!r}")
    rng = np.random.default_rng(seed)
    x0 = (rng.random((reps, instance.m + instance.m1)) < instance.null_probs()).astype(np.int8)
    x1 = (rng.random((reps, instance.m + instance.m1)) < instance.alt_probs()).astype(np.int8)
    if test == "counting":
        d0 = counting_test(x0, instance.m, instance.m1)
        d1 = counting_test(x1, instance.m, instance.m1)
    else:
        d0 = likelihood_ratio_test(x0, instance)
        d1 = likelihood_ratio_test(x1, instance)
    type1 = float(np.mean(d0))
    type2 = float(np.mean(1 - d1))
    se = float(np.sqrt(type1 * (1 - type1) / reps + type2 * (1 - type2) / reps))
    return ErrorEstimate(error=type1 + type2, se=se, type1=type1, type2=type2, reps=reps)


def error_bound(theta0: float, m: int, p: float, q: float) -> float:
    """Theoretical bound 2*exp(-theta0 * m * (sqrt(p) - sqrt(q))^2)."""
    if q > p:
        raise ValueError("need p >= q")
    return 2.0 * np.exp(-theta0 * m * (np.sqrt(p) - np.sqrt(q)) ** 2)
