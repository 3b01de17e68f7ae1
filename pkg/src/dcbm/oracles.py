"""Desk-scale exhaustive references.

These oracles enumerate every candidate solution and are deliberately
capped at tiny sizes. They exist to certify the scalable implementations
against exact optima.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import InfeasibleError, TooLargeError
from .graph import AdjacencyMatrix, LabelVector
from .spectral import _weighted_lower_median

MAX_ENUM_N = 12


@dataclass(frozen=True)
class MleProblem:
    """Inputs for the exhaustive constrained maximum-likelihood search."""

    A: AdjacencyMatrix
    theta: np.ndarray
    p: float
    q: float
    k: int
    beta: float = 1.0
    delta: float = 0.0

    def __post_init__(self):
        theta = np.asarray(self.theta, dtype=float)
        object.__setattr__(self, "theta", theta)
        tt = np.outer(theta, theta)
        np.fill_diagonal(tt, 0.0)
        if np.any((tt * self.p >= 1.0) & (tt > 0)) or self.p <= 0:
            raise ValueError("need theta_i theta_j p in (0, 1) for all pairs")
        if np.any(tt * self.q >= 1.0) or self.q < 0:
            raise ValueError("need theta_i theta_j q in [0, 1) for all pairs")
        if self.q >= self.p:
            raise ValueError("need p > q")


def mle_search(problem: MleProblem) -> LabelVector:
    """Exhaustive constrained likelihood maximization (n <= 12).

    Enumerates every z in [k]^n whose community sizes lie in
    [n/(beta k) - 1, beta n/k + 1] and whose per-community mean theta is
    within [1 - delta, 1 + delta]; returns the log-likelihood maximizer
    under within-probability p / cross-probability q, ties broken by the
    lexicographically smallest label vector.
    """
    A = problem.A
    n, k = A.n, problem.k
    if n > MAX_ENUM_N:
        raise TooLargeError(f"mle_search limited to n <= {MAX_ENUM_N}, got {n}")
    theta = problem.theta
    tt = np.outer(theta, theta)

    def pair_term(prob):
        with np.errstate(divide="ignore"):
            on = np.log(tt * prob)
            off = np.log(1.0 - tt * prob)
        return A.matrix * on + (1 - A.matrix) * off

    Lp = pair_term(problem.p)
    Lq = pair_term(problem.q)
    D = np.triu(Lp - Lq, 1)  # within-pair bonus over the all-cross baseline
    size_lo = n / (problem.beta * k) - 1
    size_hi = problem.beta * n / k + 1

    best_score, best_z = -np.inf, None
    for z in product(range(1, k + 1), repeat=n):
        zarr = np.array(z)
        sizes = np.bincount(zarr, minlength=k + 1)[1:]
        if np.any(sizes < size_lo - 1e-9) or np.any(sizes > size_hi + 1e-9):
            continue
        ok = True
        for u in range(1, k + 1):
            members = zarr == u
            if members.any():
                mean = theta[members].mean()
                if not (1 - problem.delta - 1e-12 <= mean <= 1 + problem.delta + 1e-12):
                    ok = False
                    break
        if not ok:
            continue
        same = zarr[:, None] == zarr[None, :]
        score = float((D * same).sum())
        if score > best_score + 1e-12:
            best_score, best_z = score, zarr
    if best_z is None:
        raise InfeasibleError("no label vector satisfies the space constraints")
    return LabelVector(best_z, k)


def mle_log_likelihood(problem: MleProblem, z: LabelVector) -> float:
    """Log of the constrained-likelihood objective at a given labeling."""
    theta = problem.theta
    tt = np.outer(theta, theta)
    A = problem.A.matrix

    def pair_term(prob):
        with np.errstate(divide="ignore"):
            return A * np.log(tt * prob) + (1 - A) * np.log(1.0 - tt * prob)

    same = z.labels[:, None] == z.labels[None, :]
    terms = np.where(same, pair_term(problem.p), pair_term(problem.q))
    return float(np.triu(terms, 1).sum())


def k_medians_brute(points: np.ndarray, weights: np.ndarray, k: int):
    """Global optimum of weighted k-medians by exhaustive assignment.

    Enumerates all k^m assignments (m <= 12) with exact coordinate-wise
    weighted-median centers per cluster.
    """
    points = np.asarray(points, dtype=float)
    weights = np.asarray(weights, dtype=float)
    m = points.shape[0]
    if m > MAX_ENUM_N:
        raise TooLargeError(f"k_medians_brute limited to {MAX_ENUM_N} points, got {m}")
    best_obj, best_labels, best_centers = np.inf, None, None
    for assignment in product(range(k), repeat=m):
        labels = np.array(assignment)
        centers = np.zeros((k, points.shape[1]))
        obj = 0.0
        for u in range(k):
            mask = labels == u
            if not mask.any():
                continue
            centers[u] = _weighted_lower_median(points[mask], weights[mask])
            obj += float(
                (weights[mask] * np.abs(points[mask] - centers[u]).sum(axis=1)).sum()
            )
        if obj < best_obj - 1e-15:
            best_obj, best_labels, best_centers = obj, labels + 1, centers
    return best_labels, best_centers, best_obj
