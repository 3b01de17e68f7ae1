"""Initialization stage: degree trimming, best rank-k approximation,
L1 row normalization, and weighted k-medians clustering.

Pipeline: zero out high-degree rows/columns, take the Frobenius-optimal
rank-k approximation of the trimmed matrix, L1-normalize its rows, then
cluster the normalized rows by k-medians weighted by the row L1 norms.
Rows with (numerically) zero L1 norm are left unassigned (label 0).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyInputError, NoConvergenceError
from .graph import AdjacencyMatrix, LabelVector
from .seeding import splitmix64

DEFAULT_C1 = 5.0


@dataclass(frozen=True)
class TrimmedMatrix:
    """Adjacency matrix with over-degree rows and columns zeroed."""

    matrix: np.ndarray
    trimmed: frozenset[int]
    tau: float


@dataclass(frozen=True)
class LowRankApprox:
    """Rank-<=k symmetric approximation and the retained eigenvalues."""

    matrix: np.ndarray
    spectrum: np.ndarray


@dataclass(frozen=True)
class KMediansResult:
    """Weighted k-medians output on the non-degenerate rows."""

    labels: np.ndarray          # in [1, k], one per input point
    centers: np.ndarray         # (k, d)
    objective: float
    s0: frozenset[int] = frozenset()


@dataclass(frozen=True)
class InitConfig:
    """Tuning knobs for the initialization pipeline."""

    tau: float | None = None    # explicit trim threshold; None -> data-driven
    c1: float = DEFAULT_C1      # multiplier for the data-driven threshold
    restarts: int = 10
    max_iters: int = 100
    seed: int = 0


def default_tau(A: AdjacencyMatrix, c1: float = DEFAULT_C1) -> float:
    """Data-driven trim threshold: c1 times the average row sum."""
    if c1 <= 0:
        raise ValueError("c1 must be positive")
    return c1 * float(A.matrix.sum()) / A.n


def trim(A: AdjacencyMatrix, tau: float) -> TrimmedMatrix:
    """Zero the rows and columns whose degree exceeds tau."""
    if tau < 0:
        raise ValueError("tau must be nonnegative")
    degrees = A.row_sums()
    over = np.nonzero(degrees > tau)[0]
    T = A.matrix.astype(float)
    T[over, :] = 0.0
    T[:, over] = 0.0
    return TrimmedMatrix(matrix=T, trimmed=frozenset(over.tolist()), tau=tau)


def rank_k_approx(M: np.ndarray, k: int) -> LowRankApprox:
    """Frobenius-optimal rank-<=k approximation of a symmetric matrix.

    Retains the k eigenpairs of largest |eigenvalue|; ties on equal
    magnitude are broken by descending signed value, then position in the
    spectral decomposition.
    """
    M = np.asarray(M, dtype=float)
    n = M.shape[0]
    if not (1 <= k <= n):
        raise ValueError(f"k must lie in [1, {n}], got {k}")
    try:
        eigvals, eigvecs = np.linalg.eigh(M)
    except np.linalg.LinAlgError as exc:
        raise NoConvergenceError(f"eigendecomposition failed: {exc}") from exc
    order = sorted(range(n), key=lambda i: (-abs(eigvals[i]), -eigvals[i], i))
    keep = order[:k]
    lam = eigvals[keep]
    U = eigvecs[:, keep]
    P = (U * lam) @ U.T
    return LowRankApprox(matrix=(P + P.T) / 2.0, spectrum=lam)


def normalize_rows_l1(
    P: np.ndarray, zero_tol: float | None = None
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Split rows into degenerate and L1-normalized ones.

    Returns (s0, tildeP, weights): indices of rows with L1 norm below the
    zero tolerance, the matrix with every other row scaled to unit L1
    norm, and the original row norms (the k-medians weights).
    """
    P = np.asarray(P, dtype=float)
    n = P.shape[0]
    if zero_tol is None:
        zero_tol = 1e-12 * n
    norms = np.abs(P).sum(axis=1)
    s0 = np.nonzero(norms <= zero_tol)[0]
    tildeP = P.copy()
    live = norms > zero_tol
    tildeP[live] /= norms[live, None]
    tildeP[~live] = 0.0
    return s0, tildeP, norms


def _weighted_lower_median(X: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Coordinate-wise lower weighted median of rows of X."""
    Xt = np.ascontiguousarray(X.T)  # row-contiguous sort is much faster
    order = np.argsort(Xt, axis=1, kind="stable")
    cumw = np.cumsum(w[order], axis=1)
    half = w.sum() / 2.0
    pick = np.argmax(cumw >= half - 1e-12 * max(1.0, half), axis=1)
    sorted_x = np.take_along_axis(Xt, order, axis=1)
    return sorted_x[np.arange(Xt.shape[0]), pick]


def _assign(points: np.ndarray, centers: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # L1 distance of every point to every center; argmin ties go to the
    # smallest center index.
    dists = np.abs(points[:, None, :] - centers[None, :, :]).sum(axis=2)
    labels = np.argmin(dists, axis=1)
    return labels, dists[np.arange(points.shape[0]), labels]


def _farthest_point_init(
    points: np.ndarray, weights: np.ndarray, k: int, rng: np.random.Generator
) -> np.ndarray:
    first = int(rng.choice(points.shape[0], p=weights / weights.sum()))
    chosen = [first]
    mindist = np.abs(points - points[first]).sum(axis=1)
    for _ in range(1, k):
        score = weights * mindist
        score[chosen] = -1.0
        nxt = int(np.argmax(score))
        chosen.append(nxt)
        mindist = np.minimum(mindist, np.abs(points - points[nxt]).sum(axis=1))
    return points[chosen].copy()


def weighted_k_medians(
    points: np.ndarray,
    weights: np.ndarray,
    k: int,
    restarts: int = 10,
    max_iters: int = 100,
    seed: int = 0,
) -> KMediansResult:
    """Weighted k-medians by Lloyd-style alternation with restarts.

    Assignment sends each point to the nearest center in L1 distance;
    the update step takes the coordinate-wise lower weighted median of
    each cluster. The best objective over independent seeded restarts is
    returned (ties to the lowest restart index), which realizes the
    clustering step as an empirical (1+eps)-approximate solver.
    """
    points = np.asarray(points, dtype=float)
    weights = np.asarray(weights, dtype=float)
    if points.shape[0] == 0:
        raise EmptyInputError("no points to cluster")
    if np.any(weights <= 0):
        raise ValueError("weights must be positive")
    m = points.shape[0]
    k_eff = min(k, m)

    best: KMediansResult | None = None
    for r in range(restarts):
        rng = np.random.default_rng(splitmix64(seed, r))
        centers = _farthest_point_init(points, weights, k_eff, rng)
        labels, _ = _assign(points, centers)
        prev_obj = np.inf
        for _ in range(max_iters):
            for u in range(k_eff):
                members = labels == u
                if members.any():
                    centers[u] = _weighted_lower_median(points[members], weights[members])
                else:
                    # Re-seed an empty cluster at the worst-served point.
                    _, d = _assign(points, centers)
                    centers[u] = points[int(np.argmax(weights * d))]
            new_labels, dist = _assign(points, centers)
            obj = float((weights * dist).sum())
            if np.array_equal(new_labels, labels) and obj >= prev_obj - 1e-15:
                labels, prev_obj = new_labels, min(obj, prev_obj)
                break
            labels, prev_obj = new_labels, obj
        if k_eff < k:
            centers = np.vstack([centers, np.tile(centers[-1], (k - k_eff, 1))])
        candidate = KMediansResult(
            labels=labels + 1, centers=centers, objective=prev_obj
        )
        if best is None or candidate.objective < best.objective:
            best = candidate
    return best


@dataclass(frozen=True)
class InitDetails:
    """Full record of one initialization run."""

    labels: LabelVector
    trimmed: TrimmedMatrix
    approx: LowRankApprox
    kmedians: KMediansResult | None
    s0: frozenset[int]


def initialize_detailed(A: AdjacencyMatrix, k: int, config: InitConfig = InitConfig()) -> InitDetails:
    """Run the full pipeline and keep all intermediate artifacts."""
    tau = config.tau if config.tau is not None else default_tau(A, config.c1)
    T = trim(A, tau)
    approx = rank_k_approx(T.matrix, min(k, A.n))
    s0, tildeP, norms = normalize_rows_l1(approx.matrix)
    labels = np.zeros(A.n, dtype=np.int64)
    live = np.setdiff1d(np.arange(A.n), s0)
    km = None
    if live.size:
        km = weighted_k_medians(
            tildeP[live],
            norms[live],
            k,
            restarts=config.restarts,
            max_iters=config.max_iters,
            seed=config.seed,
        )
        km = KMediansResult(
            labels=km.labels,
            centers=km.centers,
            objective=km.objective,
            s0=frozenset(s0.tolist()),
        )
        labels[live] = km.labels
    return InitDetails(
        labels=LabelVector(labels, k),
        trimmed=T,
        approx=approx,
        kmedians=km,
        s0=frozenset(s0.tolist()),
    )


def initialize(A: AdjacencyMatrix, k: int, config: InitConfig = InitConfig()) -> LabelVector:
    """Initial label estimate; unassigned (degenerate) rows get label 0."""
    return initialize_detailed(A, k, config).labels
