"""Evaluation losses: Hamming distance and permutation-minimized
misclassification, plus a theta-weighted variant.

The misclassification proportion minimizes the Hamming error over all
relabelings of the k communities. Predicted label 0 ("unassigned")
counts as an error under every relabeling.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import KTooLargeError, LengthMismatchError
from .graph import LabelVector


@dataclass(frozen=True)
class LossValue:
    """Loss together with the minimizing relabeling.

    ``permutation[u-1]`` is the label the relabeling assigns to true
    community u.
    """

    value: float
    permutation: tuple[int, ...]


def hamming(z1: LabelVector, z2: LabelVector) -> int:
    """Number of positions where the two label vectors differ."""
    if z1.n != z2.n:
        raise LengthMismatchError(f"lengths differ: {z1.n} vs {z2.n}")
    return int(np.count_nonzero(z1.labels != z2.labels))


def _agreement_matrix(zhat: LabelVector, z: LabelVector, weights: np.ndarray) -> np.ndarray:
    """k x k matrix: entry (u-1, v-1) is the total weight of nodes with
    true label u predicted as v. Predicted 0 contributes to no entry."""
    k = max(z.k, zhat.k)
    agree = np.zeros((k, k))
    mask = zhat.labels > 0
    np.add.at(agree, (z.labels[mask] - 1, zhat.labels[mask] - 1), weights[mask])
    return agree


def _lex_optimal_permutation(agree: np.ndarray) -> tuple[float, tuple[int, ...]]:
    """Maximize sum_u agree[u, pi(u)] over permutations pi.

    Returns (max agreement, lexicographically smallest maximizing pi),
    found by greedily fixing pi(1), pi(2), ... to the smallest image
    that still permits the optimal total on the remaining submatrix.
    """
    k = agree.shape[0]

    def best_total(fixed: list[int]) -> float:
        rows = np.arange(len(fixed), k)
        cols = np.array([v for v in range(k) if v not in fixed], dtype=np.int64)
        total = sum(agree[u, fixed[u]] for u in range(len(fixed)))
        if rows.size:
            sub = agree[np.ix_(rows, cols)]
            ri, ci = linear_sum_assignment(-sub)
            total += sub[ri, ci].sum()
        return float(total)

    opt = best_total([])
    fixed: list[int] = []
    for _ in range(k):
        for v in range(k):
            if v in fixed:
                continue
            if best_total(fixed + [v]) >= opt - 1e-9 * max(1.0, abs(opt)):
                fixed.append(v)
                break
    return opt, tuple(v + 1 for v in fixed)


def _weighted_loss(zhat: LabelVector, z: LabelVector, weights: np.ndarray) -> LossValue:
    if zhat.n != z.n:
        raise LengthMismatchError(f"lengths differ: {zhat.n} vs {z.n}")
    agree = _agreement_matrix(zhat, z, weights)
    best, perm = _lex_optimal_permutation(agree)
    return LossValue(value=float(weights.sum() - best), permutation=perm)


def misclassification(zhat: LabelVector, z: LabelVector) -> LossValue:
    """Misclassification proportion, exactly minimized over relabelings."""
    result = _weighted_loss(zhat, z, np.ones(z.n))
    n = max(z.n, 1)
    return LossValue(value=result.value / n, permutation=result.permutation)


def weighted_misclassification(zhat: LabelVector, z: LabelVector, theta) -> LossValue:
    """Theta-weighted error count, exactly minimized over relabelings."""
    theta = np.asarray(theta, dtype=float)
    if theta.shape[0] != z.n:
        raise LengthMismatchError("theta length must match label length")
    return _weighted_loss(zhat, z, theta)


def brute_force_misclassification(zhat: LabelVector, z: LabelVector) -> LossValue:
    """Oracle: explicit enumeration of all k! relabelings (k <= 6)."""
    if zhat.n != z.n:
        raise LengthMismatchError(f"lengths differ: {zhat.n} vs {z.n}")
    k = max(z.k, zhat.k)
    if k > 6:
        raise KTooLargeError(f"brute force limited to k <= 6, got {k}")
    n = max(z.n, 1)
    best_err, best_perm = None, None
    for perm in permutations(range(1, k + 1)):
        relabeled = np.array((0,) + perm)[z.labels]
        err = int(np.count_nonzero(zhat.labels != relabeled))
        if best_err is None or err < best_err:
            best_err, best_perm = err, perm
    return LossValue(value=best_err / n, permutation=best_perm)
