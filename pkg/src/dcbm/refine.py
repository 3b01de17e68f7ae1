"""Refinement stage: normalized neighbor-count reassignment, its
iterated variant, and the leave-one-out version with consensus.

Each node is reassigned to the community maximizing its neighbor count
normalized by community size. Community membership is always evaluated
on the input labeling (all updates simultaneous). Ties prefer the
incumbent label when it attains the maximum, else the smallest label.
"""

from __future__ import annotations

import numpy as np

from .errors import DegenerateReferenceError, NoCommunitiesError
from .graph import AdjacencyMatrix, LabelVector
from .seeding import splitmix64
from .spectral import InitConfig, initialize


def _normalized_counts(A: np.ndarray, z0: np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Per-node, per-community size-normalized neighbor counts.

    Empty communities get -inf so the argmax never selects them.
    Returns (scores (n, k), sizes (k,)).
    """
    sizes = np.bincount(z0, minlength=k + 1)[1:]
    indicator = np.zeros((A.shape[0], k))
    assigned = z0 > 0
    indicator[np.nonzero(assigned)[0], z0[assigned] - 1] = 1.0
    counts = A.astype(float) @ indicator
    scores = np.full_like(counts, -np.inf)
    live = sizes > 0
    scores[:, live] = counts[:, live] / sizes[live]
    return scores, sizes


def _argmax_with_incumbent(scores: np.ndarray, incumbent: np.ndarray) -> np.ndarray:
    """Row argmax (1-based); the incumbent label wins ties it attains."""
    best = scores.max(axis=1)
    labels = np.argmax(scores, axis=1) + 1
    has_inc = incumbent > 0
    rows = np.nonzero(has_inc)[0]
    inc_attains = scores[rows, incumbent[has_inc] - 1] >= best[rows]
    labels[rows[inc_attains]] = incumbent[has_inc][inc_attains]
    return labels


def refine_once(A: AdjacencyMatrix, z0: LabelVector, k: int) -> LabelVector:
    """One round of size-normalized neighbor-count reassignment."""
    if A.n != z0.n:
        raise ValueError("label vector length must match graph size")
    scores, sizes = _normalized_counts(A.matrix, z0.labels, k)
    if not np.any(sizes > 0):
        raise NoCommunitiesError("every community of the input labeling is empty")
    return LabelVector(_argmax_with_incumbent(scores, z0.labels), k)


def refine_iterated(A: AdjacencyMatrix, z0: LabelVector, k: int, iterations: int = 10) -> LabelVector:
    """Apply refine_once repeatedly; stops early at a fixed point."""
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    z = z0
    for _ in range(iterations):
        z_next = refine_once(A, z, k)
        if np.array_equal(z_next.labels, z.labels):
            return z_next
        z = z_next
    return z


def detect_practical(
    A: AdjacencyMatrix,
    k: int,
    init_config: InitConfig = InitConfig(),
    iterations: int = 1,
) -> LabelVector:
    """Initialization followed by iterated refinement."""
    z0 = initialize(A, k, init_config)
    return refine_iterated(A, z0, k, iterations)


def _self_assignment(A_row: np.ndarray, i: int, labels: np.ndarray, k: int) -> int:
    """Label for node i from its row of A and the other nodes' labels."""
    best_u, best_score = 0, -np.inf
    for u in range(1, k + 1):
        members = np.nonzero(labels == u)[0]
        members = members[members != i]
        if members.size == 0:
            continue
        score = A_row[members].sum() / members.size
        if score > best_score:
            best_u, best_score = u, score
    if best_u == 0:
        raise NoCommunitiesError(f"leave-one-out labels for node {i} have no community")
    return best_u


def detect_provable(
    A: AdjacencyMatrix,
    k: int,
    init_config: InitConfig = InitConfig(),
) -> LabelVector:
    """Leave-one-out initialization, per-node self-assignment, consensus.

    For each node i the initialization runs on the graph with node i
    removed (seeded per (seed, i)); node i's own label comes from the
    size-normalized count rule applied to its adjacency row; the final
    labeling aligns all runs against the run that excluded node 0 by
    maximizing label-set intersections.
    """
    n = A.n
    if n < 3:
        raise ValueError("need at least 3 nodes")
    loo = np.zeros((n, n), dtype=np.int64)  # row i: full labeling from run -i
    for i in range(n):
        sub = A.exclude_node(i)
        cfg = InitConfig(
            tau=init_config.tau,
            c1=init_config.c1,
            restarts=init_config.restarts,
            max_iters=init_config.max_iters,
            seed=splitmix64(init_config.seed, i),
        )
        z_sub = initialize(sub, k, cfg)
        others = np.concatenate([np.arange(i), np.arange(i + 1, n)])
        loo[i, others] = z_sub.labels
        loo[i, i] = _self_assignment(A.matrix[i].astype(float), i, loo[i], k)

    ref = loo[0]
    if not np.any(ref > 0):
        raise DegenerateReferenceError("reference run produced no assigned labels")
    final = np.zeros(n, dtype=np.int64)
    final[0] = loo[0, 0]
    for i in range(1, n):
        own = loo[i] == loo[i, i]
        overlaps = np.array([np.count_nonzero((ref == u) & own) for u in range(1, k + 1)])
        final[i] = int(np.argmax(overlaps)) + 1
    return LabelVector(final, k)
