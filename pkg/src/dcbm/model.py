"""Degree-corrected block model: parameterization, sampling, validation.

The model: for i != j, edge (i, j) is Bernoulli(theta_i * theta_j *
B[z(i), z(j)]), independently, with a symmetric k x k connectivity
matrix B and ground-truth labels z in [1, k].
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import ConfigError, InvalidProbabilityError
from .graph import AdjacencyMatrix, LabelVector, labels_from_sizes


@dataclass(frozen=True)
class DcbmParams:
    """Ground-truth (theta, B, z) triple defining edge probabilities."""

    theta: np.ndarray
    B: np.ndarray
    z: LabelVector
    # cap Bernoulli means at 1 instead of rejecting heavy-tailed theta
    # draws whose pairwise products overflow the probability range
    clip_probabilities: bool = False

    def __post_init__(self):
        theta = np.asarray(self.theta, dtype=float)
        B = np.asarray(self.B, dtype=float)
        if theta.ndim != 1 or theta.shape[0] != self.z.n:
            raise ValueError("theta must be a length-n vector")
        if np.any(theta <= 0):
            raise ValueError("theta entries must be positive")
        if B.shape != (self.z.k, self.z.k):
            raise ValueError(f"B must be {self.z.k}x{self.z.k}")
        if not np.allclose(B, B.T):
            raise ValueError("B must be symmetric")
        if np.any(B < 0) or np.any(B > 1):
            raise ValueError("B entries must lie in [0, 1]")
        if np.any(self.z.labels == 0):
            raise ValueError("ground-truth labels must lie in [1, k]")
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "B", B)
        # Probability validity: theta_i * theta_j * B_{z(i)z(j)} <= 1 for i != j.
        if not self.clip_probabilities:
            P = self.edge_probabilities()
            if P.max(initial=0.0) > 1.0 + 1e-12:
                raise InvalidProbabilityError(
                    f"max edge probability {P.max():.6f} exceeds 1"
                )

    @property
    def n(self) -> int:
        return self.z.n

    @property
    def k(self) -> int:
        return self.z.k

    def edge_probabilities(self) -> np.ndarray:
        """The n x n matrix of Bernoulli means, zero on the diagonal."""
        zi = self.z.labels - 1
        P = np.outer(self.theta, self.theta) * self.B[np.ix_(zi, zi)]
        if self.clip_probabilities:
            np.minimum(P, 1.0, out=P)
        np.fill_diagonal(P, 0.0)
        return P


@dataclass(frozen=True)
class SpaceDescriptor:
    """(p, q, k, beta, delta, alpha) bounds for parameter-space membership."""

    p: float
    q: float
    k: int
    beta: float = 1.0
    delta: float = 0.0
    alpha: float | None = None

    def __post_init__(self):
        if not (0 <= self.q < self.p <= 1):
            raise ValueError(f"need 0 <= q < p <= 1, got q={self.q}, p={self.p}")
        if self.beta < 1:
            raise ValueError("beta must be >= 1")
        if self.alpha is not None and self.alpha < 1:
            raise ValueError("alpha must be >= 1")


@dataclass(frozen=True)
class SpaceReport:
    """Outcome of a parameter-space membership check."""

    passed: bool
    violations: tuple[str, ...]


def sample_adjacency(params: DcbmParams, seed: int) -> AdjacencyMatrix:
    """Draw one adjacency matrix from the model.

    Upper-triangle pairs (i, j), i < j, are drawn in lexicographic order
    from a single PCG64 stream, so output is a pure function of
    (params, seed).
    """
    n = params.n
    P = params.edge_probabilities()
    iu, ju = np.triu_indices(n, 1)
    u = np.random.default_rng(seed).random(iu.size)
    vals = (u < P[iu, ju]).astype(np.uint8)
    A = np.zeros((n, n), dtype=np.uint8)
    A[iu, ju] = vals
    A[ju, iu] = vals
    return AdjacencyMatrix(A)


def validate_space(params: DcbmParams, desc: SpaceDescriptor) -> SpaceReport:
    """Check membership of (theta, B, z) in the parameter space.

    Constraints: per-community mean theta within [1-delta, 1+delta];
    max off-diagonal B <= q < p <= min diagonal B; community sizes in
    [n/(beta k) - 1, beta n/k + 1]; optionally max diagonal B <= alpha p.
    Failures are reported, not raised.
    """
    violations: list[str] = []
    n, k = params.n, params.k
    if k != desc.k:
        violations.append(f"community count {k} != descriptor k {desc.k}")
    sizes = params.z.community_sizes()
    for u in range(min(k, desc.k)):
        members = params.z.labels == u + 1
        if not members.any():
            violations.append(f"community {u + 1} is empty")
            continue
        mean = float(params.theta[members].mean())
        if not (1 - desc.delta - 1e-12 <= mean <= 1 + desc.delta + 1e-12):
            violations.append(
                f"community {u + 1} mean theta {mean:.4f} outside "
                f"[{1 - desc.delta:.4f}, {1 + desc.delta:.4f}]"
            )
    off = params.B[~np.eye(k, dtype=bool)]
    if off.size and off.max() > desc.q + 1e-12:
        violations.append(f"max off-diagonal B {off.max():.4f} > q {desc.q}")
    if params.B.diagonal().min() < desc.p - 1e-12:
        violations.append(f"min diagonal B {params.B.diagonal().min():.4f} < p {desc.p}")
    lo = n / (desc.beta * desc.k) - 1
    hi = desc.beta * n / desc.k + 1
    for u, nu in enumerate(sizes):
        if not (lo <= nu <= hi):
            violations.append(f"community {u + 1} size {nu} outside [{lo:.2f}, {hi:.2f}]")
    if desc.alpha is not None and params.B.diagonal().max() > desc.alpha * desc.p + 1e-12:
        violations.append(
            f"max diagonal B {params.B.diagonal().max():.4f} > alpha*p "
            f"{desc.alpha * desc.p:.4f}"
        )
    return SpaceReport(passed=not violations, violations=tuple(violations))


def check_condition_n(
    theta: Sequence[float], k: int, beta: float, delta: float, max_swap_rounds: int = 10
) -> list[np.ndarray] | None:
    """Search for a balanced partition with per-block mean theta near 1.

    k=2: blocks of sizes floor(n/2) and n - floor(n/2), each mean within
    delta/4 of 1. k>=3: the two smallest blocks have size floor(n/(beta k))
    and every block mean is within delta/4 of 1.

    Greedy assignment by descending theta followed by bounded pairwise
    swap improvements. Returns the witness partition (list of index
    arrays) or None if the search fails; failure means "not found", not
    "nonexistent".
    """
    theta = np.asarray(theta, dtype=float)
    n = theta.shape[0]
    tol = delta / 4

    if k == 2:
        sizes = [n // 2, n - n // 2]
    else:
        small = int(n // (beta * k))
        if small < 1 or 2 * small > n:
            return None
        rest = n - 2 * small
        base, extra = divmod(rest, k - 2)
        sizes = [small, small] + [base + (1 if u < extra else 0) for u in range(k - 2)]
        sizes = sizes[:2] + sorted(sizes[2:])

    # Greedy: largest theta values round-robin into the blocks, which tends
    # to balance the means.
    order = np.argsort(-theta, kind="stable")
    blocks: list[list[int]] = [[] for _ in range(k)]
    capacity = list(sizes)
    slot = 0
    for idx in order:
        while len(blocks[slot % k]) >= capacity[slot % k]:
            slot += 1
        blocks[slot % k].append(int(idx))
        slot += 1

    members = [np.array(b, dtype=np.int64) for b in blocks]

    def deviations():
        return np.array([abs(theta[m].mean() - 1.0) for m in members])

    # Local search: swap one element between the two worst blocks if it
    # reduces the maximum deviation.
    for _ in range(max_swap_rounds * n):
        dev = deviations()
        if np.all(dev < tol):
            break
        worst = int(np.argmax(dev))
        best_gain, best_swap = 0.0, None
        for other in range(k):
            if other == worst:
                continue
            for ai, a in enumerate(members[worst]):
                for bi, b in enumerate(members[other]):
                    ma = theta[members[worst]].sum() - theta[a] + theta[b]
                    mb = theta[members[other]].sum() - theta[b] + theta[a]
                    new_dev = max(
                        abs(ma / len(members[worst]) - 1.0),
                        abs(mb / len(members[other]) - 1.0),
                    )
                    old_dev = max(dev[worst], dev[other])
                    if old_dev - new_dev > best_gain + 1e-15:
                        best_gain = old_dev - new_dev
                        best_swap = (other, ai, bi)
        if best_swap is None:
            break
        other, ai, bi = best_swap
        a, b = members[worst][ai], members[other][bi]
        members[worst] = members[worst].copy()
        members[other] = members[other].copy()
        members[worst][ai], members[other][bi] = b, a

    dev = deviations()
    if np.all(dev < tol):
        return members
    return None


def sample_theta_halfnormal(n: int, sd: float, seed: int) -> np.ndarray:
    """theta_i = |Z_i| + 1 - E|Z_i| with Z_i iid N(0, sd^2); mean 1."""
    if sd <= 0:
        raise ValueError("sd must be positive")
    z = np.random.default_rng(seed).normal(0.0, sd, size=n)
    return np.abs(z) + 1.0 - sd * np.sqrt(2.0 / np.pi)


def sample_theta_pareto(n: int, shape: float, scale: float, seed: int) -> np.ndarray:
    """iid Pareto(shape, scale) via inverse CDF; mean shape*scale/(shape-1)."""
    if shape <= 1:
        raise ValueError("shape must exceed 1 for a finite mean")
    if scale <= 0:
        raise ValueError("scale must be positive")
    u = np.random.default_rng(seed).random(n)
    return scale * (1.0 - u) ** (-1.0 / shape)


@dataclass(frozen=True)
class ParamFile:
    """Parsed model parameter file."""

    params: DcbmParams
    seed: int
    theta_law: dict = field(default_factory=dict)


def load_params(path: str | Path) -> ParamFile:
    """Load a JSON parameter file.

    Schema: {n, k, theta: [...] | {"halfnormal": {"sd"}} | {"pareto":
    {"shape", "scale"}}, B: [[...]], z: [...] | {"sizes": [...]}, seed}.
    Sampled theta laws draw with the file's seed.
    """
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read parameter file {path}: {exc}") from exc
    try:
        n = int(doc["n"])
        k = int(doc["k"])
        seed = int(doc.get("seed", 0))
        zspec = doc["z"]
        if isinstance(zspec, dict):
            sizes = [int(s) for s in zspec["sizes"]]
            if sum(sizes) != n:
                raise ConfigError(f"sizes sum {sum(sizes)} != n {n}")
            z = labels_from_sizes(sizes)
        else:
            z = LabelVector(np.asarray(zspec, dtype=np.int64), k)
        tspec = doc["theta"]
        law: dict = {}
        if isinstance(tspec, dict):
            if "halfnormal" in tspec:
                law = {"halfnormal": tspec["halfnormal"]}
                theta = sample_theta_halfnormal(n, float(tspec["halfnormal"]["sd"]), seed)
            elif "pareto" in tspec:
                law = {"pareto": tspec["pareto"]}
                theta = sample_theta_pareto(
                    n, float(tspec["pareto"]["shape"]), float(tspec["pareto"]["scale"]), seed
                )
            else:
                raise ConfigError(f"unknown theta law {sorted(tspec)}")
        else:
            theta = np.asarray(tspec, dtype=float)
        B = np.asarray(doc["B"], dtype=float)
        return ParamFile(params=DcbmParams(theta=theta, B=B, z=z), seed=seed, theta_law=law)
    except ConfigError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"invalid parameter file {path}: {exc}") from exc
