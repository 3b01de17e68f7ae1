"""Information-theoretic quantities governing detection difficulty.

The divergence j_t(p, q) = 2(t p + (1-t) q - p^t q^(1-t)); at t = 1/2 it
equals (sqrt(p) - sqrt(q))^2. The exponents I and J are negative log
averages of exp(-theta_i * effective_size * divergence) over nodes,
computed in log space to avoid underflow at large n.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .errors import DomainError


@dataclass(frozen=True)
class ExponentInputs:
    """Inputs to the exponent formulas."""

    theta: np.ndarray
    p: float
    q: float
    k: int
    beta: float = 1.0
    sizes: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "theta", np.asarray(self.theta, dtype=float))
        if not (0 <= self.q < self.p <= 1):
            raise DomainError(f"need 0 <= q < p <= 1, got q={self.q}, p={self.p}")
        if self.k < 2:
            raise DomainError("k must be >= 2")


def j_t(t: float, p: float, q: float) -> float:
    """The divergence 2(t p + (1-t) q - p^t q^(1-t)); q = 0 allowed."""
    if not (0 < t < 1):
        raise DomainError(f"t must lie in (0, 1), got {t}")
    if not (0 < p <= 1) or not (0 <= q <= 1):
        raise DomainError(f"need p in (0, 1] and q in [0, 1], got p={p}, q={q}")
    cross = 0.0 if q == 0.0 else p**t * q ** (1 - t)
    return 2.0 * (t * p + (1 - t) * q - cross)


def _neg_log_average(theta: np.ndarray, factor: float) -> float:
    # -log[(1/n) sum_i exp(-theta_i * factor)] via log-sum-exp.
    n = theta.shape[0]
    return float(np.log(n) - logsumexp(-theta * factor))


def exponent_I(inputs: ExponentInputs) -> float:
    """Minimax exponent I, with effective size n/2 (k=2) or n/(beta k)."""
    n = inputs.theta.shape[0]
    m = n / 2 if inputs.k == 2 else n / (inputs.beta * inputs.k)
    return _neg_log_average(inputs.theta, m * j_t(0.5, inputs.p, inputs.q))


def t_star(sizes) -> float:
    """n_(1) / (n_(1) + n_(2)) for the two smallest community sizes."""
    s = sorted(int(v) for v in sizes)
    if s[0] <= 0:
        raise DomainError("community sizes must be positive")
    return s[0] / (s[0] + s[1])


def exponent_J(inputs: ExponentInputs) -> float:
    """Exponent J built from the two smallest community sizes."""
    if inputs.sizes is None or len(inputs.sizes) != inputs.k:
        raise DomainError("sizes must list all k community sizes")
    s = sorted(int(v) for v in inputs.sizes)
    if s[0] <= 0:
        raise DomainError("community sizes must be positive")
    ts = s[0] / (s[0] + s[1])
    factor = (s[0] + s[1]) / 2 * j_t(ts, inputs.p, inputs.q)
    return _neg_log_average(inputs.theta, factor)
