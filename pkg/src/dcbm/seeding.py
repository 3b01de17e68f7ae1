"""Deterministic seed derivation.

All stochastic components in the package draw from numpy's PCG64
generator seeded explicitly. Substreams (per repetition, per
leave-one-out job, per restart) derive their seeds from a master seed
with splitmix64, so results are reproducible regardless of execution
order or parallel schedule.
"""

MASK64 = (1 << 64) - 1


def splitmix64(seed: int, index: int = 0) -> int:
    """Derive the ``index``-th substream seed from ``seed``.

    Standard splitmix64 finalizer applied to seed + (index+1) * golden
    gamma; statistically independent-looking streams for distinct
    (seed, index) pairs.
    """
    z = (seed + (index + 1) * 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return (z ^ (z >> 31)) & MASK64
