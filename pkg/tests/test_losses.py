import numpy as np
import pytest

from dcbm.errors import KTooLargeError, LengthMismatchError
from dcbm.graph import LabelVector
from dcbm.losses import (
    brute_force_misclassification,
    hamming,
    misclassification,
    weighted_misclassification,
)


def lv(values, k):
    return LabelVector(np.array(values), k)


def test_hamming():
    assert hamming(lv([1, 2, 1], 2), lv([1, 2, 1], 2)) == 0
    assert hamming(lv([1, 1, 2, 2], 2), lv([2, 2, 1, 1], 2)) == 4
    assert hamming(lv([1, 2, 1], 2), lv([1, 2, 2], 2)) == 1
    with pytest.raises(LengthMismatchError):
        hamming(lv([1], 2), lv([1, 2], 2))


def test_misclassification_examples():
    assert misclassification(lv([1, 2, 1], 2), lv([1, 2, 1], 2)).value == 0.0
    # label swap is free
    assert misclassification(lv([2, 2, 1, 1], 2), lv([1, 1, 2, 2], 2)).value == 0.0
    # H = 2 under either permutation of k=2
    assert misclassification(lv([1, 2, 1, 2], 2), lv([1, 1, 2, 2], 2)).value == 0.5


def test_zero_labels_always_err():
    assert misclassification(lv([0, 0, 0], 2), lv([1, 2, 1], 2)).value == 1.0


def test_lexicographic_tie_break():
    # Both permutations of k=2 give the same error; identity is smaller.
    res = misclassification(lv([1, 2, 1, 2], 2), lv([1, 1, 2, 2], 2))
    assert res.permutation == (1, 2)


def test_weighted_reduces_to_unweighted():
    rng = np.random.default_rng(1)
    z = lv(rng.integers(1, 4, size=30), 3)
    zh = lv(rng.integers(0, 4, size=30), 3)
    w = weighted_misclassification(zh, z, np.ones(30)).value
    assert w == pytest.approx(30 * misclassification(zh, z).value)


def test_weighted_swap_example():
    res = weighted_misclassification(lv([2, 1], 2), lv([1, 2], 2), np.array([3.0, 1.0]))
    assert res.value == 0.0
    assert res.permutation == (2, 1)


def test_brute_force_examples():
    assert brute_force_misclassification(lv([1, 0, 1], 1), lv([1, 1, 1], 1)).value == pytest.approx(1 / 3)
    assert brute_force_misclassification(lv([0, 0], 2), lv([1, 2], 2)).value == 1.0
    with pytest.raises(KTooLargeError):
        brute_force_misclassification(lv([7], 7), lv([7], 7))


def test_oracle_equivalence_random():
    rng = np.random.default_rng(7)
    for _ in range(200):
        k = int(rng.integers(2, 5))
        z = lv(rng.integers(1, k + 1, size=30), k)
        zh = lv(rng.integers(0, k + 1, size=30), k)
        assert misclassification(zh, z).value == brute_force_misclassification(zh, z).value


def test_permutation_invariance():
    rng = np.random.default_rng(3)
    k = 4
    z = lv(rng.integers(1, k + 1, size=40), k)
    zh = lv(rng.integers(1, k + 1, size=40), k)
    base = misclassification(zh, z).value
    for _ in range(10):
        sigma = rng.permutation(k) + 1
        relabeled = lv(sigma[zh.labels - 1], k)
        assert misclassification(relabeled, z).value == base


def test_symmetry_up_to_relabeling():
    rng = np.random.default_rng(5)
    z = lv(rng.integers(1, 4, size=25), 3)
    zh = lv(rng.integers(1, 4, size=25), 3)
    assert misclassification(zh, z).value == misclassification(z, zh).value


def test_identity_permutation_upper_bound():
    rng = np.random.default_rng(9)
    z = lv(rng.integers(1, 4, size=25), 3)
    zh = lv(rng.integers(1, 4, size=25), 3)
    assert misclassification(zh, z).value <= hamming(zh, z) / 25 + 1e-12
