import numpy as np
import pytest

from dcbm.errors import InfeasibleError, TooLargeError
from dcbm.graph import AdjacencyMatrix, LabelVector, labels_from_sizes
from dcbm.losses import misclassification
from dcbm.oracles import MleProblem, k_medians_brute, mle_log_likelihood, mle_search


def cliques(sizes):
    n = sum(sizes)
    m = np.zeros((n, n), dtype=np.uint8)
    start = 0
    for s in sizes:
        m[start:start + s, start:start + s] = 1
        start += s
    np.fill_diagonal(m, 0)
    return AdjacencyMatrix(m)


def test_mle_recovers_cliques():
    A = cliques([3, 3])
    prob = MleProblem(A=A, theta=np.ones(6), p=0.9, q=0.1, k=2)
    zhat = mle_search(prob)
    assert misclassification(zhat, labels_from_sizes([3, 3])).value == 0.0


def test_mle_lexicographic_tie_break():
    # Empty graph with q = 0: every balanced labeling has likelihood
    # depending only on sizes, so the winner is the lexicographic minimum.
    A = AdjacencyMatrix.from_edge_list(4, [])
    prob = MleProblem(A=A, theta=np.ones(4), p=0.5, q=0.4, k=2, beta=1.0)
    zhat = mle_search(prob)
    assert zhat.labels.tolist() == [1, 1, 2, 2]


def test_mle_optimality_certificate():
    # The returned labeling must score at least as high as every feasible
    # candidate under the independently computed log-likelihood.
    rng = np.random.default_rng(3)
    m = np.triu((rng.random((8, 8)) < 0.4).astype(np.uint8), 1)
    A = AdjacencyMatrix(m + m.T)
    prob = MleProblem(A=A, theta=np.ones(8), p=0.6, q=0.2, k=2, beta=1.0)
    zhat = mle_search(prob)
    best = mle_log_likelihood(prob, zhat)
    from itertools import product
    for z in product((1, 2), repeat=8):
        if sorted(np.bincount(z, minlength=3)[1:]) != [4, 4]:
            continue
        cand = mle_log_likelihood(prob, LabelVector(np.array(z), 2))
        assert best >= cand - 1e-9


def test_mle_size_cap():
    A = cliques([7, 7])
    with pytest.raises(TooLargeError):
        mle_search(MleProblem(A=A, theta=np.ones(14), p=0.9, q=0.1, k=2))


def test_mle_infeasible_space():
    A = cliques([4])
    theta = np.array([2.0, 2.0, 0.01, 0.01])
    prob = MleProblem(A=A, theta=theta, p=0.2, q=0.1, k=2, beta=1.0, delta=0.001)
    with pytest.raises(InfeasibleError):
        mle_search(prob)


def test_mle_input_validation():
    A = cliques([4])
    with pytest.raises(ValueError):
        MleProblem(A=A, theta=np.ones(4), p=0.1, q=0.5, k=2)
    with pytest.raises(ValueError):
        MleProblem(A=A, theta=np.full(4, 2.0), p=0.5, q=0.1, k=2)


def test_k_medians_brute_separated():
    points = np.array([[0.0], [1.0], [10.0]])
    weights = np.ones(3)
    labels, centers, obj = k_medians_brute(points, weights, 2)
    assert obj == pytest.approx(1.0)
    assert labels[0] == labels[1] != labels[2]
    # lower weighted median of {0, 1} picks 0
    assert sorted(centers[:, 0].tolist()) == [0.0, 10.0]


def test_k_medians_brute_weights_matter():
    # heavy weight at 1.0 moves the shared center there
    points = np.array([[0.0], [1.0], [10.0]])
    labels, centers, obj = k_medians_brute(points, np.array([1.0, 5.0, 1.0]), 2)
    two_cluster = centers[labels[0] - 1, 0]
    assert two_cluster == 1.0
    assert obj == pytest.approx(1.0)


def test_k_medians_brute_cap():
    with pytest.raises(TooLargeError):
        k_medians_brute(np.zeros((13, 2)), np.ones(13), 2)
