import numpy as np
import pytest

from dcbm.errors import NoCommunitiesError
from dcbm.graph import AdjacencyMatrix, LabelVector, labels_from_sizes
from dcbm.losses import misclassification
from dcbm.model import DcbmParams, sample_adjacency
from dcbm.refine import detect_practical, detect_provable, refine_iterated, refine_once
from dcbm.seeding import splitmix64
from dcbm.spectral import InitConfig


def cliques(sizes):
    n = sum(sizes)
    m = np.zeros((n, n), dtype=np.uint8)
    start = 0
    for s in sizes:
        m[start:start + s, start:start + s] = 1
        start += s
    np.fill_diagonal(m, 0)
    return AdjacencyMatrix(m)


def lv(values, k):
    return LabelVector(np.array(values), k)


def test_refine_corrects_one_error():
    A = cliques([5, 5])
    z0 = lv([1, 1, 1, 1, 2, 2, 2, 2, 2, 2], 2)  # node 4 mislabeled
    z1 = refine_once(A, z0, 2)
    assert z1.labels.tolist() == [1] * 5 + [2] * 5


def test_refine_fixed_point_on_truth():
    A = cliques([4, 6])
    z = labels_from_sizes([4, 6])
    assert refine_once(A, z, 2).labels.tolist() == z.labels.tolist()


def test_refine_assigns_zero_labels():
    A = cliques([3, 3])
    z0 = lv([1, 1, 0, 2, 2, 0], 2)
    z1 = refine_once(A, z0, 2)
    assert z1.labels.tolist() == [1, 1, 1, 2, 2, 2]


def test_refine_incumbent_wins_ties():
    # isolated node scores 0 in both communities: keeps its label
    A = AdjacencyMatrix.from_edge_list(5, [(0, 1), (2, 3)])
    z0 = lv([1, 1, 2, 2, 2], 2)
    assert refine_once(A, z0, 2).labels[4] == 2


def test_refine_tie_without_incumbent_prefers_smaller():
    # zero-labeled isolated node ties at 0 across communities -> label 1
    A = AdjacencyMatrix.from_edge_list(5, [(0, 1), (2, 3)])
    z0 = lv([1, 1, 2, 2, 0], 2)
    assert refine_once(A, z0, 2).labels[4] == 1


def test_refine_simultaneous_updates():
    # A 4-cycle labeled by alternation: every node's neighbors are in the
    # other community, so one simultaneous round swaps all labels at once.
    A = AdjacencyMatrix.from_edge_list(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    z0 = lv([1, 2, 1, 2], 2)
    z1 = refine_once(A, z0, 2)
    assert z1.labels.tolist() == [2, 1, 2, 1]


def test_refine_all_empty_raises():
    A = cliques([4])
    with pytest.raises(NoCommunitiesError):
        refine_once(A, lv([0, 0, 0, 0], 2), 2)


def test_refine_iterated_early_stop_matches_long_run():
    A = cliques([5, 5])
    z0 = lv([1, 2, 1, 1, 2, 2, 2, 1, 2, 2], 2)
    z_a = refine_iterated(A, z0, 2, iterations=10)
    z_b = refine_iterated(A, z0, 2, iterations=100)
    assert z_a.labels.tolist() == z_b.labels.tolist()
    with pytest.raises(ValueError):
        refine_iterated(A, z0, 2, iterations=0)


def test_detect_practical_cliques():
    A = cliques([8, 8, 8])
    z = labels_from_sizes([8, 8, 8])
    zhat = detect_practical(A, 3, InitConfig(tau=1000, seed=1), iterations=10)
    assert misclassification(zhat, z).value == 0.0


def test_detect_provable_cliques():
    A = cliques([6, 6])
    z = labels_from_sizes([6, 6])
    zhat = detect_provable(A, 2, InitConfig(tau=1000, seed=1))
    assert misclassification(zhat, z).value == 0.0


def test_detect_provable_too_small():
    with pytest.raises(ValueError):
        detect_provable(AdjacencyMatrix.from_edge_list(2, [(0, 1)]), 2)


def test_detect_provable_recovery_rate():
    # Dense two-block graphs are recovered almost always; verifies the
    # consensus step aligns independently labeled leave-one-out runs.
    z = labels_from_sizes([30, 30])
    B = np.array([[0.9, 0.05], [0.05, 0.9]])
    params = DcbmParams(theta=np.ones(60), B=B, z=z)
    exact = 0
    trials = 40
    for s in range(trials):
        A = sample_adjacency(params, splitmix64(123, s))
        cfg = InitConfig(tau=1000, restarts=3, seed=s)
        zhat = detect_provable(A, 2, cfg)
        if misclassification(zhat, z).value == 0.0:
            exact += 1
    assert exact >= trials - 1


def test_provable_close_to_practical_dense():
    z = labels_from_sizes([20, 20])
    B = np.array([[0.8, 0.1], [0.1, 0.8]])
    params = DcbmParams(theta=np.ones(40), B=B, z=z)
    A = sample_adjacency(params, 5)
    cfg = InitConfig(tau=1000, restarts=3, seed=7)
    lp = misclassification(detect_provable(A, 2, cfg), z).value
    ld = misclassification(detect_practical(A, 2, cfg, iterations=10), z).value
    assert abs(lp - ld) <= 0.05
