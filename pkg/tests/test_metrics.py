import numpy as np
import pytest

from apscale import (
    ValidationError,
    affinity_propagation,
    agreement,
    association_rates,
    brute_force_optimum,
)
from apscale.metrics import subset_netsim
from conftest import points_similarity
from oracles import pair_scan_agreement, pair_scan_rates


def test_rates_hand_example():
    tar, far = association_rates([0, 0, 0], [0, 0, 1])
    assert tar == 1.0
    assert far == 1.0


def test_rates_identity():
    truth = np.array([0, 1, 1, 2, 0])
    tar, far = association_rates(truth, truth)
    assert (tar, far) == (1.0, 0.0)


def test_rates_all_singletons():
    tar, far = association_rates(np.arange(6), np.array([0, 0, 1, 1, 2, 2]))
    assert (tar, far) == (0.0, 0.0)


def test_rates_empty_denominators():
    # all truth distinct: no same-truth pairs -> tar = 1.0
    tar, _ = association_rates([0, 0, 0], [0, 1, 2])
    assert tar == 1.0
    # all truth equal: no different-truth pairs -> far = 0.0
    _, far = association_rates([0, 1, 2], [5, 5, 5])
    assert far == 0.0


def test_rates_validation():
    with pytest.raises(ValidationError):
        association_rates([0, 1], [0, 1, 2])
    with pytest.raises(ValidationError):
        association_rates([0], [0])


def test_agreement_relabel_invariance():
    a = np.array([0, 0, 1, 2, 2])
    b = np.array([7, 7, 3, 9, 9])
    assert agreement(a, b) == 1.0


def test_agreement_opposites():
    assert agreement([0, 1, 2], [0, 0, 0]) == 0.0


def test_agreement_symmetry(rng):
    a = rng.integers(0, 4, size=30)
    b = rng.integers(0, 4, size=30)
    assert agreement(a, b) == agreement(b, a)


def test_metrics_match_pair_scan(rng):
    for _ in range(20):
        n = int(rng.integers(2, 50))
        pred = rng.integers(0, 5, size=n)
        truth = rng.integers(0, 5, size=n)
        assert association_rates(pred, truth) == pair_scan_rates(pred, truth)
        assert agreement(pred, truth) == pair_scan_agreement(pred, truth)


def test_brute_force_single_point():
    S = np.array([[-2.5]])
    opt = brute_force_optimum(S)
    assert opt.exemplars.tolist() == [0]
    assert opt.netsim == -2.5


def test_brute_force_two_singletons():
    S = np.array([[0.0, -100.0], [-100.0, 0.0]])
    opt = brute_force_optimum(S)
    assert opt.exemplars.tolist() == [0, 1]
    assert opt.netsim == 0.0


def test_brute_force_beats_every_subset(rng):
    from itertools import combinations
    S = points_similarity(8, 13)
    opt = brute_force_optimum(S)
    for size in range(1, 9):
        for subset in combinations(range(8), size):
            assert opt.netsim >= subset_netsim(S, subset) - 1e-12


def test_brute_force_dominates_ap():
    for seed in range(10):
        S = points_similarity(8, seed)
        assert brute_force_optimum(S).netsim >= affinity_propagation(S).netsim - 1e-9


def test_brute_force_size_limit():
    with pytest.raises(ValidationError):
        brute_force_optimum(np.zeros((21, 21)))
