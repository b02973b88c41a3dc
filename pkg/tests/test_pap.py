import numpy as np
import pytest

from apscale import (
    ApConfig,
    PapConfig,
    PreferenceSpec,
    ValidationError,
    affinity_propagation,
    assemble_block_availability,
    install_preferences,
    neg_sq_euclidean,
    pap_cluster,
    partition_blocks,
    validate_k,
)
from conftest import points_similarity


def block_sizes(plan):
    return [stop - start for start, stop in plan.blocks]


def test_partition_10_3():
    plan = partition_blocks(10, 3)
    assert block_sizes(plan) == [3, 3, 4]
    assert plan.m == 3


def test_partition_2021_4():
    plan = partition_blocks(2021, 4)
    assert block_sizes(plan) == [505, 505, 505, 506]


def test_partition_singletons():
    plan = partition_blocks(8, 8)
    assert block_sizes(plan) == [1] * 8


def test_partition_covers_disjoint_ordered():
    plan = partition_blocks(103, 7)
    flat = [i for start, stop in plan.blocks for i in range(start, stop)]
    assert flat == list(range(103))


def test_partition_validation():
    with pytest.raises(ValidationError):
        partition_blocks(10, 1)
    with pytest.raises(ValidationError):
        partition_blocks(5, 6)


def test_k_bound_ok_cases():
    assert validate_k(2021, 4, 86)      # 4 < 5.87
    assert validate_k(1000, 2, 10)      # 2 < 25


def test_k_bound_warns_but_proceeds():
    with pytest.warns(UserWarning):
        assert not validate_k(2021, 16, 86)


def test_assemble_zero_blocks():
    plan = partition_blocks(6, 2)
    A = assemble_block_availability([np.zeros((3, 3)), np.zeros((3, 3))], plan)
    assert np.array_equal(A, np.zeros((6, 6)))


def test_assemble_placement_and_off_block_zeros():
    plan = partition_blocks(2, 2)
    A = assemble_block_availability([np.array([[-1.0]]), np.array([[-2.0]])], plan)
    assert np.array_equal(A, np.diag([-1.0, -2.0]))
    plan = partition_blocks(5, 2)
    blocks = [np.full((2, 2), 7.0), np.full((3, 3), -3.0)]
    A = assemble_block_availability(blocks, plan)
    assert np.all(A[:2, 2:] == 0.0)
    assert np.all(A[2:, :2] == 0.0)
    assert np.all(A[:2, :2] == 7.0)
    assert np.all(A[2:, 2:] == -3.0)


def test_assemble_size_mismatch():
    plan = partition_blocks(5, 2)
    with pytest.raises(ValidationError):
        assemble_block_availability([np.zeros((3, 3)), np.zeros((3, 3))], plan)


def test_k1_rejected():
    with pytest.raises(ValidationError):
        PapConfig(k=1)


def test_two_blobs_match_plain_ap():
    rng = np.random.default_rng(0)
    pts = np.vstack([
        rng.normal([0.0, 0.0], 0.3, size=(100, 2)),
        rng.normal([10.0, 10.0], 0.3, size=(100, 2)),
    ])
    S = install_preferences(neg_sq_euclidean(pts), PreferenceSpec.median())
    ap = affinity_propagation(S)
    res, report = pap_cluster(S, PapConfig(k=2, shuffle_seed=0))
    assert np.array_equal(res.idx, ap.idx)
    assert np.array_equal(res.exemplars, ap.exemplars)


def test_aligned_separated_blocks_converge_fast():
    # blocks contain whole far-apart clusters: the warm start is already
    # decision-stable, so the outer run needs at most max(block) + convits
    rng = np.random.default_rng(3)
    pts = np.vstack([
        rng.normal([0.0, 0.0], 0.2, size=(60, 2)),
        rng.normal([50.0, 50.0], 0.2, size=(60, 2)),
    ])
    S = install_preferences(neg_sq_euclidean(pts), PreferenceSpec.median())
    cfg = PapConfig(k=2, shuffle_seed=None)
    res, report = pap_cluster(S, cfg)
    assert report.outer_iterations <= report.block_iterations_max + cfg.outer.convits


def test_result_validity_and_phase_report():
    S = points_similarity(120, 5)
    res, report = pap_cluster(S, PapConfig(k=3, shuffle_seed=1))
    assert np.array_equal(res.idx[res.idx], res.idx)
    assert res.netsim == pytest.approx(res.dpsim + res.expref, abs=1e-9)
    assert len(report.block_iterations) == 3
    assert report.block_iterations_sum == sum(report.block_iterations)
    assert res.iterations == report.block_iterations_sum + report.outer_iterations


def test_shuffle_determinism():
    S = points_similarity(80, 2)
    r1, _ = pap_cluster(S, PapConfig(k=4, shuffle_seed=9))
    r2, _ = pap_cluster(S, PapConfig(k=4, shuffle_seed=9))
    assert np.array_equal(r1.idx, r2.idx)
    assert r1.netsim == r2.netsim


def test_no_shuffle_mode():
    S = points_similarity(60, 8)
    res, _ = pap_cluster(S, PapConfig(k=2, shuffle_seed=None))
    assert np.array_equal(res.idx[res.idx], res.idx)
