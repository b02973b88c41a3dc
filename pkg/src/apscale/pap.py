"""Partition affinity propagation: per-block message passing on diagonal
submatrices, block-diagonal availability assembly, and a warm-started full
run."""

import warnings
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from .engine import ApConfig, ClusteringResult, extract_result, run_messages
from .simcore import ValidationError, validate_similarity


@dataclass(frozen=True)
class PartitionPlan:
    k: int
    blocks: List[Tuple[int, int]]  # half-open [start, stop) index ranges
    m: int


@dataclass(frozen=True)
class PapConfig:
    k: int = 4
    expected_max_clusters: int = 50
    shuffle_seed: Optional[int] = 0  # None disables shuffling
    inner: ApConfig = field(default_factory=ApConfig)
    outer: ApConfig = field(default_factory=ApConfig)

    def __post_init__(self):
        if self.k < 2:
            raise ValidationError(f"PAP needs k >= 2, got {self.k}")
        if self.expected_max_clusters < 1:
            raise ValidationError("expected_max_clusters must be positive")


@dataclass
class PapReport:
    block_iterations: List[int]
    block_converged: List[bool]
    outer_iterations: int
    outer_converged: bool
    message_ops: int

    @property
    def block_iterations_max(self) -> int:
        return max(self.block_iterations)

    @property
    def block_iterations_sum(self) -> int:
        return sum(self.block_iterations)


def partition_blocks(n: int, k: int) -> PartitionPlan:
    """k contiguous ranges: the first k-1 of size floor(n/k), the last takes
    the remainder."""
    if k < 2 or k > n:
        raise ValidationError(f"block count must satisfy 2 <= k <= n, got k={k}, n={n}")
    m = n // k
    blocks = [(i * m, (i + 1) * m) for i in range(k - 1)]
    blocks.append(((k - 1) * m, n))
    return PartitionPlan(k=k, blocks=blocks, m=m)


def validate_k(n: int, k: int, expected_max_clusters: int) -> bool:
    """Soft check of the k < n/(4C) sizing guidance; warns and returns False
    when violated, never errors."""
    if k >= n / (4.0 * expected_max_clusters):
        warnings.warn(
            f"block count k={k} exceeds the sizing guidance k < n/(4C) "
            f"= {n / (4.0 * expected_max_clusters):.2f} for C={expected_max_clusters}; "
            "blocks may be too small to contain whole clusters",
            stacklevel=2,
        )
        return False
    return True


def assemble_block_availability(block_As: List[np.ndarray], plan: PartitionPlan) -> np.ndarray:
    """Place per-block availability matrices on the diagonal, zeros elsewhere."""
    if len(block_As) != plan.k:
        raise ValidationError(f"expected {plan.k} block matrices, got {len(block_As)}")
    n = plan.blocks[-1][1]
    A = np.zeros((n, n))
    for (start, stop), block in zip(plan.blocks, block_As):
        block = np.asarray(block, dtype=np.float64)
        size = stop - start
        if block.shape != (size, size):
            raise ValidationError(f"block shape {block.shape} does not match range size {size}")
        A[start:stop, start:stop] = block
    return A


def pap_cluster(S, cfg: Optional[PapConfig] = None,
                trace: Optional[list] = None) -> Tuple[ClusteringResult, PapReport]:
    cfg = cfg or PapConfig()
    S = validate_similarity(S)
    n = S.shape[0]
    plan = partition_blocks(n, cfg.k)
    validate_k(n, cfg.k, cfg.expected_max_clusters)

    if cfg.shuffle_seed is not None:
        perm = np.random.default_rng(cfg.shuffle_seed).permutation(n)
    else:
        perm = np.arange(n)
    Sp = S[np.ix_(perm, perm)]

    block_As = []
    block_iters = []
    block_conv = []
    ops = 0
    for start, stop in plan.blocks:
        state, iters, conv, block_ops = run_messages(Sp[start:stop, start:stop], cfg.inner)
        block_As.append(state.A)
        block_iters.append(iters)
        block_conv.append(conv)
        ops += block_ops

    warm_A = assemble_block_availability(block_As, plan)
    state, outer_iters, outer_conv, outer_ops = run_messages(Sp, cfg.outer, warm_A=warm_A, trace=trace)
    ops += outer_ops
    permuted = extract_result(Sp, state, outer_iters, outer_conv, ops)

    # map back to the original ordering
    idx = np.empty(n, dtype=np.int64)
    idx[perm] = perm[permuted.idx]
    exemplars = np.sort(perm[permuted.exemplars])
    result = ClusteringResult(
        idx=idx,
        exemplars=exemplars,
        dpsim=permuted.dpsim,
        expref=permuted.expref,
        netsim=permuted.netsim,
        iterations=sum(block_iters) + outer_iters,
        converged=outer_conv,
        message_ops=ops,
    )
    report = PapReport(
        block_iterations=block_iters,
        block_converged=block_conv,
        outer_iterations=outer_iters,
        outer_converged=outer_conv,
        message_ops=ops,
    )
    return result, report
