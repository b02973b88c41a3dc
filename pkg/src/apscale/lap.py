"""Landmark affinity propagation: cluster a random landmark subset, embed
the rest inside per-class dissimilarity radii, recurse on leftovers, merge
centers, then refine with alternating assignment/medoid sweeps.

Dissimilarity is taken as delta(i, j) = -s(i, j) throughout; it preserves
every nearest-exemplar decision and keeps the radius test meaningful for
arbitrary similarity inputs.
"""

import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from .engine import ApConfig, ClusteringResult, affinity_propagation
from .simcore import ValidationError, validate_similarity


@dataclass(frozen=True)
class LandmarkPlan:
    landmark_indices: np.ndarray
    sample_seed: int


@dataclass(frozen=True)
class LapConfig:
    num_landmarks: int = 100
    m0: int = 5000           # largest leftover set handed straight to AP
    max_depth: int = 3
    refine_sweeps: int = 30
    seed: int = 0
    inner: ApConfig = field(default_factory=ApConfig)

    def __post_init__(self):
        if self.num_landmarks < 1:
            raise ValidationError("num_landmarks must be positive")
        if self.m0 < 2:
            raise ValidationError("m0 must be >= 2")
        if self.max_depth < 1:
            raise ValidationError("max_depth must be >= 1")
        if self.refine_sweeps < 1:
            raise ValidationError("refine_sweeps must be >= 1")


@dataclass
class LapReport:
    phase_iterations: List[int]   # landmark/leftover AP runs, recursion order
    refine_sweeps: int
    refine_netsims: List[float]   # netsim after each refine sweep
    message_ops: int


def sample_landmarks(n: int, k: int, seed: int) -> LandmarkPlan:
    """k distinct uniform-random indices, deterministic per seed."""
    if not 0 < k < n:
        raise ValidationError(f"landmark count must satisfy 0 < k < n, got k={k}, n={n}")
    rng = np.random.default_rng(seed)
    indices = np.sort(rng.choice(n, size=k, replace=False))
    return LandmarkPlan(landmark_indices=indices, sample_seed=seed)


def class_radii(idx, exemplars, delta) -> np.ndarray:
    """Per-exemplar maximum member dissimilarity (0 for singletons).

    `delta` is the dissimilarity matrix over the clustered set; `idx` and
    `exemplars` index into it.
    """
    exemplars = np.asarray(exemplars, dtype=np.int64)
    idx = np.asarray(idx, dtype=np.int64)
    radii = np.zeros(exemplars.shape[0])
    for j, e in enumerate(exemplars):
        members = np.flatnonzero(idx == e)
        if members.size:
            radii[j] = delta[members, e].max()
    return radii


def embed_points(delta_to_exemplars, radii) -> Tuple[np.ndarray, np.ndarray]:
    """Assign each row to its nearest exemplar column iff strictly inside
    that exemplar's radius.

    Returns (assignment, leftover_rows): assignment holds the exemplar
    column per row, -1 for leftovers. Nearest ties go to the lowest column.
    """
    delta_to_exemplars = np.asarray(delta_to_exemplars, dtype=np.float64)
    radii = np.asarray(radii, dtype=np.float64)
    if delta_to_exemplars.ndim != 2 or delta_to_exemplars.shape[1] != radii.shape[0]:
        raise ValidationError("radii must cover every exemplar column")
    nearest = np.argmin(delta_to_exemplars, axis=1)
    rows = np.arange(delta_to_exemplars.shape[0])
    inside = delta_to_exemplars[rows, nearest] < radii[nearest]
    assignment = np.where(inside, nearest, -1)
    return assignment, np.flatnonzero(~inside)


def refine(S, exemplars, max_sweeps: int = 30) -> Tuple[ClusteringResult, List[float]]:
    """Alternating assignment/medoid polish with a fixed exemplar count.

    Each sweep reassigns every point to its most-similar exemplar, then
    replaces each exemplar by the cluster member maximizing the sum of
    similarities from all members. Net similarity is non-decreasing; stops
    when the exemplar set is stable or max_sweeps is reached.
    """
    S = validate_similarity(S)
    exemplars = np.unique(np.asarray(exemplars, dtype=np.int64))
    if exemplars.size == 0:
        raise ValidationError("refine requires a nonempty exemplar set")
    n = S.shape[0]
    netsims = []
    sweeps = 0
    for _ in range(max_sweeps):
        sweeps += 1
        idx = exemplars[np.argmax(S[:, exemplars], axis=1)]
        idx[exemplars] = exemplars
        new_exemplars = []
        for e in exemplars:
            members = np.flatnonzero(idx == e)
            # member column sums include the diagonal, i.e. the candidate's
            # own preference, so this maximizes the cluster's netsim term
            sums = S[np.ix_(members, members)].sum(axis=0)
            new_exemplars.append(int(members[np.argmax(sums)]))
        new_exemplars = np.unique(np.array(new_exemplars, dtype=np.int64))
        idx = new_exemplars[np.argmax(S[:, new_exemplars], axis=1)]
        idx[new_exemplars] = new_exemplars
        netsims.append(float(S[np.arange(n), idx].sum()))
        if np.array_equal(new_exemplars, exemplars):
            exemplars = new_exemplars
            break
        exemplars = new_exemplars

    idx = exemplars[np.argmax(S[:, exemplars], axis=1)]
    idx[exemplars] = exemplars
    mask = np.zeros(n, dtype=bool)
    mask[exemplars] = True
    dpsim = float(S[np.flatnonzero(~mask), idx[~mask]].sum())
    expref = float(np.diag(S)[exemplars].sum())
    result = ClusteringResult(
        idx=idx,
        exemplars=exemplars,
        dpsim=dpsim,
        expref=expref,
        netsim=dpsim + expref,
        iterations=sweeps,
        converged=True,
    )
    return result, netsims


def _cluster_exemplars(S, subset, k, cfg: LapConfig, depth: int, report: LapReport) -> np.ndarray:
    """Return global exemplar indices for the points in `subset`."""
    m = subset.shape[0]
    if m == 1:
        return subset.copy()
    if k >= m or depth >= cfg.max_depth:
        res = affinity_propagation(S[np.ix_(subset, subset)], cfg.inner)
        report.phase_iterations.append(res.iterations)
        report.message_ops += res.message_ops
        return subset[res.exemplars]

    plan = sample_landmarks(m, k, cfg.seed + depth)
    landmarks = subset[plan.landmark_indices]
    rest_mask = np.ones(m, dtype=bool)
    rest_mask[plan.landmark_indices] = False
    rest = subset[rest_mask]

    land_res = affinity_propagation(S[np.ix_(landmarks, landmarks)], cfg.inner)
    report.phase_iterations.append(land_res.iterations)
    report.message_ops += land_res.message_ops
    exemplars = landmarks[land_res.exemplars]

    delta_land = -S[np.ix_(landmarks, landmarks)]
    radii = class_radii(land_res.idx, land_res.exemplars, delta_land)
    _, leftover_rows = embed_points(-S[np.ix_(rest, exemplars)], radii)
    leftovers = rest[leftover_rows]

    if leftovers.size:
        if leftovers.size <= cfg.m0:
            res = affinity_propagation(S[np.ix_(leftovers, leftovers)], cfg.inner)
            report.phase_iterations.append(res.iterations)
            report.message_ops += res.message_ops
            extra = leftovers[res.exemplars]
        else:
            k_next = max(2, math.ceil(k * leftovers.size / m))
            extra = _cluster_exemplars(S, leftovers, k_next, cfg, depth + 1, report)
        exemplars = np.union1d(exemplars, extra)
    return exemplars


def lap_cluster(S, cfg: Optional[LapConfig] = None) -> Tuple[ClusteringResult, LapReport]:
    cfg = cfg or LapConfig()
    S = validate_similarity(S)
    n = S.shape[0]
    if cfg.num_landmarks >= n:
        raise ValidationError(f"num_landmarks must be < n, got {cfg.num_landmarks} for n={n}")
    report = LapReport(phase_iterations=[], refine_sweeps=0, refine_netsims=[], message_ops=0)
    exemplars = _cluster_exemplars(S, np.arange(n), cfg.num_landmarks, cfg, 0, report)
    result, netsims = refine(S, exemplars, cfg.refine_sweeps)
    result.iterations = sum(report.phase_iterations)
    result.message_ops = report.message_ops
    report.refine_sweeps = len(netsims)
    report.refine_netsims = netsims
    return result, report
