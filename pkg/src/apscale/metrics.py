"""Pair-counting clustering metrics and the exhaustive exemplar-subset oracle."""

from itertools import combinations

import numpy as np

from .engine import ClusteringResult
from .simcore import ValidationError, validate_similarity

BRUTE_FORCE_LIMIT = 20


def _pair_masks(labels):
    labels = np.asarray(labels)
    same = labels[:, None] == labels[None, :]
    triu = np.triu_indices(labels.shape[0], k=1)
    return same[triu]


def association_rates(predicted, truth):
    """(true association rate, false association rate) over unordered pairs.

    tar: fraction of same-truth pairs co-assigned by the prediction (1.0 if
    there are none); far: fraction of different-truth pairs co-assigned
    (0.0 if there are none).
    """
    predicted = np.asarray(predicted)
    truth = np.asarray(truth)
    if predicted.shape != truth.shape or predicted.ndim != 1:
        raise ValidationError("label vectors must be 1D and of equal length")
    if predicted.shape[0] < 2:
        raise ValidationError("association rates need at least 2 points")
    same_pred = _pair_masks(predicted)
    same_true = _pair_masks(truth)
    n_same = int(same_true.sum())
    n_diff = same_true.size - n_same
    tar = float(same_pred[same_true].sum() / n_same) if n_same else 1.0
    far = float(same_pred[~same_true].sum() / n_diff) if n_diff else 0.0
    return tar, far


def agreement(predicted, reference):
    """Fraction of unordered pairs on which two clusterings agree
    (co-clustered in both or separated in both). Invariant to relabeling."""
    predicted = np.asarray(predicted)
    reference = np.asarray(reference)
    if predicted.shape != reference.shape or predicted.ndim != 1:
        raise ValidationError("label vectors must be 1D and of equal length")
    if predicted.shape[0] < 2:
        return 1.0
    a = _pair_masks(predicted)
    b = _pair_masks(reference)
    return float((a == b).sum() / a.size)


def subset_netsim(S, exemplars):
    """Net similarity of an exemplar subset with greedy best-exemplar
    assignment: non-exemplar similarities plus exemplar preferences."""
    exemplars = np.asarray(exemplars, dtype=np.int64)
    cols = S[:, exemplars]
    best = cols.max(axis=1)
    mask = np.zeros(S.shape[0], dtype=bool)
    mask[exemplars] = True
    return float(best[~mask].sum() + np.diag(S)[exemplars].sum())


def brute_force_optimum(S) -> ClusteringResult:
    """Enumerate every nonempty exemplar subset and return the best.

    Ties go to the lexicographically smallest subset. Refuses n > 20.
    """
    S = validate_similarity(S)
    n = S.shape[0]
    if n > BRUTE_FORCE_LIMIT:
        raise ValidationError(f"brute-force oracle limited to n <= {BRUTE_FORCE_LIMIT}, got {n}")
    best_subset = None
    best_netsim = -np.inf
    for size in range(1, n + 1):
        for subset in combinations(range(n), size):
            value = subset_netsim(S, subset)
            if value > best_netsim or (value == best_netsim and subset < best_subset):
                best_netsim = value
                best_subset = subset
    exemplars = np.array(best_subset, dtype=np.int64)
    idx = exemplars[np.argmax(S[:, exemplars], axis=1)]
    idx[exemplars] = exemplars
    mask = np.zeros(n, dtype=bool)
    mask[exemplars] = True
    dpsim = float(S[np.flatnonzero(~mask), idx[~mask]].sum())
    expref = float(np.diag(S)[exemplars].sum())
    return ClusteringResult(
        idx=idx,
        exemplars=exemplars,
        dpsim=dpsim,
        expref=expref,
        netsim=dpsim + expref,
        iterations=0,
        converged=True,
    )
