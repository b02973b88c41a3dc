"""Similarity-matrix construction, preference installation, and CSV I/O.

Similarity matrices are plain float64 numpy arrays: off-diagonal entries
hold pairwise similarities s(i, k) (larger = more similar), the diagonal
holds per-point preferences once installed.
"""

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np


class ValidationError(ValueError):
    """Raised on malformed inputs (non-finite data, shape mismatches)."""


def as_point_set(points) -> np.ndarray:
    """Coerce to an (n, d) float64 array and validate finiteness."""
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[0] == 0 or pts.shape[1] == 0:
        raise ValidationError(f"point set must be a nonempty 2D array, got shape {pts.shape}")
    if not np.all(np.isfinite(pts)):
        raise ValidationError("point set contains non-finite coordinates")
    return pts


def neg_sq_euclidean(points) -> np.ndarray:
    """Pairwise negative squared Euclidean similarities.

    The diagonal is left at 0 until preferences are installed.
    """
    pts = as_point_set(points)
    # ||xi - xk||^2 expanded via the Gram matrix would lose symmetry to
    # rounding; compute from explicit differences instead.
    diff = pts[:, None, :] - pts[None, :, :]
    S = -np.einsum("ijd,ijd->ij", diff, diff)
    np.fill_diagonal(S, 0.0)
    return S


def validate_similarity(S) -> np.ndarray:
    S = np.asarray(S, dtype=np.float64)
    if S.ndim != 2 or S.shape[0] != S.shape[1] or S.shape[0] == 0:
        raise ValidationError(f"similarity matrix must be square and nonempty, got shape {S.shape}")
    if not np.all(np.isfinite(S)):
        raise ValidationError("similarity matrix contains non-finite entries")
    return S


@dataclass(frozen=True)
class PreferenceSpec:
    """Diagonal preference strategy: median of off-diagonal similarities,
    a uniform value, or an explicit per-point vector."""

    strategy: str = "median"
    value: float = 0.0
    vector: Optional[np.ndarray] = None

    @classmethod
    def median(cls) -> "PreferenceSpec":
        return cls("median")

    @classmethod
    def uniform(cls, value: float) -> "PreferenceSpec":
        return cls("uniform", value=float(value))

    @classmethod
    def explicit(cls, vector: Sequence[float]) -> "PreferenceSpec":
        return cls("explicit", vector=np.asarray(vector, dtype=np.float64))


def median_preference(S) -> float:
    """Median of the n(n-1) off-diagonal entries (even count: mean of middle two)."""
    S = validate_similarity(S)
    n = S.shape[0]
    if n == 1:
        return 0.0
    off = S[~np.eye(n, dtype=bool)]
    return float(np.median(off))


def install_preferences(S, spec: PreferenceSpec) -> np.ndarray:
    """Return a copy of S with the diagonal overwritten per the spec.

    Only the diagonal changes; off-diagonal entries are bit-identical.
    """
    S = validate_similarity(S)
    n = S.shape[0]
    out = S.copy()
    if spec.strategy == "median":
        np.fill_diagonal(out, median_preference(S))
    elif spec.strategy == "uniform":
        if not np.isfinite(spec.value):
            raise ValidationError("uniform preference must be finite")
        np.fill_diagonal(out, spec.value)
    elif spec.strategy == "explicit":
        vec = np.asarray(spec.vector, dtype=np.float64)
        if vec.shape != (n,):
            raise ValidationError(f"explicit preference vector has length {vec.shape}, expected ({n},)")
        if not np.all(np.isfinite(vec)):
            raise ValidationError("explicit preference vector contains non-finite values")
        np.fill_diagonal(out, vec)
    else:
        raise ValidationError(f"unknown preference strategy {spec.strategy!r}")
    return out


# CSV formats: points are one comma-separated row per point; similarity
# matrices are dense n x n, one row per line. 17 significant digits makes
# the float64 round trip lossless.
_FMT = "%.17g"


def save_points(path, points) -> None:
    np.savetxt(path, as_point_set(points), fmt=_FMT, delimiter=",")


def load_points(path) -> np.ndarray:
    try:
        pts = np.loadtxt(path, delimiter=",", ndmin=2)
    except ValueError as exc:
        raise ValidationError(f"bad point CSV {path}: {exc}") from exc
    return as_point_set(pts)


def save_similarity(path, S) -> None:
    np.savetxt(path, validate_similarity(S), fmt=_FMT, delimiter=",")


def load_similarity(path) -> np.ndarray:
    try:
        S = np.loadtxt(path, delimiter=",", ndmin=2)
    except ValueError as exc:
        raise ValidationError(f"bad similarity CSV {path}: {exc}") from exc
    return validate_similarity(S)


def save_labels(path, labels) -> None:
    np.savetxt(path, np.asarray(labels, dtype=np.int64), fmt="%d")


def load_labels(path) -> np.ndarray:
    try:
        labels = np.loadtxt(path, dtype=np.int64, ndmin=1)
    except ValueError as exc:
        raise ValidationError(f"bad label CSV {path}: {exc}") from exc
    return labels
