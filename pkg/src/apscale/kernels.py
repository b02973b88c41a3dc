"""Message-update kernels: numba-jitted loops with a pure-numpy fallback.

Backend selection is driven by the APSCALE_BACKEND environment variable:
"numba" (default, falls back to numpy if numba is unavailable) or "numpy".
Both backends are sequential with a fixed reduction order, so a given
backend is fully deterministic.

Each backend provides:
  responsibility_inplace(S, R, A, damping)        -> updates R
  availability_inplace(R, A, damping, decisions)  -> updates A, writes the
      per-row argmax of a+r into `decisions` (ties to the lowest index)
The in-place pair is the hot path; the pure wrappers below back the
functional update operations.
"""

import os

import numpy as np


def _numpy_responsibility_inplace(S, R, A, damping):
    n = S.shape[0]
    AS = A + S
    rows = np.arange(n)
    top = np.argmax(AS, axis=1)
    first = AS[rows, top]
    AS[rows, top] = -np.inf
    second = AS.max(axis=1)
    new = S - first[:, None]
    new[rows, top] = S[rows, top] - second
    R *= damping
    R += (1.0 - damping) * new


def _numpy_availability_inplace(R, A, damping, decisions):
    Rp = np.maximum(R, 0.0)
    np.fill_diagonal(Rp, np.diag(R))
    colsum = Rp.sum(axis=0)
    new = colsum[None, :] - Rp
    diag = np.diag(new).copy()
    np.minimum(new, 0.0, out=new)
    np.fill_diagonal(new, diag)
    A *= damping
    A += (1.0 - damping) * new
    np.argmax(A + R, axis=1, out=decisions)


def _pick_backend():
    requested = os.environ.get("APSCALE_BACKEND", "numba").lower()
    if requested not in ("numba", "numpy"):
        raise ValueError(f"APSCALE_BACKEND must be 'numba' or 'numpy', got {requested!r}")
    if requested == "numpy":
        return "numpy", _numpy_responsibility_inplace, _numpy_availability_inplace

    try:
        from numba import njit
    except ImportError:
        return "numpy", _numpy_responsibility_inplace, _numpy_availability_inplace

    @njit(cache=True)
    def _nb_responsibility_inplace(S, R, A, damping):
        n = S.shape[0]
        for i in range(n):
            m1 = -np.inf
            m2 = -np.inf
            k1 = -1
            for k in range(n):
                v = A[i, k] + S[i, k]
                if v > m1:
                    m2 = m1
                    m1 = v
                    k1 = k
                elif v > m2:
                    m2 = v
            for k in range(n):
                best_other = m2 if k == k1 else m1
                R[i, k] = damping * R[i, k] + (1.0 - damping) * (S[i, k] - best_other)

    @njit(cache=True)
    def _nb_availability_inplace(R, A, damping, decisions):
        # row-major passes; colsum[k] accumulates in increasing-i order
        n = R.shape[0]
        colsum = np.zeros(n)
        for i in range(n):
            for k in range(n):
                if i == k:
                    colsum[k] += R[i, k]
                elif R[i, k] > 0.0:
                    colsum[k] += R[i, k]
        for i in range(n):
            best = -np.inf
            best_k = 0
            for k in range(n):
                if i == k:
                    new = colsum[k] - R[k, k]
                else:
                    new = colsum[k] - (R[i, k] if R[i, k] > 0.0 else 0.0)
                    if new > 0.0:
                        new = 0.0
                a = damping * A[i, k] + (1.0 - damping) * new
                A[i, k] = a
                v = a + R[i, k]
                if v > best:
                    best = v
                    best_k = k
            decisions[i] = best_k

    return "numba", _nb_responsibility_inplace, _nb_availability_inplace


BACKEND, responsibility_inplace, availability_inplace = _pick_backend()


def responsibility_update(S, R, A, damping):
    """Functional responsibility sweep: returns the new R, leaves inputs alone."""
    out = R.copy()
    responsibility_inplace(S, out, A, damping)
    return out


def availability_update(R, A, damping):
    """Functional availability sweep: returns the new A, leaves inputs alone."""
    out = A.copy()
    availability_inplace(R, out, damping, np.empty(R.shape[0], dtype=np.int64))
    return out
