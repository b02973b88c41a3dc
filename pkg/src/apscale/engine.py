"""Core affinity propagation: damped responsibility/availability message
passing, stable-decision termination, exemplar extraction, and similarity
accounting."""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import kernels
from .simcore import ValidationError, validate_similarity


@dataclass
class MessageState:
    """Paired responsibility and availability matrices."""

    R: np.ndarray
    A: np.ndarray

    @classmethod
    def zeros(cls, n: int) -> "MessageState":
        return cls(np.zeros((n, n)), np.zeros((n, n)))


@dataclass(frozen=True)
class ApConfig:
    damping: float = 0.5
    max_iter: int = 1000
    convits: int = 50
    jitter: float = 0.0
    jitter_seed: int = 0

    def __post_init__(self):
        if not (0.5 <= self.damping < 1.0):
            raise ValidationError(f"damping must be in [0.5, 1), got {self.damping}")
        if self.max_iter <= 0 or self.convits <= 0:
            raise ValidationError("max_iter and convits must be positive")
        if self.convits >= self.max_iter:
            raise ValidationError("convits must be < max_iter")
        if self.jitter < 0:
            raise ValidationError("jitter must be nonnegative")


@dataclass
class ClusteringResult:
    idx: np.ndarray          # per-point exemplar index
    exemplars: np.ndarray    # sorted exemplar indices
    dpsim: float
    expref: float
    netsim: float
    iterations: int
    converged: bool
    # message-update element operations spent producing this result
    message_ops: int = 0
    extra: dict = field(default_factory=dict)


def _check_state(S, state: MessageState):
    n = S.shape[0]
    if state.R.shape != (n, n) or state.A.shape != (n, n):
        raise ValidationError(
            f"message state shapes {state.R.shape}/{state.A.shape} do not match similarity {S.shape}"
        )


def update_responsibilities(S, state: MessageState, damping: float) -> MessageState:
    """One damped sweep of the responsibility rule; availabilities unchanged."""
    S = validate_similarity(S)
    _check_state(S, state)
    R = kernels.responsibility_update(S, state.R, state.A, damping)
    return MessageState(R, state.A)


def update_availabilities(state: MessageState, damping: float) -> MessageState:
    """One damped sweep of the availability rules; responsibilities unchanged."""
    if state.R.shape != state.A.shape:
        raise ValidationError("responsibility/availability shape mismatch")
    A = kernels.availability_update(state.R, state.A, damping)
    return MessageState(state.R, A)


def _decisions(state: MessageState) -> np.ndarray:
    # argmax ties resolve to the lowest index
    return np.argmax(state.A + state.R, axis=1)


def extract_result(S, state: MessageState, iterations: int = 0,
                   converged: bool = False, message_ops: int = 0) -> ClusteringResult:
    """Exemplars from the self-argmax of a+r; non-exemplars assigned to their
    most-similar exemplar so the configuration is always valid."""
    S = validate_similarity(S)
    _check_state(S, state)
    n = S.shape[0]
    dec = _decisions(state)
    exemplars = np.flatnonzero(dec == np.arange(n))
    if exemplars.size == 0:
        # mid-oscillation states can self-select nobody; fall back to the
        # single best candidate
        diag = np.diag(state.A) + np.diag(state.R)
        exemplars = np.array([int(np.argmax(diag))])
    idx = exemplars[np.argmax(S[:, exemplars], axis=1)]
    idx[exemplars] = exemplars
    non_ex = np.ones(n, dtype=bool)
    non_ex[exemplars] = False
    dpsim = float(S[np.flatnonzero(non_ex), idx[non_ex]].sum())
    expref = float(np.diag(S)[exemplars].sum())
    return ClusteringResult(
        idx=idx,
        exemplars=exemplars,
        dpsim=dpsim,
        expref=expref,
        netsim=dpsim + expref,
        iterations=iterations,
        converged=converged,
        message_ops=message_ops,
    )


def energy(S, idx) -> float:
    """Negated net similarity of a valid configuration (diagonal = preferences)."""
    S = validate_similarity(S)
    idx = np.asarray(idx, dtype=np.int64)
    n = S.shape[0]
    if idx.shape != (n,) or idx.min() < 0 or idx.max() >= n:
        raise ValidationError("assignment vector does not index the similarity matrix")
    if not np.array_equal(idx[idx], idx):
        raise ValidationError("invalid configuration: an assigned exemplar is not self-assigned")
    return float(-S[np.arange(n), idx].sum())


def _apply_jitter(S, cfg: ApConfig) -> np.ndarray:
    if cfg.jitter == 0.0:
        return S
    rng = np.random.default_rng(cfg.jitter_seed)
    noise = rng.random((S.shape[0], S.shape[0]))
    scale = cfg.jitter * (S.max() - S.min())
    return S + scale * (noise + noise.T) / 2.0


def run_messages(S, cfg: ApConfig, warm_A: Optional[np.ndarray] = None,
                 trace: Optional[list] = None):
    """Iterate the damped updates until decisions are stable for `convits`
    consecutive iterations or `max_iter` is hit.

    Returns (state, iterations, converged, message_ops). `message_ops`
    counts touched matrix elements across both update sweeps. When `trace`
    is a list, the netsim of the running decisions is appended per iteration.
    """
    S = validate_similarity(S)
    n = S.shape[0]
    S = _apply_jitter(S, cfg)
    state = MessageState.zeros(n)
    if warm_A is not None:
        warm_A = np.asarray(warm_A, dtype=np.float64)
        if warm_A.shape != (n, n) or not np.all(np.isfinite(warm_A)):
            raise ValidationError("warm-start availability matrix must be finite n x n")
        state.A = warm_A.copy()
    if n == 1:
        return state, 0, True, 0

    ops = 0
    stable = 0
    last = None
    iterations = 0
    converged = False
    dec = np.empty(n, dtype=np.int64)
    for it in range(cfg.max_iter):
        # a warm start carries availabilities but no previous responsibilities,
        # so its first responsibility sweep applies the plain rule undamped
        r_damping = 0.0 if (it == 0 and warm_A is not None) else cfg.damping
        kernels.responsibility_inplace(S, state.R, state.A, r_damping)
        kernels.availability_inplace(state.R, state.A, cfg.damping, dec)
        iterations += 1
        ops += 2 * n * n
        if trace is not None:
            trace.append(extract_result(S, state).netsim)
        if last is not None and np.array_equal(dec, last):
            stable += 1
        else:
            stable = 1
            last = dec.copy()
        if stable >= cfg.convits:
            converged = True
            break
    return state, iterations, converged, ops


def affinity_propagation(S, cfg: Optional[ApConfig] = None,
                         warm_A: Optional[np.ndarray] = None,
                         trace: Optional[list] = None) -> ClusteringResult:
    """Full AP run: zero (or warm-started) availabilities, damped message
    passing, exemplar extraction."""
    cfg = cfg or ApConfig()
    state, iterations, converged, ops = run_messages(S, cfg, warm_A, trace)
    return extract_result(S, state, iterations, converged, ops)
