"""Deterministic synthetic point-cloud generators: random 2D clouds and the
classic 3D manifold test sets (swiss roll, punctured sphere, gaussian,
corner planes, twin peaks)."""

from dataclasses import dataclass

import numpy as np

from .simcore import ValidationError

KINDS = ("random2d", "swiss_roll", "punctured_sphere", "gaussian", "corner_planes", "twin_peaks")

SWISS_ROLL_T_RANGE = (1.5 * np.pi, 4.5 * np.pi)
SWISS_ROLL_HEIGHT = 21.0
PUNCTURED_CAP_COS = np.sqrt(3.0) / 2.0  # removes a 30-degree polar cap
CORNER_FOLD_ANGLE = np.pi / 4.0


@dataclass(frozen=True)
class GenSpec:
    kind: str
    n: int
    seed: int = 0
    noise: float = 0.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValidationError(f"unknown dataset kind {self.kind!r}; choose from {KINDS}")
        if self.n < 1:
            raise ValidationError(f"point count must be >= 1, got {self.n}")
        if self.noise < 0:
            raise ValidationError("noise scale must be nonnegative")


def _random2d(rng, n):
    return rng.random((n, 2))


def _swiss_roll(rng, n):
    t = rng.uniform(*SWISS_ROLL_T_RANGE, size=n)
    h = rng.uniform(0.0, SWISS_ROLL_HEIGHT, size=n)
    return np.column_stack([t * np.cos(t), h, t * np.sin(t)])


def _punctured_sphere(rng, n):
    # area-uniform on the unit sphere minus the north polar cap
    z = rng.uniform(-1.0, PUNCTURED_CAP_COS, size=n)
    phi = rng.uniform(0.0, 2.0 * np.pi, size=n)
    r = np.sqrt(1.0 - z * z)
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


def _gaussian(rng, n):
    return rng.standard_normal((n, 3))


def _corner_planes(rng, n):
    u = rng.uniform(-1.0, 1.0, size=n)
    v = rng.uniform(0.0, 1.0, size=n)
    folded = u < 0.0
    x = np.where(folded, u * np.cos(CORNER_FOLD_ANGLE), u)
    z = np.where(folded, -u * np.sin(CORNER_FOLD_ANGLE), 0.0)
    return np.column_stack([x, v, z])


def _twin_peaks(rng, n):
    u = rng.uniform(-1.0, 1.0, size=n)
    v = rng.uniform(-1.0, 1.0, size=n)
    return np.column_stack([u, v, np.sin(np.pi * u) * np.tanh(3.0 * v)])


_GENERATORS = {
    "random2d": _random2d,
    "swiss_roll": _swiss_roll,
    "punctured_sphere": _punctured_sphere,
    "gaussian": _gaussian,
    "corner_planes": _corner_planes,
    "twin_peaks": _twin_peaks,
}


def generate(spec: GenSpec) -> np.ndarray:
    """Generate the point set for a spec; byte-identical for equal specs."""
    rng = np.random.default_rng(spec.seed)
    points = _GENERATORS[spec.kind](rng, spec.n)
    if spec.noise > 0.0:
        points = points + spec.noise * rng.standard_normal(points.shape)
    return points
