import numpy as np
import pytest

from apscale import GenSpec, ValidationError, generate
from apscale.datasets import KINDS, SWISS_ROLL_HEIGHT, SWISS_ROLL_T_RANGE


@pytest.mark.parametrize("kind", KINDS)
def test_shape_and_determinism(kind):
    spec = GenSpec(kind, 50, seed=3)
    pts = generate(spec)
    assert pts.shape == (50, 2 if kind == "random2d" else 3)
    assert np.array_equal(pts, generate(spec))
    assert np.all(np.isfinite(pts))


def test_different_seeds_differ():
    a = generate(GenSpec("random2d", 20, seed=0))
    b = generate(GenSpec("random2d", 20, seed=1))
    assert not np.array_equal(a, b)


def test_swiss_roll_latent_identity():
    pts = generate(GenSpec("swiss_roll", 500, seed=1))
    t = np.sqrt(pts[:, 0] ** 2 + pts[:, 2] ** 2)
    lo, hi = SWISS_ROLL_T_RANGE
    assert np.all(t >= lo - 1e-9)
    assert np.all(t <= hi + 1e-9)
    assert np.all((pts[:, 1] >= 0) & (pts[:, 1] <= SWISS_ROLL_HEIGHT))
    assert np.allclose(pts[:, 0] ** 2 + pts[:, 2] ** 2, t ** 2, atol=1e-9)


def test_punctured_sphere_on_sphere_minus_cap():
    pts = generate(GenSpec("punctured_sphere", 400, seed=2))
    norms = np.linalg.norm(pts, axis=1)
    assert np.allclose(norms, 1.0, atol=1e-9)
    assert np.all(pts[:, 2] <= np.sqrt(3.0) / 2.0 + 1e-12)


def test_gaussian_mean():
    pts = generate(GenSpec("gaussian", 100_000, seed=5))
    bound = 4.0 / np.sqrt(100_000)
    assert np.all(np.abs(pts.mean(axis=0)) < bound)


def test_twin_peaks_height_identity():
    pts = generate(GenSpec("twin_peaks", 300, seed=4))
    assert np.allclose(pts[:, 2], np.sin(np.pi * pts[:, 0]) * np.tanh(3.0 * pts[:, 1]), atol=1e-12)


def test_corner_planes_fold():
    pts = generate(GenSpec("corner_planes", 300, seed=6))
    flat = pts[pts[:, 2] == 0.0]
    folded = pts[pts[:, 2] > 0.0]
    assert len(flat) and len(folded)
    # folded half-plane keeps the 45-degree dihedral: z = -x (since x = u cos a, z = -u sin a)
    assert np.allclose(folded[:, 2], -folded[:, 0], atol=1e-12)


def test_noise_changes_points():
    clean = generate(GenSpec("swiss_roll", 50, seed=1))
    noisy = generate(GenSpec("swiss_roll", 50, seed=1, noise=0.1))
    assert not np.array_equal(clean, noisy)
    assert np.allclose(clean, noisy, atol=1.0)


def test_validation():
    with pytest.raises(ValidationError):
        GenSpec("random2d", 0)
    with pytest.raises(ValidationError):
        GenSpec("mystery", 10)
    with pytest.raises(ValidationError):
        GenSpec("random2d", 10, noise=-1.0)
