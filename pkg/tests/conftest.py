import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from apscale import PreferenceSpec, install_preferences, neg_sq_euclidean
from apscale.datasets import GenSpec, generate


def random_similarity(n, seed, low=-1.0, high=0.0):
    """Random similarity matrix with median preferences, entries in [low, high)."""
    rng = np.random.default_rng(seed)
    S = rng.uniform(low, high, size=(n, n))
    return install_preferences(S, PreferenceSpec.median())


def points_similarity(n, seed, kind="random2d", pref=None):
    S = neg_sq_euclidean(generate(GenSpec(kind, n, seed=seed)))
    spec = PreferenceSpec.median() if pref is None else PreferenceSpec.uniform(pref)
    return install_preferences(S, spec)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
