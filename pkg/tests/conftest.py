import sys
from pathlib import Path

import numpy as np
import pytest

from efs import SignalSet, validate_signals

sys.path.insert(0, str(Path(__file__).parent))  # make `oracles` importable


def random_signals(
    seed: int,
    n: int | None = None,
    d: int | None = None,
    clustered: bool = False,
) -> SignalSet:
    """Seeded random SignalSet; `clustered` draws frames around a few centroids
    so pairwise cosines spread over a wide range."""
    rng = np.random.default_rng(seed)
    if n is None:
        n = int(rng.integers(1, 65))
    if d is None:
        d = int(rng.integers(2, 17))
    if clustered and n >= 2:
        n_c = int(rng.integers(1, max(2, n // 4) + 1))
        centroids = rng.normal(size=(n_c, d))
        owner = rng.integers(0, n_c, size=n)
        emb = centroids[owner] + 0.3 * rng.normal(size=(n, d))
    else:
        emb = rng.normal(size=(n, d))
    emb /= np.linalg.norm(emb, axis=1, keepdims=True)
    rel = rng.normal(size=n)
    return validate_signals(emb, rel)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
