"""Reproducible random streams.

Every stream is a Philox counter-based generator keyed by the user seed plus
an optional tuple of integer keys (worker index, purpose, ...).  Two streams
with different keys never share draws, whatever order they are consumed in.
"""

from __future__ import annotations

import numpy as np

__all__ = ["make_rng", "exponential"]


def make_rng(seed: int, *keys: int) -> np.random.Generator:
    if seed is None:
        raise ValueError("an explicit integer seed is required")
    entropy = [int(seed) & (2**64 - 1), *(int(k) for k in keys)]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))


def exponential(rng: np.random.Generator, size=None, rate=1.0) -> np.ndarray:
    """Exponential draws by inversion, density ``rate * exp(-rate * t)``."""
    u = rng.random(size)
    return -np.log1p(-u) / rate
