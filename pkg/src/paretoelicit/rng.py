"""Deterministic 64-bit RNG used by every randomized component.

SplitMix64 is small enough to implement identically in pure Python and in
the numba simulation kernel, which makes transcripts byte-comparable across
the two engines for the same seed.  It is counter-based, so batch draws
vectorize exactly: ``random_array(m)`` returns the same values as m calls
to ``random()``.
"""

from __future__ import annotations

import numpy as np

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


class SplitMix64:
    """SplitMix64 generator; the same update is mirrored in ``kernel``."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + _GOLDEN) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def randint(self, n: int) -> int:
        """Uniform integer in [0, n). n must be positive."""
        if n <= 0:
            raise ValueError("randint bound must be positive")
        return self.next_u64() % n

    def random(self) -> float:
        """Uniform float in [0, 1)."""
        return self.next_u64() / 2.0**64

    def random_array(self, m: int) -> np.ndarray:
        """m uniform floats in [0, 1); identical to m ``random()`` calls."""
        idx = np.arange(1, m + 1, dtype=np.uint64)
        z = np.uint64(self.state) + idx * np.uint64(_GOLDEN)
        self.state = (self.state + m * _GOLDEN) & _MASK
        z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
        z = z ^ (z >> np.uint64(31))
        return z / 2.0**64

    def getstate(self) -> int:
        return self.state

    def setstate(self, state: int) -> None:
        self.state = state & _MASK


def derive_seed(*parts: int) -> int:
    """Mix integers into a single 64-bit seed (for per-run RNGs)."""
    h = 0x8B72E0F2AE31D473
    for p in parts:
        h ^= (p & _MASK) + _GOLDEN + ((h << 6) & _MASK) + (h >> 2)
        h &= _MASK
        g = SplitMix64(h)
        h = g.next_u64()
    return h
