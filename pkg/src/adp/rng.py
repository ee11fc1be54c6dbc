"""Deterministic random numbers for reproducible experiments.

Noise realizations and network inputs must be bit-reproducible from a single
integer seed, independent of platform and library version (numpy does not
promise stream stability across major releases, and the same seeds should
reproduce in a port of this code).  We therefore use a fixed, documented
generator: SplitMix64 for the integer stream and the Box-Muller transform
for normal deviates.

Reference: Steele, Lea, Flood, "Fast splittable pseudorandom number
generators" (the SplitMix64 finalizer constants below are the standard ones).
"""

from __future__ import annotations

import math

import numpy as np

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_TWO53 = float(1 << 53)


class SplitMix64:
    """64-bit SplitMix generator with Box-Muller normals.

    The uniform stream is ``(next_uint64() >> 11 + 1) / 2^53``, which lies in
    (0, 1] so that ``log(u)`` is always finite in the Box-Muller step.
    """

    def __init__(self, seed: int):
        self._state = seed & _MASK64
        self._spare: float | None = None

    def next_uint64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def uniform(self) -> float:
        """Uniform deviate in (0, 1]."""
        return ((self.next_uint64() >> 11) + 1) / _TWO53

    def normal(self) -> float:
        """Standard normal deviate (Box-Muller pair, one value cached)."""
        if self._spare is not None:
            z = self._spare
            self._spare = None
            return z
        u1 = self.uniform()
        u2 = self.uniform()
        r = math.sqrt(-2.0 * math.log(u1))
        theta = 2.0 * math.pi * u2
        self._spare = r * math.sin(theta)
        return r * math.cos(theta)

    def normals(self, n: int) -> np.ndarray:
        """Array of ``n`` standard normal deviates."""
        return np.array([self.normal() for _ in range(n)], dtype=np.float64)
