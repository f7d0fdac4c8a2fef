"""Seeded, portable pseudo-random number generator.

The generator is xorshift64* (Marsaglia xorshift with a multiplicative
output scramble), seeded through one round of splitmix64 so that any
64-bit seed, including 0, yields a valid nonzero state.  All arithmetic
is on 64-bit unsigned integers, so the stream is reproducible across
platforms and languages.

Reference stream (first three raw outputs):

    seed 42 -> 3580622183945639842, 10378725325292465923, 8967075514996744559
    seed 0  -> 8916199331640804048, 16032783972208265725, 12954103179475586193

Uniform doubles take the top 53 bits of each raw output; Gaussian
variates use the Box-Muller transform on consecutive uniforms.
"""

from __future__ import annotations

import math

import numpy as np

_MASK64 = (1 << 64) - 1
_STAR = 0x2545F4914F6CDD1D


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


class Xorshift64Star:
    """Deterministic RNG; one instance per training run, never shared."""

    def __init__(self, seed: int):
        state = _splitmix64(seed & _MASK64)
        if state == 0:
            state = _STAR
        self._state = state
        self._gauss_cache: float | None = None

    def next_uint64(self) -> int:
        x = self._state
        x ^= (x >> 12)
        x ^= (x << 25) & _MASK64
        x ^= (x >> 27)
        self._state = x
        return (x * _STAR) & _MASK64

    def random(self) -> float:
        """Uniform double in [0, 1)."""
        return (self.next_uint64() >> 11) * (2.0 ** -53)

    def normal(self, mean: float = 0.0, std: float = 1.0) -> float:
        """Gaussian variate via Box-Muller; pairs are cached."""
        if self._gauss_cache is not None:
            z = self._gauss_cache
            self._gauss_cache = None
        else:
            u1 = 1.0 - self.random()  # (0, 1], keeps log() finite
            u2 = self.random()
            r = math.sqrt(-2.0 * math.log(u1))
            z = r * math.cos(2.0 * math.pi * u2)
            self._gauss_cache = r * math.sin(2.0 * math.pi * u2)
        return mean + std * z

    def normal_array(self, shape: tuple[int, ...], std: float = 1.0) -> np.ndarray:
        """Array of Gaussians, filled in row-major draw order."""
        out = np.empty(shape, dtype=np.float64)
        flat = out.reshape(-1)
        for i in range(flat.size):
            flat[i] = self.normal(0.0, std)
        return out

    def bernoulli_array(self, probs: np.ndarray) -> np.ndarray:
        """0/1 samples, one uniform per entry in row-major order."""
        p = np.asarray(probs, dtype=np.float64)
        out = np.empty(p.shape, dtype=np.float64)
        flat_p = p.reshape(-1)
        flat_out = out.reshape(-1)
        for i in range(flat_p.size):
            flat_out[i] = 1.0 if self.random() < flat_p[i] else 0.0
        return out
