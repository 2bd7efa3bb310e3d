"""Deterministic pseudo-random numbers for scenario generation.

SplitMix64 (Steele, Lea & Flood 2014; the generator behind Java's
SplittableRandom) is small enough to restate exactly, which keeps generated
instances bit-identical across languages and library versions:

    state  = (state + 0x9E3779B97F4A7C15) mod 2^64
    z      = state
    z      = (z XOR (z >> 30)) * 0xBF58476D1CE4E5B9   mod 2^64
    z      = (z XOR (z >> 27)) * 0x94D049BB133111EB   mod 2^64
    output = z XOR (z >> 31)

Doubles take the top 53 bits: (output >> 11) * 2^-53, uniform in [0, 1).
Bounded integers use output mod n (the modulo bias at n << 2^64 is
irrelevant here and the rule is trivially portable).
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """SplitMix64 stream seeded with a 64-bit integer."""

    __slots__ = ("_state",)

    def __init__(self, seed):
        self._state = seed & _MASK

    def next_u64(self):
        self._state = (self._state + _GAMMA) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK
        return z ^ (z >> 31)

    def random(self):
        """Uniform double in [0, 1)."""
        return (self.next_u64() >> 11) * 2.0**-53

    def uniform(self, high):
        """Uniform double in [0, high)."""
        return high * self.random()

    def randrange(self, n):
        """Uniform integer in [0, n)."""
        if n <= 0:
            raise ValueError("randrange bound must be positive")
        return self.next_u64() % n

    def sample_indices(self, population, count):
        """First ``count`` entries of a partial Fisher-Yates shuffle."""
        if count > len(population):
            raise ValueError("sample larger than population")
        pool = list(population)
        for i in range(count):
            j = i + self.randrange(len(pool) - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:count]
