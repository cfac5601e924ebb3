"""Deterministic pseudo-random source shared by every generator.

The generator is xorshift64* (Vigna, "An experimental exploration of
Marsaglia's xorshift generators, scrambled", 2016):

    x ^= x >> 12
    x ^= x << 25
    x ^= x >> 27
    out = x * 0x2545F4914F6CDD1D   (mod 2**64)

Seeds are passed once through SplitMix64 so that neighbouring seeds
(1, 2, 3, ...) start from unrelated states. A zero state is replaced by
the golden-ratio constant, so the recurrence never sticks at zero.

Floats are ``(out >> 11) / 2**53``: exact in IEEE doubles, identical on
every platform. Integers are derived from those floats, never from the
raw word, so a stream mixing both kinds of draws is still reproducible.
"""

from __future__ import annotations

import math

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
XORSHIFT_MULT = 0x2545F4914F6CDD1D
_SM_MIX1 = 0xBF58476D1CE4E5B9
_SM_MIX2 = 0x94D049BB133111EB
_TWO_POW_53 = float(1 << 53)


class InvalidRangeError(ValueError):
    pass


def splitmix64(z: int) -> int:
    z = (z + GOLDEN) & MASK64
    z = ((z ^ (z >> 30)) * _SM_MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _SM_MIX2) & MASK64
    return z ^ (z >> 31)


def derive_seed(seed: int, stream: int) -> int:
    """Seed for an independent parallel stream: ``seed XOR stream*GOLDEN``."""
    return (seed ^ ((stream * GOLDEN) & MASK64)) & MASK64


class Rng:
    """xorshift64* state. Not shared between generators; pass it explicitly."""

    __slots__ = ("seed", "state")

    def __init__(self, seed: int = 0):
        if seed < 0:
            raise ValueError("seed must be a non-negative 64-bit integer")
        self.seed = seed & MASK64
        state = splitmix64(self.seed)
        self.state = state if state else GOLDEN

    def __repr__(self) -> str:
        return f"Rng(seed={self.seed}, state=0x{self.state:016x})"

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self.state = x
        return (x * XORSHIFT_MULT) & MASK64

    def next_unit(self) -> float:
        """Uniform real in [0, 1)."""
        return (self.next_u64() >> 11) / _TWO_POW_53

    def next_int(self, lo: int, hi: int) -> int:
        """Uniform integer in the inclusive range [lo, hi]."""
        if lo > hi:
            raise InvalidRangeError(f"empty range: lo={lo} > hi={hi}")
        span = hi - lo + 1
        return lo + min(int(math.floor(self.next_unit() * span)), span - 1)

    def uniform(self, a: float, b: float) -> float:
        return a + (b - a) * self.next_unit()

    def choice(self, items):
        if not items:
            raise IndexError("cannot choose from an empty sequence")
        return items[self.next_int(0, len(items) - 1)]

    def fork(self, stream: int) -> "Rng":
        """Independent generator for parallel work, derived from the original seed."""
        return Rng(derive_seed(self.seed, stream))
