"""SplitMix64 generator.

Used instead of :mod:`random` so that the pure-Python search and the compiled
kernel consume an identical random stream and therefore produce identical runs.
"""
from __future__ import annotations

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


class SplitMix64:
    __slots__ = ("state",)

    def __init__(self, seed: int = 0):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = z = (self.state + GOLDEN) & MASK64
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def randrange(self, k: int) -> int:
        """Integer in ``[0, k)``; modulo bias is below ``k / 2**64``."""
        if k <= 0:
            raise ValueError("randrange needs k >= 1")
        return self.next_u64() % k

    def random(self) -> float:
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))
