"""Deterministic random number generation.

The generator is xoshiro256** (Blackman/Vigna) seeded through SplitMix64.
Both algorithms are frozen here: a given 64-bit seed yields the identical
stream in every release and on every platform. Integer sampling uses
rejection, never plain modulo, so draws are exactly uniform. Floats come
from the top 53 bits and are only used where a real-valued threshold is
part of an operator's definition.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_TWO64 = 1 << 64
_INV_2_53 = 2.0 ** -53


class Xoshiro256StarStar:
    """xoshiro256** with SplitMix64 seed expansion."""

    __slots__ = ("_s0", "_s1", "_s2", "_s3")

    def __init__(self, seed: int):
        state = seed & _MASK64
        words = []
        for _ in range(4):
            state = (state + 0x9E3779B97F4A7C15) & _MASK64
            z = state
            z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
            z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
            words.append(z ^ (z >> 31))
        if not any(words):
            # xoshiro requires a nonzero state; unreachable for SplitMix64
            # expansions of real seeds, kept as a guard
            words[0] = 1
        self._s0, self._s1, self._s2, self._s3 = words

    def next_u64(self) -> int:
        """Next raw 64-bit output."""
        s0, s1, s2, s3 = self._s0, self._s1, self._s2, self._s3
        x = (s1 * 5) & _MASK64
        result = (((x << 7 | x >> 57) & _MASK64) * 9) & _MASK64
        t = (s1 << 17) & _MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        self._s0, self._s1, self._s2 = s0, s1, s2
        self._s3 = (s3 << 45 | s3 >> 19) & _MASK64
        return result

    def randbelow(self, bound: int) -> int:
        """Uniform integer in [0, bound) by rejection (no modulo bias).

        bound == 1 returns 0 without consuming a draw.
        """
        if bound <= 0:
            raise ValueError(f"bound must be positive, got {bound}")
        if bound == 1:
            return 0
        limit = _TWO64 - (_TWO64 % bound)
        u = self.next_u64()
        while u >= limit:
            u = self.next_u64()
        return u % bound

    def uniform(self) -> float:
        """Uniform float in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * _INV_2_53

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle."""
        randbelow = self.randbelow
        for i in range(len(items) - 1, 0, -1):
            j = randbelow(i + 1)
            items[i], items[j] = items[j], items[i]
