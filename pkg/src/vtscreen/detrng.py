"""Deterministic random primitives shared by the split and tie-break logic.

Reproducibility across runs, platforms, and reimplementations requires
naming the exact procedures, so this module pins them down:

* SplitMix64 as the 64-bit generator,
* FNV-1a (64-bit) for hashing string keys into seeds,
* Fisher-Yates driven by SplitMix64 for shuffles,
* modulo reduction for bounded draws.

Nothing here is cryptographic; the only goal is that the same (seed, key)
always yields the same outcome everywhere.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3


def fnv1a64(data: bytes) -> int:
    """64-bit FNV-1a hash of ``data``."""
    h = _FNV_OFFSET
    for byte in data:
        h ^= byte
        h = (h * _FNV_PRIME) & _MASK64
    return h


class SplitMix64:
    """SplitMix64 generator (Steele, Lea, Flood mixing constants)."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Draw an integer in [0, n) by modulo reduction (n must be > 0)."""
        if n <= 0:
            raise ValueError("below() requires n > 0")
        return self.next_u64() % n


def keyed_rng(seed: int, key: str) -> SplitMix64:
    """Generator for one (seed, key) pair, independent of processing order."""
    return SplitMix64((seed & _MASK64) ^ fnv1a64(key.encode("utf-8")))


def fisher_yates(items: list, rng: SplitMix64) -> None:
    """In-place Fisher-Yates shuffle using ``rng.below`` for index draws."""
    for i in range(len(items) - 1, 0, -1):
        j = rng.below(i + 1)
        items[i], items[j] = items[j], items[i]
