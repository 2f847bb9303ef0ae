"""SplitMix64 and a Fisher-Yates shuffle driven by it.

Used for readout shuffling so that fixtures can be regenerated bit-exactly
from a seed in any language:

    state += 0x9E3779B97F4A7C15
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    return z ^ (z >> 31)                       (all arithmetic mod 2^64)

shuffle: for i from len-1 down to 1, j = next() mod (i+1), swap items i, j.
"""
from __future__ import annotations

from typing import MutableSequence

MASK64 = (1 << 64) - 1
ALGORITHM = "splitmix64-fisher-yates"


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)


def shuffle(items: MutableSequence, seed: int) -> None:
    rng = SplitMix64(seed)
    for i in range(len(items) - 1, 0, -1):
        j = rng.next() % (i + 1)
        items[i], items[j] = items[j], items[i]
