"""Portable seeded generator for environment placement.

xorshift64* (Vigna, 2016) with the state initialised by one splitmix64 step,
so identical seeds give identical streams in any language with 64-bit
unsigned arithmetic:

    state = splitmix64(seed)            # seed taken modulo 2**64
    if state == 0: state = 0x9E3779B97F4A7C15
    next():
        x ^= x >> 12; x ^= x << 25; x ^= x >> 27     (mod 2**64)
        return (x * 0x2545F4914F6CDD1D) mod 2**64
    uniform() = (next() >> 11) * 2**-53                in [0, 1)

splitmix64(z):
    z = (z + 0x9E3779B97F4A7C15) mod 2**64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2**64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) mod 2**64
    return z ^ (z >> 31)
"""
from __future__ import annotations

MASK64 = 0xFFFFFFFFFFFFFFFF
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
XORSHIFT_MULT = 0x2545F4914F6CDD1D


def splitmix64(z: int) -> int:
    z = (z + GOLDEN_GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class XorShift64Star:
    """xorshift64* stream; see the module docstring for the exact recipe."""

    def __init__(self, seed: int) -> None:
        state = splitmix64(int(seed) & MASK64)
        self.state = state or GOLDEN_GAMMA

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self.state = x
        return (x * XORSHIFT_MULT) & MASK64

    def uniform(self, low: float = 0.0, high: float = 1.0) -> float:
        u = (self.next_u64() >> 11) * (1.0 / 9007199254740992.0)
        return low + (high - low) * u
