"""Deterministic random streams for structure generation.

The generator is SplitMix64 (Steele, Lea & Flood 2014): a 64-bit counter
advanced by the golden-gamma constant, finalized by two xor-shift
multiplies.  It is tiny, fast, platform independent, and trivially
reimplemented in C, which is exactly what the compiled kernel does; the
two implementations must stay bit-identical (see tests/test_rng.py).

Every (mechanism, length, token) cell of a simulation derives its own
stream seed, so work can be scheduled in any order, on any number of
workers, without changing a single draw.
"""
from __future__ import annotations

from dataclasses import dataclass

_MASK = 0xFFFFFFFFFFFFFFFF
_GAMMA = 0x9E3779B97F4A7C15


def mix64(x: int) -> int:
    """SplitMix64 finalizer: avalanche a 64-bit value."""
    x &= _MASK
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK
    return x ^ (x >> 31)


def derive_seed(base: int, *fields: int) -> int:
    """Fold derivation fields into a stream seed, one mix per field."""
    s = base & _MASK
    for f in fields:
        s = mix64((s + _GAMMA + (f & _MASK)) & _MASK)
    return s


class SplitMix64:
    """Sequential SplitMix64 stream over a derived seed."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK
        return mix64(self.state)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi].

        Plain modulo of a 64-bit draw; for the span widths used here
        (at most a few units) the bias is on the order of 2**-62.
        """
        return lo + self.next_u64() % (hi - lo + 1)

    def coin(self) -> bool:
        """Fair coin: low bit of the next draw."""
        return bool(self.next_u64() & 1)


@dataclass(frozen=True)
class GenSeed:
    """Base seed plus the derivation scheme for per-cell streams.

    Identical (mechanism id, length, token index) fields always yield an
    identical stream, regardless of execution order.
    """

    seed: int

    def stream_seed(self, mechanism_id: int, length: int, token_index: int) -> int:
        return derive_seed(self.seed, mechanism_id, length, token_index)

    def stream(self, mechanism_id: int, length: int, token_index: int) -> SplitMix64:
        return SplitMix64(self.stream_seed(mechanism_id, length, token_index))
