"""Deterministic 64-bit random streams.

The generator is a splitmix-style avalanche sequence: the state advances by a
fixed odd constant and each output is the finalizer of the new state.  It is
chosen over ``random.Random`` because the compiled kernel replays the exact
same stream in C, and bit-for-bit agreement between the two backends is part
of the library contract.  Integer draws use masked rejection, so there is no
modulo bias; sub-streams are derived from the master seed by hashing the
sub-stream index through the same finalizer.
"""

from __future__ import annotations

from typing import Sequence

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def _avalanche(z: int) -> int:
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK
    return z ^ (z >> 31)


def mix64(seed: int, index: int) -> int:
    """Seed for sub-stream ``index`` of the stream seeded with ``seed``.

    Equals the ``index``-th raw output of a generator seeded with ``seed``,
    so distinct indexes always map to distinct sub-seeds.
    """
    if index < 0:
        raise ValueError("sub-stream index must be non-negative")
    return _avalanche((seed + _GOLDEN * (index + 1)) & _MASK)


class RandomStream:
    """Reproducible stream of unsigned 64-bit values and unbiased draws."""

    __slots__ = ("seed", "_state", "draws")

    def __init__(self, seed: int):
        self.seed = seed & _MASK
        self._state = self.seed
        self.draws = 0

    def next_raw(self) -> int:
        """Next raw 64-bit output."""
        self._state = (self._state + _GOLDEN) & _MASK
        self.draws += 1
        return _avalanche(self._state)

    def randbelow(self, k: int) -> int:
        """Uniform integer in [0, k) with no modulo bias."""
        if k < 1:
            raise ValueError("randbelow needs k >= 1")
        if k == 1:
            return 0
        mask = (1 << (k - 1).bit_length()) - 1
        while True:
            r = self.next_raw() & mask
            if r < k:
                return r

    def shuffle(self, values: Sequence[int]) -> list[int]:
        """Return a uniformly shuffled copy (Fisher-Yates, high index down)."""
        out = list(values)
        for i in range(len(out) - 1, 0, -1):
            j = self.randbelow(i + 1)
            out[i], out[j] = out[j], out[i]
        return out

    def substream(self, index: int) -> "RandomStream":
        """Independent stream derived from the master seed, not current state."""
        return RandomStream(mix64(self.seed, index))
