"""Lattice-path view of child sequences and the cycle-lemma rotation.

The i-th partial sum S_i adds up the first i values of (entry - 1).  A
sequence encodes a tree iff every proper partial sum is non-negative (the
total is always -1).  Exactly one cyclic shift of any child sequence has that
property, namely the shift that starts reading just after the leftmost
minimum of S; tree_rotation locates it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .seqcore import ChildSequence

__all__ = [
    "LatticePath",
    "Rotation",
    "partial_sums",
    "is_tree_sequence",
    "tree_rotation",
    "half_shift",
    "mod_index",
    "rotated_peak",
    "half_extreme_holds",
    "quarter_window_holds",
]

# below this length plain Python loops beat numpy call overhead
_SMALL_N = 256


@dataclass(frozen=True)
class LatticePath:
    """Partial sums (S_0, ..., S_n) of a child sequence."""

    values: tuple[int, ...]

    def __post_init__(self):
        if not self.values or self.values[0] != 0:
            raise ValueError("lattice path must start at 0")
        prev = 0
        for v in self.values[1:]:
            if v - prev < -1:
                raise ValueError("lattice path steps are bounded below by -1")
            prev = v

    @property
    def n(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, i):
        return self.values[i]

    def __iter__(self):
        return iter(self.values)


def _sums_list(entries) -> list[int]:
    out = [0]
    s = 0
    for e in entries:
        s += e - 1
        out.append(s)
    return out


def _sums_array(arr: np.ndarray) -> np.ndarray:
    out = np.empty(arr.shape[0] + 1, dtype=np.int64)
    out[0] = 0
    np.cumsum(arr - 1, out=out[1:])
    return out


def partial_sums(c: ChildSequence) -> LatticePath:
    return LatticePath(tuple(_sums_list(c.entries)))


def is_tree_sequence(c: ChildSequence) -> bool:
    """True iff every partial sum before the last is non-negative."""
    s = 0
    last = c.n - 1
    for i, e in enumerate(c.entries):
        s += e - 1
        if s < 0 and i < last:
            return False
    return True


@dataclass(frozen=True)
class Rotation:
    """Pivot k in 0..n-1 and the rotated sequence entries[k:] + entries[:k]."""

    pivot: int
    rotated: ChildSequence


def tree_rotation(c: ChildSequence) -> Rotation:
    """The unique cyclic shift of c that is a tree sequence.

    The pivot is the leftmost argmin of the partial sums, taken mod n (the
    argmin can be n itself, which is the identity rotation).
    """
    n = c.n
    if n >= _SMALL_N:
        sums = _sums_array(c.as_array())
        k = int(np.argmin(sums))  # argmin returns the first minimum
    else:
        s = 0
        best = 0
        k = 0
        for i, e in enumerate(c.entries):
            s += e - 1
            if s < best:
                best = s
                k = i + 1
    k %= n
    if k == 0:
        return Rotation(pivot=0, rotated=c)
    return Rotation(
        pivot=k, rotated=ChildSequence(c.entries[k:] + c.entries[:k])
    )


def half_shift(c: ChildSequence) -> ChildSequence:
    """Rotate by floor(n/2): start reading at position 1 + floor(n/2)."""
    h = c.n // 2
    if h == 0:
        return c
    return ChildSequence(c.entries[h:] + c.entries[:h])


def mod_index(p: int, q: int) -> int:
    """Representative of p in 1..q: p mod q, except q when q divides p."""
    if q < 1:
        raise ValueError("modulus must be positive")
    return (p - 1) % q + 1


def rotated_peak(c: ChildSequence) -> int:
    """Max partial sum of tree_rotation(c).rotated, computed from c's sums."""
    sums = _sums_list(c.entries)
    k = min(range(len(sums)), key=sums.__getitem__)  # leftmost argmin
    # rotated sums are S_{k+j} - S_k, then wrap to S_n - S_k + S_i for i <= k
    a = max(sums[k:]) - sums[k]
    b = sums[-1] - sums[k] + max(sums[: k + 1])
    return max(a, b)


def half_extreme_holds(c: ChildSequence) -> bool:
    """Some |S_i| of the raw sequence reaches half the rotated maximum.

    Rotating moves every partial sum by at most the sum it pivots around, so
    the raw path cannot be uniformly smaller than half the rotated peak.
    Comparison is exact (integers doubled instead of halving the peak).
    """
    peak = rotated_peak(c)
    absmax = max(abs(v) for v in _sums_list(c.entries))
    return 2 * absmax >= peak


def quarter_window_holds(c: ChildSequence) -> bool:
    """A quarter of the rotated maximum shows up in the first half-window of
    either the raw sequence or its half_shift.  Exact integer comparison."""
    peak = rotated_peak(c)
    n = c.n
    sums = _sums_list(c.entries)
    first = max(abs(v) for v in sums[: n // 2 + 1])
    shifted = _sums_list(half_shift(c).entries)
    second = max(abs(v) for v in shifted[: (n + 1) // 2 + 1])
    return 4 * first >= peak or 4 * second >= peak
