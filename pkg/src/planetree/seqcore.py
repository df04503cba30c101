"""Child sequences: validation, invariants, exact counting, one-reduction.

A child sequence assigns a child count to each of n nodes; the counts must sum
to n - 1, which is exactly the condition for the multiset to be realizable as
a rooted plane tree.  The permutation of (1, ..., 1, 0) is the degenerate case
(a path): several quantities below are undefined for it, and samplers reject
it where the underlying construction breaks down.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Mapping

import numpy as np

from .errors import (
    DegenerateSequenceError,
    EmptyInputError,
    NegativeEntryError,
    SequenceFormatError,
    SumMismatchError,
)

__all__ = [
    "ChildSequence",
    "DegreeHistogram",
    "SequenceInvariants",
    "validate",
    "histogram",
    "invariants",
    "count_trees",
    "log_count_trees",
    "one_reduce",
    "parse_sequence_text",
    "format_sequence_compact",
]


@dataclass(frozen=True)
class ChildSequence:
    """A length-n tuple of child counts summing to n - 1."""

    entries: tuple[int, ...]

    def __post_init__(self):
        n = len(self.entries)
        if n == 0:
            raise EmptyInputError("child sequence is empty")
        total = 0
        for e in self.entries:
            if e < 0:
                raise NegativeEntryError(f"negative child count {e}")
            total += e
        if total != n - 1:
            raise SumMismatchError(
                f"entries sum to {total}, expected n - 1 = {n - 1}"
            )

    @property
    def n(self) -> int:
        return len(self.entries)

    @cached_property
    def ones(self) -> int:
        return self.entries.count(1)

    @property
    def is_degenerate(self) -> bool:
        # permutation of (1, ..., 1, 0); includes the single-node sequence (0)
        return self.ones == self.n - 1

    def as_array(self) -> np.ndarray:
        try:
            return self.__dict__["_array"]
        except KeyError:
            arr = np.asarray(self.entries, dtype=np.int64)
            arr.flags.writeable = False
            self.__dict__["_array"] = arr
            return arr

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]


def validate(entries: Iterable[int]) -> ChildSequence:
    """Check entries and wrap them; raises on any malformed input."""
    return ChildSequence(tuple(int(e) for e in entries))


@dataclass(frozen=True)
class DegreeHistogram:
    """Multiplicities of each child count; keys with zero count are absent."""

    counts: Mapping[int, int]
    n: int

    def get(self, k: int) -> int:
        return self.counts.get(k, 0)


def histogram(c: ChildSequence) -> DegreeHistogram:
    counts = dict(Counter(c.entries))
    assert sum(counts.values()) == c.n
    assert sum(k * v for k, v in counts.items()) == c.n - 1
    return DegreeHistogram(counts=counts, n=c.n)


@dataclass(frozen=True)
class SequenceInvariants:
    """Scalar summaries used throughout the tail bounds.

    norm_sq is the squared Euclidean norm of the sequence, mean_sq is
    norm_sq / n, and one_factor is (n - 2) / (n - 1 - #ones), defined only
    for non-degenerate sequences with n >= 2.
    """

    norm_sq: int
    one_factor: Fraction | None
    mean_sq: Fraction
    is_degenerate: bool


def invariants(c: ChildSequence) -> SequenceInvariants:
    norm_sq = sum(e * e for e in c.entries)
    denom = c.n - 1 - c.ones
    one_factor = Fraction(c.n - 2, denom) if denom > 0 else None
    return SequenceInvariants(
        norm_sq=norm_sq,
        one_factor=one_factor,
        mean_sq=Fraction(norm_sq, c.n),
        is_degenerate=c.is_degenerate,
    )


def count_trees(c: ChildSequence) -> int:
    """Number of plane trees whose child counts form this multiset.

    Equals n! / (n * prod_k m_k!) with m_k the multiplicity of count k; the
    division is exact because each cyclic class of arrangements contains
    exactly one tree sequence.
    """
    num = math.factorial(c.n)
    den = c.n * math.prod(
        math.factorial(v) for v in Counter(c.entries).values()
    )
    q, r = divmod(num, den)
    assert r == 0, "tree count formula should divide exactly"
    return q


def log_count_trees(c: ChildSequence) -> float:
    """Natural log of count_trees; usable far beyond exact-integer scales."""
    out = math.lgamma(c.n + 1) - math.log(c.n)
    for v in Counter(c.entries).values():
        out -= math.lgamma(v + 1)
    return out


def one_reduce(c: ChildSequence) -> ChildSequence:
    """Drop all 1-entries; the child sequence of the tree with its one-child
    nodes contracted away.  Rejects inputs whose reduction has < 2 nodes."""
    if c.n - c.ones < 2:
        raise DegenerateSequenceError(
            "reduction of a (near-)path sequence has fewer than two nodes"
        )
    return ChildSequence(tuple(e for e in c.entries if e != 1))


_TOKEN = re.compile(r"^(-?\d+)(?:\^(\d+))?$")


def parse_sequence_text(text: str) -> ChildSequence:
    """Parse the sequence text format.

    Entries are decimal integers separated by commas and/or whitespace; a
    ``#`` starts a comment running to end of line; ``k^m`` abbreviates m
    repetitions of k (e.g. ``2^500,0^501``).
    """
    entries: list[int] = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        for tok in line.replace(",", " ").split():
            m = _TOKEN.match(tok)
            if m is None:
                raise SequenceFormatError(f"bad token {tok!r}")
            value = int(m.group(1))
            repeat = int(m.group(2)) if m.group(2) else 1
            entries.extend([value] * repeat)
    return validate(entries)


def format_sequence_compact(c: ChildSequence) -> str:
    """Multiset summary in the same text format, largest counts first."""
    items = sorted(Counter(c.entries).items(), reverse=True)
    return ",".join(f"{k}^{v}" if v > 1 else f"{k}" for k, v in items)
