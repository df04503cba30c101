"""Property suite behind the CLI selfcheck command.

Each check sweeps a corpus (exhaustive at small n, seeded-random at larger
n) and reports pass/fail; the test suite runs the same functions at the
published sizes.  Checks use exact arithmetic wherever the property is
exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bounds import (
    height_tail_bound,
    martingale_violations,
    pathmax_bound,
    width_tail_bound,
)
from .codec import OrderKind, decode, encode
from .lattice import (
    half_extreme_holds,
    is_tree_sequence,
    partial_sums,
    quarter_window_holds,
    rotated_peak,
    tree_rotation,
)
from .rng import RandomStream, mix64
from .sampler import (
    all_child_multisets,
    all_child_sequences,
    random_composition,
    tree_sequences,
)
from .seqcore import ChildSequence, invariants, validate
from .treestats import profile

__all__ = [
    "CheckResult",
    "check_round_trips",
    "check_cycle_lemma",
    "check_half_extreme",
    "check_quarter_window",
    "check_exact_tails",
    "check_martingale",
    "run_all",
    "random_compositions_matrix",
    "count_valid_shifts",
]

DEFAULT_SEED = 20260823


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def check_round_trips(max_n: int = 8) -> CheckResult:
    """decode(encode(t)) == t and encode(decode(s)) == s, all kinds."""
    trees = 0
    for n in range(1, max_n + 1):
        for ms in all_child_multisets(n):
            c = validate(ms)
            for s in tree_sequences(c):
                for kind in OrderKind:
                    t = decode(kind, s)
                    if encode(kind, t).counts != s.entries:
                        return CheckResult(
                            "round-trips",
                            False,
                            f"encode(decode) broke on {s.entries} / {kind.value}",
                        )
                    if decode(kind, ChildSequence(encode(kind, t).counts)) != t:
                        return CheckResult(
                            "round-trips",
                            False,
                            f"decode(encode) broke on {s.entries} / {kind.value}",
                        )
                trees += 1
    return CheckResult(
        "round-trips", True, f"{trees} trees x 3 codecs up to n={max_n}"
    )


def count_valid_shifts(row: np.ndarray) -> tuple[int, int]:
    """(#cyclic shifts that are tree sequences, 1-based pivot of the first).

    A shift starting after position k works iff S_k undercuts everything
    before it strictly and everything after it weakly; computed with prefix
    and suffix minima, independent of the rotation code under test.
    """
    n = row.shape[0]
    inner = np.cumsum(row.astype(np.int64) - 1)
    big = np.iinfo(np.int64).max
    before = np.empty(n, dtype=np.int64)
    before[0] = big
    if n > 1:
        np.minimum.accumulate(inner[:-1], out=before[1:])
    after = np.empty(n, dtype=np.int64)
    after[-1] = big
    if n > 1:
        after[:-1] = np.minimum.accumulate(inner[::-1][:-1])[::-1]
    valid = (inner < before) & (inner <= after)
    hits = int(np.count_nonzero(valid))
    pivot = int(np.argmax(valid)) + 1 if hits else 0
    return hits, pivot


def random_compositions_matrix(
    count: int, n: int, seed: int
) -> np.ndarray:
    """Uniform child sequences as rows, via numpy's generator (test corpus)."""
    rng = np.random.default_rng(seed)
    out = np.empty((count, n), dtype=np.int64)
    if n == 1:
        out[:] = 0
        return out
    symbols = n - 1 + n - 1  # stars + bars
    for i in range(count):
        bars = np.sort(rng.choice(symbols, size=n - 1, replace=False))
        out[i, 0] = bars[0]
        out[i, 1:-1] = np.diff(bars) - 1
        out[i, -1] = symbols - 1 - bars[-1]
    return out


def check_cycle_lemma(
    max_n: int = 9,
    random_count: int = 10_000,
    random_n: int = 1000,
    seed: int = DEFAULT_SEED,
) -> CheckResult:
    """Exactly one shift decodes, and tree_rotation finds that shift."""
    checked = 0
    for n in range(1, max_n + 1):
        for entries in all_child_sequences(n):
            c = validate(entries)
            ok = [
                k
                for k in range(n)
                if is_tree_sequence(
                    ChildSequence(entries[k:] + entries[:k])
                )
            ]
            rot = tree_rotation(c)
            if len(ok) != 1 or ok[0] != rot.pivot:
                return CheckResult(
                    "cycle-lemma", False, f"shift count {len(ok)} on {entries}"
                )
            if not is_tree_sequence(rot.rotated):
                return CheckResult(
                    "cycle-lemma", False, f"bad rotation on {entries}"
                )
            checked += 1
    mat = random_compositions_matrix(random_count, random_n, seed)
    for i in range(random_count):
        hits, pivot = count_valid_shifts(mat[i])
        rot = tree_rotation(validate(mat[i]))
        if hits != 1 or pivot % random_n != rot.pivot:
            return CheckResult(
                "cycle-lemma", False, f"random row {i} disagrees"
            )
        checked += 1
    return CheckResult("cycle-lemma", True, f"{checked} sequences")


def _extreme_check(name, predicate, max_n, random_count, random_n, seed):
    checked = 0
    for n in range(1, max_n + 1):
        for entries in all_child_sequences(n):
            if not predicate(validate(entries)):
                return CheckResult(name, False, f"violated on {entries}")
            checked += 1
    mat = random_compositions_matrix(random_count, random_n, seed)
    for i in range(random_count):
        if not predicate(validate(mat[i])):
            return CheckResult(name, False, f"violated on random row {i}")
        checked += 1
    return CheckResult(name, True, f"{checked} sequences")


def check_half_extreme(
    max_n: int = 9,
    random_count: int = 10_000,
    random_n: int = 1000,
    seed: int = DEFAULT_SEED,
) -> CheckResult:
    """Raw |S| reaches half the rotated peak on the whole corpus."""
    return _extreme_check(
        "half-extreme", half_extreme_holds, max_n, random_count, random_n, seed
    )


def check_quarter_window(
    max_n: int = 9,
    random_count: int = 10_000,
    random_n: int = 1000,
    seed: int = DEFAULT_SEED,
) -> CheckResult:
    """Quarter of the peak appears in a half-window of c or its half shift."""
    return _extreme_check(
        "quarter-window",
        quarter_window_holds,
        max_n,
        random_count,
        random_n,
        seed,
    )


def check_exact_tails(max_n: int = 9) -> CheckResult:
    """Exact tree-by-tree tails never exceed the closed-form bounds."""
    multisets = 0
    for n in range(1, max_n + 1):
        for ms in all_child_multisets(n):
            c = validate(ms)
            inv = invariants(c)
            widths: list[int] = []
            heights: list[int] = []
            peaks: list[int] = []
            for s in tree_sequences(c):
                p = profile(decode(OrderKind.LEX_DFS, s))
                widths.append(p.width)
                heights.append(p.height)
                peaks.append(max(partial_sums(s)))
            total = len(widths)

            def tail(values, cut):
                return Fraction(sum(1 for v in values if v >= cut), total)

            for m in range(1, n + 3):
                if inv.norm_sq > 0 and float(
                    tail(widths, m + 2)
                ) > width_tail_bound(m, inv):
                    return CheckResult(
                        "exact-tails", False, f"width m={m} on {ms}"
                    )
                if inv.one_factor is not None and float(
                    tail(heights, m)
                ) > height_tail_bound(m, inv):
                    return CheckResult(
                        "exact-tails", False, f"height m={m} on {ms}"
                    )
            for m in range(0, n + 3):
                if inv.norm_sq > 0 and float(
                    tail(peaks, m + 2)
                ) > pathmax_bound(m, inv):
                    return CheckResult(
                        "exact-tails", False, f"peak m={m} on {ms}"
                    )
            multisets += 1
    return CheckResult("exact-tails", True, f"{multisets} multisets")


def check_martingale(
    seed: int = DEFAULT_SEED,
    perms: int = 1000,
    sizes: tuple[int, ...] = (50, 200, 1000),
) -> CheckResult:
    """Conditional mean/floor/variance identities over random orderings."""
    tested = 0
    for n in sizes:
        base = random_composition(n - 1, n, RandomStream(mix64(seed, n)))
        stream_base = mix64(seed, n) ^ 0xA5A5A5A5
        for j in range(perms):
            order = RandomStream(mix64(stream_base, j)).shuffle(base)
            mean_bad, incr_bad, var_bad = martingale_violations(
                validate(order)
            )
            if mean_bad or incr_bad or var_bad:
                return CheckResult(
                    "martingale",
                    False,
                    f"n={n} perm={j}: {mean_bad}/{incr_bad}/{var_bad} bad steps",
                )
            tested += 1
    return CheckResult(
        "martingale", True, f"{tested} orderings at n in {sizes}"
    )


def run_all(seed: int = DEFAULT_SEED) -> list[CheckResult]:
    return [
        check_round_trips(),
        check_cycle_lemma(seed=seed),
        check_half_extreme(seed=seed),
        check_quarter_window(seed=seed),
        check_exact_tails(),
        check_martingale(seed=seed),
    ]
