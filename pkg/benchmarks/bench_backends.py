"""Time the compiled trial kernel against the pure-Python fallback.

Run from the repository root:

    python benchmarks/bench_backends.py [--trials 20000] [--seed 0]

Both backends are driven through run_campaign with identical seeds, so the
script doubles as an end-to-end agreement check: it refuses to print a
timing row whose outputs differ.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from planetree.kernels import get_backend, run_campaign
from planetree.seqcore import parse_sequence_text

CASES = [
    ("binary-ish n=201", "2^100 0^101"),
    ("heavy tail n=1000", "31 1^968 0^31"),
    ("uniform-ish n=1024", "3^341 0^683"),
]


def _time_once(base, trials, seed, backend):
    t0 = time.perf_counter()
    stats = run_campaign(base, trials, seed, kind="bfs", backend=backend)
    return time.perf_counter() - t0, stats


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=20_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    py = get_backend("python")
    try:
        cy = get_backend("compiled")
    except RuntimeError:
        print("compiled backend not built; run pip install -e . first")
        return

    print(f"{'case':<22} {'python':>10} {'compiled':>10} {'speedup':>8}")
    for label, text in CASES:
        base = parse_sequence_text(text).as_array()
        t_py, s_py = _time_once(base, args.trials, args.seed, py)
        t_cy, s_cy = _time_once(base, args.trials, args.seed, cy)
        for name in ("heights", "widths", "pathmax", "prefixmin"):
            a, b = getattr(s_py, name), getattr(s_cy, name)
            if not np.array_equal(a, b):
                raise SystemExit(f"backend mismatch on {label}: {name}")
        print(
            f"{label:<22} {t_py:>9.3f}s {t_cy:>9.3f}s {t_py / t_cy:>7.1f}x"
        )


if __name__ == "__main__":
    main()
