"""Backend selection and the deterministic campaign driver.

The compiled kernel is preferred when importable; the pure-Python twin is a
drop-in replacement producing bit-identical numbers.  Campaigns assign each
trial its own sub-stream keyed by the global trial index, which makes the
result arrays independent of chunking and worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels_py

try:
    from . import _kernels  # type: ignore[attr-defined]
except ImportError:  # pragma: no cover - depends on the build
    _kernels = None

_impl = _kernels if _kernels is not None else _kernels_py

BACKEND = _impl.BACKEND_NAME

KIND_CODES = {"bfs": 0, "lex_dfs": 1, "rev_dfs": 2}

_WORKERS_ENV = "PLANETREE_WORKERS"
_CHUNK = 4096


def get_backend(name: str | None = None):
    """Kernel module by name ('compiled' or 'python'); default the selected one."""
    if name is None:
        return _impl
    if name == "python":
        return _kernels_py
    if name == "compiled":
        if _kernels is None:
            raise RuntimeError("compiled kernel is not available")
        return _kernels
    raise ValueError(f"unknown backend {name!r}")


def resolve_workers(workers: int | None) -> int:
    """Explicit value > environment override > auto-detect."""
    if workers is not None and workers > 0:
        return workers
    env = os.environ.get(_WORKERS_ENV)
    if env:
        value = int(env)
        if value > 0:
            return value
    return min(os.cpu_count() or 1, 8)


@dataclass(frozen=True)
class CampaignStats:
    """Per-trial statistics of a sampling campaign, indexed by trial."""

    heights: np.ndarray
    widths: np.ndarray
    pathmax: np.ndarray
    prefixmin: np.ndarray

    @property
    def trials(self) -> int:
        return self.heights.shape[0]


def run_campaign(
    base: np.ndarray,
    trials: int,
    seed: int,
    kind: str = "bfs",
    workers: int | None = None,
    backend=None,
) -> CampaignStats:
    """Height, width, rotated-path peak, and half-prefix minimum per trial."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    impl = backend if backend is not None else _impl
    kind_code = KIND_CODES[kind] if isinstance(kind, str) else int(kind)
    base = np.ascontiguousarray(base, dtype=np.int64)
    if not base.flags.writeable:  # memoryview exports need a writable buffer
        base = base.copy()
    h = np.empty(trials, dtype=np.int64)
    w = np.empty(trials, dtype=np.int64)
    pm = np.empty(trials, dtype=np.int64)
    pmin = np.empty(trials, dtype=np.int64)

    nworkers = resolve_workers(workers)
    spans = [
        (lo, min(lo + _CHUNK, trials)) for lo in range(0, trials, _CHUNK)
    ]

    def run_span(span):
        lo, hi = span
        impl.run_trials(
            base, hi - lo, seed, kind_code, lo,
            h[lo:hi], w[lo:hi], pm[lo:hi], pmin[lo:hi],
        )

    if nworkers <= 1 or len(spans) <= 1:
        for span in spans:
            run_span(span)
    else:
        with ThreadPoolExecutor(max_workers=nworkers) as pool:
            list(pool.map(run_span, spans))
    return CampaignStats(heights=h, widths=w, pathmax=pm, prefixmin=pmin)
