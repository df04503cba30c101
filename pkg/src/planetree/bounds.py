"""Sub-Gaussian tail bounds and their empirical verification.

The closed forms bound, for a uniform tree with child sequence c (or a
uniformly permuted c where partial sums are concerned):

* width:      P(width >= m + 2)            <= 3 exp(-m^2 / (1472 q))
* height:     P(height >= m)               <= 7 exp(-m^2 / (23552 q f^2))
* rotated peak: P(max_i S_i(rot) >= m + 2) <= 3 exp(-m^2 / (368 q))
* half-prefix minimum:
  P(min_{i <= n/2} S_i <= -(t+1))          <= exp(-t^2 / (8(3+2a)n + 8t/3))

with q the squared norm, a = q/n, and f the one_factor invariant.  The
bernstein-style helper exp(-t^2 / (2v(1 + bt/(3v)))) is exposed separately.

monte_carlo_report estimates all four tails from a shuffled-sequence
campaign and tabulates them against the bounds; martingale_diag checks the
exact conditional structure that drives the proofs, in rational arithmetic.
"""

from __future__ import annotations

import json
import math
import time
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import IO

import numpy as np

from .codec import OrderKind
from .errors import (
    DegenerateSequenceError,
    NonPositiveVarianceError,
    ZeroNormSqError,
)
from .kernels import run_campaign
from .seqcore import (
    ChildSequence,
    SequenceInvariants,
    format_sequence_compact,
    invariants,
)

__all__ = [
    "width_tail_bound",
    "height_tail_bound",
    "pathmax_bound",
    "prefixmin_bound",
    "mcdiarmid_bound",
    "MartingaleDiag",
    "martingale_diag",
    "martingale_violations",
    "TailReport",
    "DominationViolation",
    "monte_carlo_report",
]

_WIDTH_COEF = 3.0
_WIDTH_SCALE = 1472.0
_HEIGHT_COEF = 7.0
_HEIGHT_SCALE = 23552.0
_PEAK_COEF = 3.0
_PEAK_SCALE = 368.0

# report rows run until every defined bound falls below this
_NEGLIGIBLE = 1e-6

CSV_HEADER = (
    "m,emp_width_tail,width_bound,emp_height_tail,height_bound,"
    "emp_pathmax_tail,pathmax_bound,emp_prefixmin_tail,prefixmin_bound"
)


def width_tail_bound(m: float, inv: SequenceInvariants) -> float:
    """Bound on P(width >= m + 2)."""
    if m < 0:
        raise ValueError("m must be non-negative")
    if inv.norm_sq == 0:
        raise ZeroNormSqError("width bound undefined for the one-node sequence")
    return _WIDTH_COEF * math.exp(-(m * m) / (_WIDTH_SCALE * inv.norm_sq))


def height_tail_bound(m: float, inv: SequenceInvariants) -> float:
    """Bound on P(height >= m); needs the one_factor invariant."""
    if m < 0:
        raise ValueError("m must be non-negative")
    if inv.one_factor is None:
        raise DegenerateSequenceError(
            "height bound undefined without the one_factor invariant"
        )
    f = float(inv.one_factor)
    return _HEIGHT_COEF * math.exp(
        -(m * m) / (_HEIGHT_SCALE * inv.norm_sq * f * f)
    )


def pathmax_bound(m: float, inv: SequenceInvariants) -> float:
    """Bound on P(max partial sum of the rotated sequence >= m + 2)."""
    if m < 0:
        raise ValueError("m must be non-negative")
    if inv.norm_sq == 0:
        raise ZeroNormSqError("peak bound undefined for the one-node sequence")
    return _PEAK_COEF * math.exp(-(m * m) / (_PEAK_SCALE * inv.norm_sq))


def prefixmin_bound(t: float, inv: SequenceInvariants, n: int) -> float:
    """Bound on P(min over the first half of the partial sums <= -(t+1))."""
    if t < 0:
        raise ValueError("t must be non-negative")
    a = float(inv.mean_sq)
    return math.exp(-(t * t) / (8.0 * (3.0 + 2.0 * a) * n + 8.0 * t / 3.0))


def mcdiarmid_bound(t: float, v: float, b: float) -> float:
    """exp(-t^2 / (2v(1 + bt/(3v)))): bounded-variance, bounded-jump tail."""
    if t < 0:
        raise ValueError("t must be non-negative")
    if v <= 0:
        raise NonPositiveVarianceError("variance proxy must be positive")
    if b < 0:
        raise ValueError("jump bound must be non-negative")
    return math.exp(-(t * t) / (2.0 * v + 2.0 * b * t / 3.0))


@dataclass(frozen=True)
class MartingaleDiag:
    """Exact conditional diagnostics of the normalized-surplus process.

    For a fixed ordering of the entries, M_i = (S_i + 1) / (n - i).  Over a
    uniformly random ordering M is a martingale: the conditional mean of
    M_{i+1} given the first i entries equals M_i, one step never falls by
    more than 4/n while i < n/2, and the conditional variance is capped by
    4(3 + 2a)/n^2 there.  All quantities are exact rationals; the violation
    tuples list the steps i where a property failed (they stay empty).
    """

    m_values: tuple[Fraction, ...]
    cond_means: tuple[Fraction, ...]
    cond_vars: tuple[Fraction, ...]
    variance_cap: Fraction
    increment_floor: Fraction
    mean_mismatches: tuple[int, ...]
    increment_violations: tuple[int, ...]
    variance_violations: tuple[int, ...]

    @property
    def all_ok(self) -> bool:
        return not (
            self.mean_mismatches
            or self.increment_violations
            or self.variance_violations
        )


def _martingale_scan(c: ChildSequence, build: bool):
    """Single pass over the ordering; integer identities, optional Fractions.

    cond_mean_i = M_i reduces to sum_k r_k (S_i + k) = (S_i + 1)(n - i - 1)
    with r_k the remaining multiplicities, and the cap and floor comparisons
    cross-multiply the same way, so the checks stay in integer arithmetic.
    """
    entries = c.entries
    n = c.n
    half = n // 2
    norm_sq = sum(e * e for e in entries)
    cap_num = 12 * n + 8 * norm_sq  # 4(3 + 2a)/n^2 = cap_num / n^3
    cap_den = n**3

    remaining = Counter(entries)
    s = 0
    mean_bad: list[int] = []
    incr_bad: list[int] = []
    var_bad: list[int] = []
    m_values = [Fraction(1, n)] if build else None
    cond_means: list[Fraction] | None = [] if build else None
    cond_vars: list[Fraction] | None = [] if build else None

    for i in range(n - 1):
        d = n - i
        d1 = n - i - 1
        acc1 = 0
        acc2 = 0
        for k, cnt in remaining.items():
            v = s + k
            acc1 += cnt * v
            acc2 += cnt * v * v
        if acc1 != (s + 1) * d1:
            mean_bad.append(i)
        if i < half:
            # var_i <= cap  <=>  (acc2 d - (S+1)^2 d1^2) n^3 <= cap_num d^2 d1^2
            lhs = (acc2 * d - (s + 1) ** 2 * d1 * d1) * cap_den
            if lhs > cap_num * d * d * d1 * d1:
                var_bad.append(i)
        if build:
            cond_means.append(Fraction(acc1, d * d1))
            cond_vars.append(
                Fraction(acc2, d * d1 * d1) - Fraction((s + 1) ** 2, d * d)
            )
        e = entries[i]
        left = remaining[e] - 1
        if left:
            remaining[e] = left
        else:
            del remaining[e]
        s_next = s + e - 1
        if i < half:
            # M_{i+1} >= M_i - 4/n, cross-multiplied by n d d1 > 0
            if n * d * (s_next + 1) < n * d1 * (s + 1) - 4 * d * d1:
                incr_bad.append(i)
        if build:
            m_values.append(Fraction(s_next + 1, d1))
        s = s_next

    if build:
        return (
            tuple(m_values),
            tuple(cond_means),
            tuple(cond_vars),
            Fraction(cap_num, cap_den),
            Fraction(-4, n),
            tuple(mean_bad),
            tuple(incr_bad),
            tuple(var_bad),
        )
    return len(mean_bad), len(incr_bad), len(var_bad)


def martingale_diag(c: ChildSequence) -> MartingaleDiag:
    """Full rational diagnostics for one ordering of the entries."""
    (
        m_values,
        cond_means,
        cond_vars,
        cap,
        floor,
        mean_bad,
        incr_bad,
        var_bad,
    ) = _martingale_scan(c, build=True)
    return MartingaleDiag(
        m_values=m_values,
        cond_means=cond_means,
        cond_vars=cond_vars,
        variance_cap=cap,
        increment_floor=floor,
        mean_mismatches=mean_bad,
        increment_violations=incr_bad,
        variance_violations=var_bad,
    )


def martingale_violations(c: ChildSequence) -> tuple[int, int, int]:
    """(mean, increment, variance) violation counts, skipping the Fractions.

    Same pass as martingale_diag but integer-only; meant for sweeps over
    many orderings.
    """
    return _martingale_scan(c, build=False)


@dataclass(frozen=True)
class DominationViolation:
    column: str
    m: int
    emp: float
    bound: float


@dataclass(frozen=True)
class TailReport:
    """Empirical tails next to their bounds on a shared m grid.

    Rows cover m = 0 up to the larger of the last nonzero empirical
    numerator and the point where every defined bound is negligible.
    Undefined bounds (degenerate or one-node sequences) render as nan in
    CSV and null in JSON.  Wall time is informational only and never
    rendered, so equal-seed runs are byte-identical however many workers
    they used.
    """

    sequence_summary: str
    kind: OrderKind
    n: int
    norm_sq: int
    one_factor: Fraction | None
    trials: int
    seed: int
    m: np.ndarray
    emp_width_tail: np.ndarray
    width_bound: np.ndarray
    emp_height_tail: np.ndarray
    height_bound: np.ndarray
    emp_pathmax_tail: np.ndarray
    pathmax_bound: np.ndarray
    emp_prefixmin_tail: np.ndarray
    prefixmin_bound: np.ndarray
    wall_time_s: float
    backend: str

    @property
    def rows(self) -> int:
        return self.m.shape[0]

    def _meta_pairs(self) -> list[tuple[str, str]]:
        one = float(self.one_factor) if self.one_factor is not None else math.nan
        return [
            ("n", str(self.n)),
            ("norm_sq", str(self.norm_sq)),
            ("one_factor", _fmt(one)),
            ("trials", str(self.trials)),
            ("seed", str(self.seed)),
        ]

    def write_csv(self, fh: IO[str]) -> None:
        for key, value in self._meta_pairs():
            fh.write(f"# {key}={value}\n")
        fh.write(CSV_HEADER + "\n")
        cols = self._columns()
        for i in range(self.rows):
            fh.write(
                f"{int(self.m[i])},"
                + ",".join(_fmt(col[i]) for col in cols)
                + "\n"
            )

    def csv_text(self) -> str:
        import io

        buf = io.StringIO()
        self.write_csv(buf)
        return buf.getvalue()

    def _columns(self):
        return (
            self.emp_width_tail,
            self.width_bound,
            self.emp_height_tail,
            self.height_bound,
            self.emp_pathmax_tail,
            self.pathmax_bound,
            self.emp_prefixmin_tail,
            self.prefixmin_bound,
        )

    def to_json_obj(self) -> dict:
        names = CSV_HEADER.split(",")[1:]
        cols = self._columns()
        rows = []
        for i in range(self.rows):
            row: dict[str, object] = {"m": int(self.m[i])}
            for name, col in zip(names, cols):
                value = float(col[i])
                row[name] = None if math.isnan(value) else value
            rows.append(row)
        one = self.one_factor
        meta = {
            "sequence": self.sequence_summary,
            "kind": self.kind.value,
            "n": self.n,
            "norm_sq": self.norm_sq,
            "one_factor": None if one is None else float(one),
            "trials": self.trials,
            "seed": self.seed,
        }
        return {"meta": meta, "rows": rows}

    def json_text(self) -> str:
        return json.dumps(self.to_json_obj(), indent=None, sort_keys=False)

    def domination_violations(self) -> list[DominationViolation]:
        """Rows where a sub-unit bound fails to clear the empirical tail by
        four binomial standard errors."""
        out: list[DominationViolation] = []
        pairs = (
            ("width", self.emp_width_tail, self.width_bound),
            ("height", self.emp_height_tail, self.height_bound),
            ("pathmax", self.emp_pathmax_tail, self.pathmax_bound),
            ("prefixmin", self.emp_prefixmin_tail, self.prefixmin_bound),
        )
        for name, emp, bound in pairs:
            sigma = np.sqrt(emp * (1.0 - emp) / self.trials)
            mask = (bound < 1.0) & ~np.isnan(bound) & (emp + 4.0 * sigma > bound)
            for i in np.nonzero(mask)[0]:
                out.append(
                    DominationViolation(
                        column=name,
                        m=int(self.m[i]),
                        emp=float(emp[i]),
                        bound=float(bound[i]),
                    )
                )
        return out


def _fmt(x: float) -> str:
    return format(x, ".9g")


def _tail_freq(values: np.ndarray, offset: int, upto: int, trials: int):
    """freq(value >= m + offset) for m = 0..upto; values must be >= 0."""
    vmax = int(values.max(initial=0))
    counts = np.bincount(values, minlength=vmax + 1)
    suffix = np.zeros(vmax + 2, dtype=np.int64)
    suffix[:-1] = np.cumsum(counts[::-1])[::-1]
    thresholds = np.minimum(np.arange(upto + 1) + offset, vmax + 1)
    return suffix[thresholds] / trials


def _bound_columns(ms: np.ndarray, inv: SequenceInvariants, n: int):
    shape = ms.shape
    msq = ms.astype(np.float64) ** 2
    if inv.norm_sq > 0:
        width = _WIDTH_COEF * np.exp(-msq / (_WIDTH_SCALE * inv.norm_sq))
        peak = _PEAK_COEF * np.exp(-msq / (_PEAK_SCALE * inv.norm_sq))
    else:
        width = np.full(shape, np.nan)
        peak = np.full(shape, np.nan)
    if inv.one_factor is not None:
        f = float(inv.one_factor)
        height = _HEIGHT_COEF * np.exp(
            -msq / (_HEIGHT_SCALE * inv.norm_sq * f * f)
        )
    else:
        height = np.full(shape, np.nan)
    a = float(inv.mean_sq)
    mf = ms.astype(np.float64)
    prefix = np.exp(-msq / (8.0 * (3.0 + 2.0 * a) * n + 8.0 * mf / 3.0))
    return width, height, peak, prefix


def _negligible_after(inv: SequenceInvariants, n: int) -> int:
    """Smallest m beyond which every defined bound is below the cutoff."""
    stops = []
    q = inv.norm_sq
    if q > 0:
        lw = math.log(_WIDTH_COEF / _NEGLIGIBLE)
        stops.append(math.sqrt(_WIDTH_SCALE * q * lw))
        lp = math.log(_PEAK_COEF / _NEGLIGIBLE)
        stops.append(math.sqrt(_PEAK_SCALE * q * lp))
        if inv.one_factor is not None:
            f = float(inv.one_factor)
            lh = math.log(_HEIGHT_COEF / _NEGLIGIBLE)
            stops.append(math.sqrt(_HEIGHT_SCALE * q * f * f * lh))
    # exp(-t^2/(8(3+2a)n + 8t/3)) crosses the cutoff at the positive root of
    # t^2 - (8L/3) t - 8(3+2a) n L
    a = float(inv.mean_sq)
    L = math.log(1.0 / _NEGLIGIBLE)
    lin = 4.0 * L / 3.0
    stops.append(lin + math.sqrt(lin * lin + 8.0 * (3.0 + 2.0 * a) * n * L))
    # smallest integer strictly past the crossing point
    return int(math.floor(max(stops))) + 1


def monte_carlo_report(
    c: ChildSequence,
    trials: int,
    seed: int,
    kind: OrderKind = OrderKind.BFS,
    workers: int | None = None,
    backend=None,
) -> TailReport:
    """Estimate all four tails over `trials` shuffled copies of c.

    Deterministic for a given (c, trials, seed, kind) regardless of worker
    count or backend.
    """
    start = time.perf_counter()
    kind = OrderKind(kind)
    inv = invariants(c)
    stats = run_campaign(
        c.as_array(), trials, seed, kind.value, workers, backend
    )
    if backend is not None:
        backend_name = backend.BACKEND_NAME
    else:
        from .kernels import BACKEND as backend_name

    wmax = int(stats.widths.max())
    hmax = int(stats.heights.max())
    pmax = int(stats.pathmax.max())
    dmax = int(-stats.prefixmin.min())
    last_emp = max(wmax - 2, hmax, pmax - 2, dmax - 1, 0)
    upto = max(last_emp, _negligible_after(inv, c.n))

    ms = np.arange(upto + 1, dtype=np.int64)
    emp_w = _tail_freq(stats.widths, 2, upto, trials)
    emp_h = _tail_freq(stats.heights, 0, upto, trials)
    emp_p = _tail_freq(stats.pathmax, 2, upto, trials)
    emp_d = _tail_freq(-stats.prefixmin, 1, upto, trials)
    b_w, b_h, b_p, b_d = _bound_columns(ms, inv, c.n)

    return TailReport(
        sequence_summary=format_sequence_compact(c),
        kind=kind,
        n=c.n,
        norm_sq=inv.norm_sq,
        one_factor=inv.one_factor,
        trials=trials,
        seed=seed,
        m=ms,
        emp_width_tail=emp_w,
        width_bound=b_w,
        emp_height_tail=emp_h,
        height_bound=b_h,
        emp_pathmax_tail=emp_p,
        pathmax_bound=b_p,
        emp_prefixmin_tail=emp_d,
        prefixmin_bound=b_d,
        wall_time_s=time.perf_counter() - start,
        backend=backend_name,
    )
