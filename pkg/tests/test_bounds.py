import json
import math
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest

from planetree.bounds import (
    CSV_HEADER,
    TailReport,
    height_tail_bound,
    martingale_diag,
    martingale_violations,
    mcdiarmid_bound,
    monte_carlo_report,
    pathmax_bound,
    prefixmin_bound,
    width_tail_bound,
)
from planetree.codec import OrderKind
from planetree.errors import (
    DegenerateSequenceError,
    NonPositiveVarianceError,
    ZeroNormSqError,
)
from planetree.rng import RandomStream, mix64
from planetree.sampler import random_composition
from planetree.seqcore import invariants, validate

A = invariants(validate((2, 2, 0, 0, 0)))  # n=5, q=8, one_factor=3/4
B = invariants(validate((2,) * 500 + (0,) * 501))  # q=2000, f=999/1000
C = invariants(validate((1, 1, 0)))  # degenerate path
D = invariants(validate((3, 1, 0, 0, 0)))  # q=10, one_factor=1
SINGLE = invariants(validate((0,)))

# closed-form values computed once with 30-digit arithmetic and frozen
FROZEN = [
    (lambda: width_tail_bound(10, A), 2.9746323182100418),
    (lambda: width_tail_bound(100, B), 2.9898270697848942),
    (lambda: width_tail_bound(1, C), 2.9989811513088265),
    (lambda: width_tail_bound(7, D), 2.9900301899363011),
    (lambda: height_tail_bound(10, A), 6.9933983444169572),
    (lambda: height_tail_bound(500, B), 6.9628725605129952),
    (lambda: height_tail_bound(10, D), 6.9970284841470222),
    (lambda: pathmax_bound(10, A), 2.8998090713622715),
    (lambda: prefixmin_bound(3, A, 5), 0.96545455219783783),
    (lambda: prefixmin_bound(40, B, 1001), 0.97189751521886522),
    (lambda: prefixmin_bound(0, A, 5), 1.0),
    (lambda: mcdiarmid_bound(2, 1, 0), 0.13533528323661269),
    (lambda: mcdiarmid_bound(3, 2, 0.5), 0.16529888822158654),
    (lambda: mcdiarmid_bound(5, 4, 2), 0.18185502876824997),
]


@pytest.mark.parametrize("fn,expected", FROZEN)
def test_bounds_frozen_values(fn, expected):
    assert fn() == pytest.approx(expected, rel=1e-12)


def test_bounds_are_decreasing_and_capped():
    for m in range(0, 40, 3):
        assert 0 < width_tail_bound(m + 1, A) < width_tail_bound(m, A) <= 3
        assert 0 < height_tail_bound(m + 1, A) < height_tail_bound(m, A) <= 7
        assert 0 < pathmax_bound(m + 1, A) < pathmax_bound(m, A) <= 3
        assert 0 < prefixmin_bound(m + 1, A, 5) < prefixmin_bound(m, A, 5) <= 1


def test_bound_domains():
    with pytest.raises(ValueError):
        width_tail_bound(-1, A)
    with pytest.raises(ValueError):
        pathmax_bound(-2, A)
    with pytest.raises(ValueError):
        prefixmin_bound(-0.5, A, 5)
    with pytest.raises(ZeroNormSqError):
        width_tail_bound(1, SINGLE)
    with pytest.raises(ZeroNormSqError):
        pathmax_bound(1, SINGLE)
    with pytest.raises(DegenerateSequenceError):
        height_tail_bound(1, C)
    with pytest.raises(NonPositiveVarianceError):
        mcdiarmid_bound(1, 0, 1)
    with pytest.raises(ValueError):
        mcdiarmid_bound(1, 1, -1)


def brute_diag(entries):
    """Conditional moments of (S_i+1)/(n-i) by direct averaging over the
    remaining multiset, in exact arithmetic."""
    n = len(entries)
    s = 0
    ms = [Fraction(1, n)]
    cms, cvs = [], []
    rem = Counter(entries)
    for i in range(n - 1):
        nxt = [Fraction(s + x, n - i - 1) for x in rem.elements()]
        mean = sum(nxt, Fraction(0)) / (n - i)
        cms.append(mean)
        cvs.append(sum((v - mean) ** 2 for v in nxt) / (n - i))
        e = entries[i]
        rem[e] -= 1
        if not rem[e]:
            del rem[e]
        s += e - 1
        ms.append(Fraction(s + 1, n - i - 1))
    return ms, cms, cvs


def test_martingale_diag_against_brute_force():
    seqs = [
        (2, 0, 0),
        (0, 2, 0),
        (2, 2, 1, 0, 0, 0),
        (0, 0, 3, 1, 1, 1, 0),
        (4, 0, 1, 0, 0, 1, 0),
    ]
    rng = RandomStream(8)
    for _ in range(40):
        seqs.append(tuple(rng.shuffle(validate(random_composition(7, 8, rng)).entries)))
    for entries in seqs:
        c = validate(entries)
        diag = martingale_diag(c)
        ms, cms, cvs = brute_diag(entries)
        assert list(diag.m_values) == ms
        assert list(diag.cond_means) == cms
        assert list(diag.cond_vars) == cvs
        assert all(isinstance(v, Fraction) for v in diag.cond_vars)


def test_martingale_diag_frozen_small():
    diag = martingale_diag(validate((2, 0, 0)))
    assert diag.m_values[0] == Fraction(1, 3)
    assert diag.cond_means[0] == Fraction(1, 3)
    assert diag.cond_vars[0] == Fraction(2, 9)
    assert diag.variance_cap == Fraction(68, 27)  # 4(3+2*4/3)/9
    assert diag.increment_floor == Fraction(-4, 3)
    assert diag.all_ok


def test_martingale_identities_hold_on_shuffles():
    for n in (10, 50):
        base = validate(random_composition(n - 1, n, RandomStream(mix64(2, n))))
        for j in range(30):
            order = RandomStream(mix64(5, j)).shuffle(base.entries)
            assert martingale_violations(validate(order)) == (0, 0, 0)


def _report(c, trials=2500, seed=13, **kw):
    return monte_carlo_report(validate(c), trials=trials, seed=seed, **kw)


def test_report_grid_and_ranges():
    r = _report((2, 2, 1, 0, 0, 0))
    assert r.m.tolist() == list(range(r.rows))
    for emp in (r.emp_width_tail, r.emp_height_tail, r.emp_pathmax_tail,
                r.emp_prefixmin_tail):
        assert np.all((0.0 <= emp) & (emp <= 1.0))
        assert np.all(np.diff(emp) <= 0)
    assert r.emp_width_tail[0] == 1.0  # width >= 2 always
    assert r.emp_height_tail[0] == 1.0


def test_report_stops_where_bounds_become_negligible():
    r = _report((2, 2, 1, 0, 0, 0))
    last = r.rows - 1
    for col in (r.width_bound, r.height_bound, r.pathmax_bound,
                r.prefixmin_bound):
        assert col[last] < 1e-6
    assert max(
        r.width_bound[last - 1], r.height_bound[last - 1],
        r.pathmax_bound[last - 1], r.prefixmin_bound[last - 1],
    ) >= 1e-6


def test_report_csv_layout():
    r = _report((2, 2, 1, 0, 0, 0))
    lines = r.csv_text().splitlines()
    assert lines[0] == "# n=6"
    assert lines[1] == "# norm_sq=9"
    assert lines[2] == "# one_factor=1"
    assert lines[3] == "# trials=2500"
    assert lines[4] == "# seed=13"
    assert lines[5] == CSV_HEADER
    assert len(lines) == 6 + r.rows
    first = lines[6].split(",")
    assert first[0] == "0" and len(first) == 9
    assert first[2] == "3" and first[4] == "7" and first[6] == "3"


def test_report_nan_and_null_for_degenerate():
    r = _report((1, 1, 1, 0), trials=500)
    assert np.isnan(r.height_bound).all()
    row0 = r.csv_text().splitlines()[6].split(",")
    assert row0[4] == "nan"
    obj = r.to_json_obj()
    assert obj["rows"][0]["height_bound"] is None
    assert obj["meta"]["one_factor"] is None
    parsed = json.loads(r.json_text())
    assert parsed["meta"]["n"] == 4
    assert [row["m"] for row in parsed["rows"]] == r.m.tolist()


def test_report_deterministic_across_workers_and_backends():
    base = (2,) * 40 + (1,) * 3 + (0,) * 41
    r1 = _report(base, workers=1)
    r2 = _report(base, workers=4)
    assert r1.csv_text() == r2.csv_text()
    assert r1.json_text() == r2.json_text()
    assert "wall" not in r1.csv_text()  # timing is never rendered


def test_report_float_format_is_9_significant_digits():
    r = _report((2, 2, 1, 0, 0, 0))
    cell = r.csv_text().splitlines()[7].split(",")[2]
    assert cell == format(float(r.width_bound[1]), ".9g")
    assert len(cell.replace(".", "").replace("-", "").lstrip("0")) <= 9


def test_domination_flags_synthetic_failure():
    ms = np.arange(3)
    ones = np.ones(3)
    small = np.array([1.0, 0.9, 0.8])
    bound = np.array([3.0, 0.95, 0.5])
    r = TailReport(
        sequence_summary="synthetic", kind=OrderKind.BFS, n=10, norm_sq=20,
        one_factor=Fraction(1), trials=10_000, seed=0, m=ms,
        emp_width_tail=small, width_bound=bound,
        emp_height_tail=np.zeros(3), height_bound=np.full(3, np.nan),
        emp_pathmax_tail=np.zeros(3), pathmax_bound=ones * 3,
        emp_prefixmin_tail=np.zeros(3), prefixmin_bound=ones,
        wall_time_s=0.0, backend="python",
    )
    out = r.domination_violations()
    assert [(v.column, v.m) for v in out] == [("width", 2)]
    assert out[0].emp == 0.8 and out[0].bound == 0.5


def test_monte_carlo_report_no_violations_medium():
    r = _report((2,) * 100 + (0,) * 101, trials=4000, seed=3)
    assert r.domination_violations() == []
