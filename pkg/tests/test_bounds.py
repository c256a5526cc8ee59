from fractions import Fraction as F
from math import ceil, floor, log2

import pytest

from relpaging.analysis.bounds import (
    UnsupportedInterval, analytic_interval, bounds_table, render_csv, render_markdown,
)
from relpaging.engine import ALGORITHMS

KS = range(2, 11)


def X(N, k):
    r = N - k
    x = floor(log2(N / r))
    return r * (x - 1) + ceil(N / 2 ** x)


def expected(graph, a, b, k, N=None):
    """Independent encoding of the summary table: (inner, outer)."""
    one = 1 - F(1, k)
    if graph == "complete":
        if (a, b) == ("FIFO", "LRU"):
            iv = (-1 + F(1, k), F(1, 2) - F(1, 4 * k - 2))
            return iv, iv
        if (a, b) in (("FWF", "LRU"), ("FWF", "FAR")):
            return (0, one), (0, one)
    if graph in ("complete", "path", "cycle") and (a, b) == ("FWF", "FIFO"):
        inner = (0, one) if k % 2 else (0, 1 - F(k + 1, k * k))
        return inner, (0, one)
    if graph == "path":
        if (a, b) in (("FIFO", "LRU"), ("FIFO", "FAR")):
            return (0, F(1, 2) - F(1, 2 * k)), (0, F(1, 2) - F(1, 2 * k))
        if (a, b) in (("FWF", "LRU"), ("FWF", "FAR")):
            return (0, one), (0, one)
    if graph == "star":
        if (a, b) in (("FIFO", "LRU"), ("FIFO", "FAR")):
            hi = F(1, 4) + F(1, 8 * k - 12)
            return ((-F(1, 2) + F(1, 2 * (k - 1)) + F(1, 2 * k * (k - 1)), hi),
                    (-F(1, 2) + F(1, 2 * (k - 1)), hi))
        if a == "FWF":
            return (0, F(1, 2)), (0, F(1, 2))
    if graph == "cycle":
        r, Xr = N - k, X(N, k)
        n_hat = N if N % 2 == 0 else N - 1
        if (a, b) == ("FIFO", "LRU"):
            hi = F(1, 2) - F(1, 4 * k - 2)
            return (-1 + F(r, k), hi), (-1 + F(1, k), hi)
        if (a, b) == ("FWF", "LRU"):
            return (0, one), (0, one)
        if (a, b) == ("LRU", "FAR"):
            return ((-F(r * (floor(log2(n_hat / r)) - 1), N - 1), 1 - F(Xr, k)),
                    (-F(Xr - 1, k), one))
        if (a, b) == ("FIFO", "FAR"):
            return (-F(Xr - r, k), 1 - F(Xr, k)), (-F(Xr - 1, k), one)
        if (a, b) == ("FWF", "FAR"):
            return (0, 1 - F(Xr, k)), (0, one)
    raise KeyError((graph, a, b))


ROWS = [("complete", "FIFO", "LRU"), ("complete", "FWF", "LRU"), ("complete", "FWF", "FAR"),
        ("complete", "FWF", "FIFO"), ("path", "FIFO", "LRU"), ("path", "FIFO", "FAR"),
        ("path", "FWF", "LRU"), ("path", "FWF", "FAR"), ("path", "FWF", "FIFO"),
        ("star", "FIFO", "LRU"), ("star", "FIFO", "FAR"), ("star", "FWF", "LRU"),
        ("star", "FWF", "FAR"), ("star", "FWF", "FIFO")]
CYCLE_PAIRS = [("FIFO", "LRU"), ("FWF", "LRU"), ("LRU", "FAR"), ("FIFO", "FAR"), ("FWF", "FAR"), ("FWF", "FIFO")]


def as_fractions(iv):
    return tuple(F(v) for v in iv)


@pytest.mark.parametrize("k", KS)
def test_table_rows_exact(k):
    for graph, a, b in ROWS:
        if graph == "star" and k < 3:
            continue
        rep = analytic_interval((a, b), graph, k)
        inner, outer = expected(graph, a, b, k)
        assert rep.inner == as_fractions(inner), (graph, a, b)
        assert rep.outer == as_fractions(outer), (graph, a, b)


@pytest.mark.parametrize("k", KS)
def test_cycle_rows_exact(k):
    for N in range(k + 1, 2 * k):
        for a, b in CYCLE_PAIRS:
            rep = analytic_interval((a, b), "cycle", k, N)
            inner, outer = expected("cycle", a, b, k, N)
            assert rep.inner == as_fractions(inner) and rep.outer == as_fractions(outer), (N, a, b)
            assert rep.extras["X_r"] == X(N, k)


def test_worked_examples():
    assert analytic_interval(("FIFO", "LRU"), "complete", 3).inner == (F(-2, 3), F(2, 5))
    assert analytic_interval(("FIFO", "LRU"), "path", 4).inner == (F(0), F(3, 8))
    assert analytic_interval(("FWF", "LRU"), "star", 5).inner == (F(0), F(1, 2))
    assert analytic_interval(("FIFO", "LRU"), "complete", 2, 3).outer == (F(-1, 2), F(1, 2) - F(1, 6))


def test_x_r_specialization():
    for k in range(2, 11):
        assert X(k + 1, k) == ceil(log2(k + 1))
        assert analytic_interval(("LRU", "FAR"), "cycle", k, k + 1).extras["X_r"] == ceil(log2(k + 1))


@pytest.mark.parametrize("k", KS)
def test_reversal_and_identity(k):
    for graph in ("complete", "path", "star", "custom"):
        for a in ALGORITHMS:
            for b in ALGORITHMS:
                if graph == "star" and k < 3:
                    continue
                fwd = analytic_interval((a, b), graph, k)
                back = analytic_interval((b, a), graph, k)
                assert fwd.outer == (-back.outer[1], -back.outer[0])
                if a == b:
                    assert fwd.exact and fwd.inner == (0, 0)


@pytest.mark.parametrize("k", KS)
def test_inner_within_outer(k):
    for graph, N in [("complete", None), ("path", None), ("star", None), ("custom", None)] + \
            [("cycle", N) for N in range(3, 2 * k + 3)]:
        for a in ALGORITHMS:
            for b in ALGORITHMS:
                rep = analytic_interval((a, b), graph, k, N)
                lo, hi = rep.outer
                assert -1 < lo <= hi < 1
                if rep.inner:
                    assert lo <= rep.inner[0] <= rep.inner[1] <= hi


def test_fallbacks():
    k = 4
    assert analytic_interval(("FAR", "FIFO"), "custom", k).outer == (F(-3, 4), F(3, 4))
    assert analytic_interval(("FWF", "FAR"), "custom", k).outer == (F(0), F(3, 4))
    assert analytic_interval(("LRU", "FWF"), "custom", k).outer == (F(-3, 4), F(0))
    assert analytic_interval(("FIFO", "LRU"), "custom", k).outer == (F(-3, 4), F(1, 2) - F(1, 14))
    rep = analytic_interval(("LRU", "FAR"), "cycle", k, 9)
    assert rep.inner is None and rep.outer == (F(-3, 4), F(3, 4))
    assert analytic_interval(("FIFO", "LRU"), "path", 5, 4).exact


def test_errors():
    with pytest.raises(UnsupportedInterval):
        analytic_interval(("FIFO", "OPT"), "path", 3)
    with pytest.raises(UnsupportedInterval):
        analytic_interval(("FIFO", "LRU"), "tree", 3)
    with pytest.raises(UnsupportedInterval):
        analytic_interval(("FIFO", "LRU"), "cycle", 3)
    with pytest.raises(UnsupportedInterval):
        analytic_interval(("FIFO", "LRU"), "path", 1)


def test_bounds_table_rows():
    rows = bounds_table(4, 6)
    lru_far = next(r for r in rows if r["graph"] == "cycle:6" and r["pair"] == "LRU,FAR")
    assert lru_far["outer_hi"] == "3/4"
    assert next(r for r in bounds_table(7, 8) if r["graph"] == "cycle:8")["X_r"] == 3
    path = next(r for r in bounds_table(3) if r["graph"] == "path" and r["pair"] == "FIFO,LRU")
    assert path["inner_hi"] == "1/3" and path["inner_hi_dec"] == "0.333333"
    assert not any(r["graph"].startswith("cycle") for r in bounds_table(4))


def test_renderers():
    rows = bounds_table(3, 5)
    csv_text = render_csv(rows)
    assert csv_text.splitlines()[0].startswith("graph,pair,inner_lo")
    assert len(csv_text.splitlines()) == len(rows) + 1
    md = render_markdown(rows)
    assert md.count("\n") == len(rows) + 2 and "| cycle:5 | LRU,FAR |" in md


def test_report_json_shape():
    d = analytic_interval(("LRU", "FAR"), "cycle", 4, 6).to_dict()
    assert d["analytic_outer"] == {"lo": "-1/2", "hi": "3/4", "lo_float": -0.5, "hi_float": 0.75}
    assert d["extras"] == {"X_r": 3} and d["exact"] is False
