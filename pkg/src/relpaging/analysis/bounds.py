"""Analytic relative-interval bounds as exact rationals.

Each result is an inner interval (values known to be reached) and an outer
interval (values known not to be exceeded). When they coincide the interval
is known exactly. Reversing a pair negates and swaps both endpoints, since
``Max(A, B) = -Min(B, A)``.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction as F

from ..engine import ALGORITHMS
from .cycle_model import floor_log2_ratio, xr

Interval = tuple[F, F]
GRAPH_CLASSES = ("complete", "path", "star", "cycle", "custom")


class UnsupportedInterval(ValueError):
    pass


@dataclass
class IntervalReport:
    pair: tuple[str, str]
    graph: str
    k: int
    N: int | None
    inner: Interval | None
    outer: Interval | None
    source: str
    empirical: dict | None = None
    extras: dict = field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return self.inner is not None and self.inner == self.outer

    def to_dict(self) -> dict:
        def enc(iv):
            if iv is None:
                return None
            return {"lo": str(iv[0]), "hi": str(iv[1]),
                    "lo_float": round(float(iv[0]), 6), "hi_float": round(float(iv[1]), 6)}
        out = {"pair": list(self.pair), "graph": self.graph, "k": self.k, "N": self.N,
               "analytic_inner": enc(self.inner), "analytic_outer": enc(self.outer),
               "exact": self.exact, "source": self.source}
        if self.extras:
            out["extras"] = self.extras
        if self.empirical is not None:
            out["empirical"] = self.empirical
        return out


def _same(lo, hi) -> tuple[Interval, Interval]:
    iv = (F(lo), F(hi))
    return iv, iv


def _general(a: str, b: str, k: int) -> tuple[Interval | None, Interval, str]:
    """Bounds valid on every access graph, for any pair of the four algorithms."""
    lo, hi = F(-1) + F(1, k), F(1) - F(1, k)
    fifo_lru_hi = F(1, 2) - F(1, 4 * k - 2)
    if (a, b) == ("FIFO", "LRU"):
        return None, (lo, fifo_lru_hi), "FIFO vs LRU on any graph"
    if (a, b) == ("LRU", "FIFO"):
        return None, (-fifo_lru_hi, hi), "FIFO vs LRU on any graph (reversed)"
    if a == "FWF":
        lo = F(0)
    if b == "FWF":
        hi = F(0)
    return None, (lo, hi), "conservative/marking bound with FWF dominance"


def _complete(a, b, k):
    if (a, b) in (("FIFO", "LRU"), ("FIFO", "FAR")):
        return (*_same(F(-1) + F(1, k), F(1, 2) - F(1, 4 * k - 2)), "FIFO vs LRU, unrestricted sequences")
    if (a, b) in (("FWF", "LRU"), ("FWF", "FAR")):
        return (*_same(0, F(1) - F(1, k)), "FWF vs LRU/FAR with a (k+1)-path available")
    if (a, b) == ("FAR", "LRU"):
        return (*_same(0, 0), "FAR evicts like LRU when all distances are equal")
    return None


def _fwf_fifo(k):
    outer = (F(0), F(1) - F(1, k))
    if k % 2:
        return outer, outer, "FWF vs FIFO, odd k"
    return (F(0), F(1) - F(k + 1, k * k)), outer, "FWF vs FIFO, even k"


def _path(a, b, k):
    if (a, b) in (("FIFO", "LRU"), ("FIFO", "FAR")):
        return (*_same(0, F(1, 2) - F(1, 2 * k)), "FIFO vs LRU/FAR on paths")
    if (a, b) in (("FWF", "LRU"), ("FWF", "FAR")):
        return (*_same(0, F(1) - F(1, k)), "FWF vs LRU/FAR on paths")
    if (a, b) == ("FAR", "LRU"):
        return (*_same(0, 0), "FAR and LRU coincide on paths")
    return None


def _star(a, b, k):
    if k < 3:
        return None
    if (a, b) in (("FIFO", "LRU"), ("FIFO", "FAR")):
        hi = F(1, 4) + F(1, 8 * k - 12)
        outer_lo = F(-1, 2) + F(1, 2 * (k - 1))
        inner_lo = outer_lo + F(1, 2 * k * (k - 1))
        return (inner_lo, hi), (outer_lo, hi), "FIFO vs LRU/FAR on stars"
    if a == "FWF" and b in ("LRU", "FAR", "FIFO"):
        return (*_same(0, F(1, 2)), "FWF on stars")
    if (a, b) == ("FAR", "LRU"):
        return (*_same(0, 0), "FAR and LRU coincide on stars")
    return None


def _cycle(a, b, k, N):
    r = N - k
    if not 1 <= r <= k - 1:
        return None
    model = xr(N, k)
    X = model.X_r
    general = F(1) - F(1, k)
    if (a, b) == ("FIFO", "LRU"):
        hi = F(1, 2) - F(1, 4 * k - 2)
        return (F(-1) + F(r, k), hi), (F(-1) + F(1, k), hi), "FIFO vs LRU on cycles"
    if (a, b) == ("FWF", "LRU"):
        return (*_same(0, general), "FWF vs LRU on cycles")
    if (a, b) == ("LRU", "FAR"):
        x_hat = floor_log2_ratio(model.N_hat, r)
        inner = (F(-r * (x_hat - 1), N - 1), F(1) - F(X, k))
        return inner, (-F(X - 1, k), general), "LRU vs FAR on cycles"
    if (a, b) == ("FIFO", "FAR"):
        return (-F(X - r, k), F(1) - F(X, k)), (-F(X - 1, k), general), "FIFO vs FAR on cycles"
    if (a, b) == ("FWF", "FAR"):
        return (F(0), F(1) - F(X, k)), (F(0), general), "FWF vs FAR on cycles"
    return None


def _lookup(a, b, graph_class, k, N):
    if graph_class == "complete":
        return _complete(a, b, k)
    if graph_class == "path":
        return _path(a, b, k)
    if graph_class == "star":
        return _star(a, b, k)
    if graph_class == "cycle":
        return _cycle(a, b, k, N)
    return None


def _negate(iv: Interval | None) -> Interval | None:
    return None if iv is None else (-iv[1], -iv[0])


def analytic_interval(pair, graph_class: str, k: int, N: int | None = None) -> IntervalReport:
    """Known inner and outer bounds on the relative interval of ``pair`` on a graph class.

    ``N`` is required for cycles. For other classes it is optional and only
    matters when ``N <= k``, where every algorithm just loads each page once.
    """
    a, b = (p.upper() for p in pair)
    for alg in (a, b):
        if alg not in ALGORITHMS:
            raise UnsupportedInterval(f"unknown algorithm {alg!r}")
    if graph_class not in GRAPH_CLASSES:
        raise UnsupportedInterval(f"unknown graph class {graph_class!r}")
    if k < 2:
        raise UnsupportedInterval("analytic bounds need k >= 2")
    if graph_class == "cycle" and N is None:
        raise UnsupportedInterval("cycle bounds need N")
    graph = f"{graph_class}:{N}" if N is not None else graph_class
    extras = {}
    if graph_class == "cycle" and 1 <= N - k <= k - 1:
        extras["X_r"] = xr(N, k).X_r

    def report(inner, outer, source):
        return IntervalReport((a, b), graph, k, N, inner, outer, source, extras=extras)

    if a == b:
        return report(*_same(0, 0), "identical algorithms")
    if N is not None and N <= k:
        return report(*_same(0, 0), "all pages fit in the cache")
    if (a, b) == ("FWF", "FIFO") and graph_class in ("complete", "path", "cycle"):
        return report(*_fwf_fifo(k))
    found = _lookup(a, b, graph_class, k, N)
    if found is not None:
        return report(*found)
    found = _lookup(b, a, graph_class, k, N)
    if found is not None:
        inner, outer, source = found
        return report(_negate(inner), _negate(outer), source + " (reversed)")
    return report(*_general(a, b, k))


TABLE_ROWS = (
    ("complete", ("FIFO", "LRU")), ("complete", ("FWF", "LRU")), ("complete", ("FWF", "FAR")),
    ("complete", ("FWF", "FIFO")),
    ("path", ("FIFO", "LRU")), ("path", ("FIFO", "FAR")), ("path", ("FWF", "LRU")),
    ("path", ("FWF", "FAR")), ("path", ("FWF", "FIFO")),
    ("star", ("FIFO", "LRU")), ("star", ("FIFO", "FAR")), ("star", ("FWF", "LRU")),
    ("star", ("FWF", "FAR")), ("star", ("FWF", "FIFO")),
    ("cycle", ("FIFO", "LRU")), ("cycle", ("FWF", "LRU")), ("cycle", ("LRU", "FAR")),
    ("cycle", ("FIFO", "FAR")), ("cycle", ("FWF", "FAR")), ("cycle", ("FWF", "FIFO")),
)

TABLE_COLUMNS = ("graph", "pair", "inner_lo", "inner_hi", "outer_lo", "outer_hi",
                 "inner_lo_dec", "inner_hi_dec", "outer_lo_dec", "outer_hi_dec", "exact", "X_r")


def bounds_table(k: int, N: int | None = None) -> list[dict]:
    """One row per summary-table entry; cycle rows appear only when k < N < 2k."""
    rows = []
    for graph_class, pair in TABLE_ROWS:
        if graph_class == "cycle" and (N is None or not 1 <= N - k <= k - 1):
            continue
        if graph_class == "star" and k < 3:
            continue
        rep = analytic_interval(pair, graph_class, k, N if graph_class == "cycle" else None)
        inner, outer = rep.inner or (None, None), rep.outer
        row = {"graph": rep.graph, "pair": f"{pair[0]},{pair[1]}"}
        for name, value in zip(("inner_lo", "inner_hi", "outer_lo", "outer_hi"), (*inner, *outer)):
            row[name] = "" if value is None else str(value)
            row[name + "_dec"] = "" if value is None else f"{float(value):.6f}"
        row["exact"] = "yes" if rep.exact else "no"
        row["X_r"] = rep.extras.get("X_r", "")
        rows.append(row)
    return rows


def render_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=TABLE_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def render_markdown(rows: list[dict]) -> str:
    head = ("graph", "pair", "inner", "outer", "exact", "X_r")
    lines = ["| " + " | ".join(head) + " |", "|" + "---|" * len(head)]
    for row in rows:
        if row["inner_lo"]:
            inner = f"[{row['inner_lo']}, {row['inner_hi']}] ≈ [{row['inner_lo_dec']}, {row['inner_hi_dec']}]"
        else:
            inner = ""
        outer = f"[{row['outer_lo']}, {row['outer_hi']}] ≈ [{row['outer_lo_dec']}, {row['outer_hi_dec']}]"
        lines.append(f"| {row['graph']} | {row['pair']} | {inner} | {outer} | {row['exact']} | {row['X_r']} |")
    return "\n".join(lines) + "\n"
