"""Exact finite-n extremes of A(I) - B(I) over sequences respecting a graph,
and difference-ratio curves along a sequence family.

The search walks the graph depth-first. Each tree node carries a copy of
both pagers, so no prefix is simulated twice, and one traversal yields the
extremes for every length up to ``n``.
"""
from __future__ import annotations

import csv
import io
from dataclasses import asdict, dataclass
from fractions import Fraction

from ..engine import CacheConfig, count_faults, make_pager
from ..families import FamilySpec, expand
from ..graphs import AccessGraph

DEFAULT_BUDGET = 10**8


class BudgetExceeded(RuntimeError):
    """The search would need more simulation steps than the budget allows."""

    def __init__(self, needed: int, budget: int):
        super().__init__(f"exhaustive search needs {needed} simulation steps, budget is {budget}; refusing")
        self.needed = needed
        self.budget = budget


@dataclass
class Extremes:
    n: int
    min_diff: int
    max_diff: int
    min_witness: list[int]
    max_witness: list[int]
    sequences: int

    def to_dict(self) -> dict:
        return asdict(self)


def walk_counts(graph: AccessGraph, n: int) -> list[int]:
    """Number of graph-respecting sequences of each length 0..n."""
    per_end = {v: 1 for v in graph.vertices}
    counts = [1]
    for depth in range(1, n + 1):
        if depth > 1:
            per_end = {v: per_end[v] + sum(per_end[u] for u in graph.neighbors(v)) for v in graph.vertices}
        counts.append(sum(per_end.values()))
    return counts


def search_cost(graph: AccessGraph, n: int) -> int:
    """Simulation steps the search performs: two pager accesses per tree node."""
    return 2 * sum(walk_counts(graph, n)[1:])


def exhaustive_profile(a: str, b: str, graph: AccessGraph, k: int, n: int,
                       budget: int = DEFAULT_BUDGET) -> list[Extremes]:
    """Extremes of A(I) - B(I) for every length 1..n, in one traversal."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if budget <= 0:
        raise ValueError("budget must be positive")
    needed = search_cost(graph, n)
    if needed > budget:
        raise BudgetExceeded(needed, budget)
    cfg = CacheConfig(k, graph)
    succ = {v: sorted({v} | graph.neighbors(v)) for v in graph.vertices}
    lo = [None] * (n + 1)
    hi = [None] * (n + 1)
    lo_w: list[list[int]] = [[] for _ in range(n + 1)]
    hi_w: list[list[int]] = [[] for _ in range(n + 1)]
    path: list[int] = []

    def visit(page, pa, pb, diff):
        pa, pb = pa.copy(), pb.copy()
        diff += (not pa.access(page)[0]) - (not pb.access(page)[0])
        path.append(page)
        d = len(path)
        if lo[d] is None or diff < lo[d]:
            lo[d], lo_w[d] = diff, path.copy()
        if hi[d] is None or diff > hi[d]:
            hi[d], hi_w[d] = diff, path.copy()
        if d < n:
            for nxt in succ[page]:
                visit(nxt, pa, pb, diff)
        path.pop()

    root_a, root_b = make_pager(a, cfg), make_pager(b, cfg)
    for first in graph.vertices:
        visit(first, root_a, root_b, 0)
    counts = walk_counts(graph, n)
    return [Extremes(d, lo[d], hi[d], lo_w[d], hi_w[d], counts[d]) for d in range(1, n + 1)]


def exhaustive_minmax(a: str, b: str, graph: AccessGraph, k: int, n: int,
                      budget: int = DEFAULT_BUDGET) -> Extremes:
    """Exact min and max of A(I) - B(I) over all length-n sequences respecting ``graph``."""
    return exhaustive_profile(a, b, graph, k, n, budget)[-1]


CURVE_COLUMNS = ("family_id", "k", "N", "n", "len", "faults_A", "faults_B", "diff", "ratio")


@dataclass(frozen=True)
class CurvePoint:
    family_id: str
    k: int
    N: int
    n: int
    len: int
    faults_A: int
    faults_B: int
    diff: int
    ratio: Fraction

    def row(self) -> dict:
        d = asdict(self)
        d["ratio"] = f"{float(self.ratio):.6f}"
        return d


def diff_ratio_curve(a: str, b: str, family: FamilySpec, n_list) -> list[CurvePoint]:
    """(A(I_n) - B(I_n)) / |I_n| for each n, with ``family`` supplying k, N and r."""
    points = []
    for n in n_list:
        spec = FamilySpec(family.family_id, family.k, n, family.N, family.r)
        inst = expand(spec)
        cfg = CacheConfig(spec.k, inst.graph)
        fa = count_faults(a, inst.requests, cfg)
        fb = count_faults(b, inst.requests, cfg)
        length = len(inst.requests)
        ratio = Fraction(fa - fb, length) if length else Fraction(0)
        points.append(CurvePoint(spec.family_id, spec.k, inst.graph.n_vertices, n, length,
                                 fa, fb, fa - fb, ratio))
    return points


def curve_csv(points: list[CurvePoint]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CURVE_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for p in points:
        writer.writerow(p.row())
    return buf.getvalue()
