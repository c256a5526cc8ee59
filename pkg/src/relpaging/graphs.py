"""Access graphs and the sequence-respects check.

Vertices are pages labelled 1..N. Self-transitions are always allowed by
:func:`respects` and are never stored as edges.
"""
from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

GRAPH_CLASSES = ("path", "star", "cycle", "complete", "custom")

_MIN_VERTICES = {"path": 2, "star": 3, "cycle": 3, "complete": 2, "custom": 1}


class GraphError(ValueError):
    """Raised for malformed graphs or graph parameters."""


class PageRangeError(ValueError):
    """A request names a page outside the graph's vertex range."""

    def __init__(self, index: int, page: int, n_vertices: int):
        super().__init__(f"request {index}: page {page} not in 1..{n_vertices}")
        self.index = index
        self.page = page


class EdgeViolation(ValueError):
    """Two consecutive requests are neither identical nor adjacent."""

    def __init__(self, index: int, prev: int, page: int):
        super().__init__(f"request {index}: {prev} -> {page} is not an edge")
        self.index = index
        self.prev = prev
        self.page = page


@dataclass(frozen=True, eq=False)
class AccessGraph:
    n_vertices: int
    adjacency: tuple[frozenset[int], ...]  # index 0 unused so adjacency[p] works
    class_tag: str = "custom"
    _edges: frozenset[tuple[int, int]] = field(default=frozenset(), repr=False)

    @property
    def N(self) -> int:
        return self.n_vertices

    @property
    def vertices(self) -> range:
        return range(1, self.n_vertices + 1)

    @property
    def star_center(self) -> int | None:
        return self.n_vertices if self.class_tag == "star" else None

    def neighbors(self, page: int) -> frozenset[int]:
        return self.adjacency[page]

    def edges(self) -> list[tuple[int, int]]:
        return sorted(self._edges)

    def has_page(self, page: int) -> bool:
        return isinstance(page, int) and 1 <= page <= self.n_vertices

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AccessGraph):
            return NotImplemented
        return self.n_vertices == other.n_vertices and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self.n_vertices, self._edges))

    @cached_property
    def distances(self) -> tuple[tuple[float, ...], ...]:
        """All-pairs hop distances by BFS from every vertex; ``inf`` if unreachable."""
        rows: list[tuple[float, ...]] = [()]
        for src in self.vertices:
            dist = [math.inf] * (self.n_vertices + 1)
            dist[src] = 0
            queue = deque([src])
            while queue:
                u = queue.popleft()
                for v in self.adjacency[u]:
                    if dist[v] == math.inf:
                        dist[v] = dist[u] + 1
                        queue.append(v)
            rows.append(tuple(dist))
        return tuple(rows)

    def descriptor(self) -> str:
        return f"{self.class_tag}:{self.n_vertices}"

    def to_dict(self) -> dict:
        return {
            "n_vertices": self.n_vertices,
            "class_tag": self.class_tag,
            "edges": [list(e) for e in self.edges()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_dot(self) -> str:
        lines = ["graph G {"]
        lines += [f"  {v};" for v in self.vertices]
        lines += [f"  {u} -- {v};" for u, v in self.edges()]
        lines.append("}")
        return "\n".join(lines) + "\n"


def _build(n: int, edges: Iterable[tuple[int, int]], class_tag: str) -> AccessGraph:
    adj: list[set[int]] = [set() for _ in range(n + 1)]
    canon = set()
    for u, v in edges:
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside 1..{n}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        adj[u].add(v)
        adj[v].add(u)
        canon.add((min(u, v), max(u, v)))
    return AccessGraph(n, tuple(frozenset(s) for s in adj), class_tag, frozenset(canon))


def make_graph(class_tag: str, n: int) -> AccessGraph:
    """Build a path, star, cycle, or complete graph on vertices 1..n.

    The star's center is vertex ``n``; leaves are 1..n-1.
    """
    if class_tag not in _MIN_VERTICES or class_tag == "custom":
        raise GraphError(f"unknown graph class {class_tag!r}")
    if n < _MIN_VERTICES[class_tag]:
        raise GraphError(f"{class_tag} graph needs at least {_MIN_VERTICES[class_tag]} vertices, got {n}")
    if class_tag == "path":
        edges = [(i, i + 1) for i in range(1, n)]
    elif class_tag == "cycle":
        edges = [(i, i % n + 1) for i in range(1, n + 1)]
    elif class_tag == "star":
        edges = [(leaf, n) for leaf in range(1, n)]
    else:
        edges = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    return _build(n, edges, class_tag)


def make_custom_graph(n: int, edges: Iterable[Sequence[int]]) -> AccessGraph:
    if n < 1:
        raise GraphError("graph needs at least one vertex")
    return _build(n, [(int(u), int(v)) for u, v in edges], "custom")


def parse_graph_spec(spec: str) -> AccessGraph:
    """Parse ``class:N`` as used on the command line, e.g. ``cycle:8``."""
    try:
        tag, n = spec.split(":")
        return make_graph(tag.strip(), int(n))
    except ValueError as exc:
        if isinstance(exc, GraphError):
            raise
        raise GraphError(f"bad graph spec {spec!r}; expected class:N") from exc


def graph_from_dict(data: dict) -> AccessGraph:
    n = int(data["n_vertices"])
    tag = data.get("class_tag", "custom")
    edges = [tuple(e) for e in data.get("edges", [])]
    if tag in ("path", "star", "cycle", "complete"):
        g = make_graph(tag, n)
        if edges and set(map(lambda e: (min(e), max(e)), edges)) != set(g.edges()):
            raise GraphError(f"edge list does not match a {tag} graph on {n} vertices")
        return g
    return make_custom_graph(n, edges)


def graph_from_json(text: str) -> AccessGraph:
    return graph_from_dict(json.loads(text))


def normalize_cycle(page: int, n: int) -> int:
    """Reduce a cycle label modulo n into 1..n."""
    return (page - 1) % n + 1


def check_respects(requests: Sequence[int], graph: AccessGraph) -> None:
    """Raise :class:`PageRangeError` or :class:`EdgeViolation` on the first problem."""
    prev = None
    for i, page in enumerate(requests):
        if not graph.has_page(page):
            raise PageRangeError(i, page, graph.n_vertices)
        if prev is not None and page != prev and page not in graph.adjacency[prev]:
            raise EdgeViolation(i, prev, page)
        prev = page


def respects(requests: Sequence[int], graph: AccessGraph) -> bool:
    """True iff every consecutive pair is identical or adjacent in ``graph``.

    Out-of-range pages raise :class:`PageRangeError` rather than returning False,
    so that a bad page id is never confused with a missing edge.
    """
    try:
        check_respects(requests, graph)
    except EdgeViolation:
        return False
    return True


def random_walk(graph: AccessGraph, length: int, rng) -> list[int]:
    """A uniformly stepping walk that respects ``graph``; staying put is one option per step."""
    if length <= 0:
        return []
    page = rng.randint(1, graph.n_vertices)
    walk = [page]
    for _ in range(length - 1):
        page = rng.choice((page, *sorted(graph.adjacency[page])))
        walk.append(page)
    return walk
