"""Deterministic LRU, FIFO, FWF and FAR simulation.

Every algorithm starts from an empty cache and does demand paging: a page is
evicted only when a fault arrives with ``k`` pages already resident.

Two surfaces are offered. :func:`step` is a pure function over immutable
:class:`EngineState` values. :func:`simulate` and the exhaustive search use
the mutable :class:`Pager` objects underneath, which are cheap to copy.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .graphs import AccessGraph, PageRangeError, check_respects

ALGORITHMS = ("LRU", "FIFO", "FWF", "FAR")
HIT, FAULT = "hit", "fault"


@dataclass(frozen=True)
class CacheConfig:
    k: int
    graph: AccessGraph

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"cache size must be >= 1, got {self.k}")


@dataclass(frozen=True)
class EngineState:
    algorithm: str
    resident: frozenset[int] = frozenset()
    recency: tuple[int, ...] = ()  # least recent first
    arrival: tuple[int, ...] = ()  # oldest first
    marks: frozenset[int] = frozenset()
    clock: int = 0  # requests served so far


@dataclass(frozen=True)
class StepOutcome:
    request_index: int
    page: int
    kind: str
    evicted: tuple[int, ...] = ()

    @property
    def is_fault(self) -> bool:
        return self.kind == FAULT

    def to_dict(self) -> dict:
        return {"i": self.request_index, "page": self.page, "kind": self.kind,
                "evicted": list(self.evicted)}


@dataclass
class SimulationTrace:
    algorithm: str
    k: int
    graph: str
    outcomes: list[StepOutcome]
    total_faults: int
    per_phase_faults: list[int] = field(default_factory=list)

    @property
    def length(self) -> int:
        return len(self.outcomes)

    def fault_flags(self) -> list[bool]:
        return [o.is_fault for o in self.outcomes]

    def summary(self) -> dict:
        return {"algorithm": self.algorithm, "k": self.k, "graph": self.graph,
                "faults": self.total_faults, "length": self.length}

    def to_jsonl(self) -> str:
        return "".join(json.dumps(o.to_dict()) + "\n" for o in self.outcomes)


def far_distance(page: int, marked: Iterable[int], graph: AccessGraph) -> float:
    """Hop distance from ``page`` to its nearest marked page.

    Returns ``math.inf`` when no marked page is reachable.
    """
    marked = list(marked)
    if not marked:
        raise ValueError("far_distance needs at least one marked page")
    row = graph.distances[page]
    return min(row[m] for m in marked)


class Pager:
    """Mutable cache for one algorithm. ``access`` returns ``(hit, evicted)``."""

    algorithm = ""

    def __init__(self, cfg: CacheConfig):
        self.k = cfg.k
        self.graph = cfg.graph
        self.clock = 0

    def access(self, page: int) -> tuple[bool, tuple[int, ...]]:
        raise NotImplementedError

    def copy(self) -> "Pager":
        raise NotImplementedError

    def state(self) -> EngineState:
        raise NotImplementedError

    def load(self, state: EngineState) -> None:
        raise NotImplementedError


class LRUPager(Pager):
    algorithm = "LRU"

    def __init__(self, cfg):
        super().__init__(cfg)
        self.order: list[int] = []

    def access(self, page):
        self.clock += 1
        order = self.order
        if page in order:
            order.remove(page)
            order.append(page)
            return True, ()
        evicted = (order.pop(0),) if len(order) >= self.k else ()
        order.append(page)
        return False, evicted

    def copy(self):
        other = LRUPager.__new__(LRUPager)
        other.k, other.graph, other.clock = self.k, self.graph, self.clock
        other.order = self.order.copy()
        return other

    def state(self):
        return EngineState("LRU", frozenset(self.order), tuple(self.order), (), frozenset(), self.clock)

    def load(self, state):
        self.order = list(state.recency)
        self.clock = state.clock


class FIFOPager(Pager):
    algorithm = "FIFO"

    def __init__(self, cfg):
        super().__init__(cfg)
        self.queue: list[int] = []

    def access(self, page):
        self.clock += 1
        queue = self.queue
        if page in queue:
            return True, ()
        evicted = (queue.pop(0),) if len(queue) >= self.k else ()
        queue.append(page)
        return False, evicted

    def copy(self):
        other = FIFOPager.__new__(FIFOPager)
        other.k, other.graph, other.clock = self.k, self.graph, self.clock
        other.queue = self.queue.copy()
        return other

    def state(self):
        return EngineState("FIFO", frozenset(self.queue), (), tuple(self.queue), frozenset(), self.clock)

    def load(self, state):
        self.queue = list(state.arrival)
        self.clock = state.clock


class FWFPager(Pager):
    """Flush-when-full. Every resident page is marked; a flush clears all marks."""

    algorithm = "FWF"

    def __init__(self, cfg):
        super().__init__(cfg)
        self.resident: set[int] = set()

    def access(self, page):
        self.clock += 1
        resident = self.resident
        if page in resident:
            return True, ()
        evicted = ()
        if len(resident) >= self.k:
            evicted = tuple(sorted(resident))
            resident.clear()
        resident.add(page)
        return False, evicted

    def copy(self):
        other = FWFPager.__new__(FWFPager)
        other.k, other.graph, other.clock = self.k, self.graph, self.clock
        other.resident = self.resident.copy()
        return other

    def state(self):
        res = frozenset(self.resident)
        return EngineState("FWF", res, (), (), res, self.clock)

    def load(self, state):
        self.resident = set(state.resident)
        self.clock = state.clock


class FARPager(Pager):
    """Marking algorithm evicting the unmarked page farthest from the marked set.

    The requested page is marked before the victim is chosen, so distances on a
    phase-starting fault are measured from the new page alone. Ties go to the
    least recently used candidate.
    """

    algorithm = "FAR"

    def __init__(self, cfg):
        super().__init__(cfg)
        self.order: list[int] = []  # least recent first
        self.marks: set[int] = set()
        self._dist = cfg.graph.distances

    def access(self, page):
        self.clock += 1
        order, marks = self.order, self.marks
        if page in order:
            order.remove(page)
            order.append(page)
            marks.add(page)
            return True, ()
        evicted = ()
        if len(order) >= self.k:
            if len(marks) >= len(order):
                marks.clear()
            marks.add(page)
            dist = self._dist
            victim, best = None, -1.0
            for q in order:
                if q in marks:
                    continue
                row = dist[q]
                d = min(row[m] for m in marks)
                if d > best:
                    victim, best = q, d
            order.remove(victim)
            evicted = (victim,)
        else:
            marks.add(page)
        order.append(page)
        return False, evicted

    def copy(self):
        other = FARPager.__new__(FARPager)
        other.k, other.graph, other.clock = self.k, self.graph, self.clock
        other.order = self.order.copy()
        other.marks = self.marks.copy()
        other._dist = self._dist
        return other

    def state(self):
        return EngineState("FAR", frozenset(self.order), tuple(self.order), (),
                           frozenset(self.marks), self.clock)

    def load(self, state):
        self.order = list(state.recency)
        self.marks = set(state.marks)
        self.clock = state.clock


_PAGERS = {cls.algorithm: cls for cls in (LRUPager, FIFOPager, FWFPager, FARPager)}


def make_pager(algorithm: str, cfg: CacheConfig) -> Pager:
    try:
        return _PAGERS[algorithm.upper()](cfg)
    except KeyError:
        raise ValueError(f"unknown algorithm {algorithm!r}; choose from {', '.join(ALGORITHMS)}") from None


def initial_state(algorithm: str) -> EngineState:
    algorithm = algorithm.upper()
    if algorithm not in _PAGERS:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    return EngineState(algorithm)


def step(state: EngineState, page: int, cfg: CacheConfig) -> tuple[EngineState, StepOutcome]:
    """Serve one request from ``state`` and return the successor state."""
    if not cfg.graph.has_page(page):
        raise PageRangeError(state.clock, page, cfg.graph.n_vertices)
    pager = make_pager(state.algorithm, cfg)
    pager.load(state)
    index = state.clock
    hit, evicted = pager.access(page)
    return pager.state(), StepOutcome(index, page, HIT if hit else FAULT, evicted)


def simulate(algorithm: str, requests: Sequence[int], cfg: CacheConfig,
             validate: bool = True) -> SimulationTrace:
    """Run ``algorithm`` over ``requests`` from an empty cache."""
    if validate:
        check_respects(requests, cfg.graph)
    else:
        for i, page in enumerate(requests):
            if not cfg.graph.has_page(page):
                raise PageRangeError(i, page, cfg.graph.n_vertices)
    pager = make_pager(algorithm, cfg)
    outcomes = []
    faults = 0
    for i, page in enumerate(requests):
        hit, evicted = pager.access(page)
        if not hit:
            faults += 1
        outcomes.append(StepOutcome(i, page, HIT if hit else FAULT, evicted))
    return SimulationTrace(pager.algorithm, cfg.k, cfg.graph.descriptor(), outcomes, faults)


def fault_flags(algorithm: str, requests: Sequence[int], cfg: CacheConfig) -> list[bool]:
    """Per-request fault indicators, without validation or trace objects."""
    pager = make_pager(algorithm, cfg)
    return [not pager.access(p)[0] for p in requests]


def count_faults(algorithm: str, requests: Sequence[int], cfg: CacheConfig) -> int:
    return sum(fault_flags(algorithm, requests, cfg))
