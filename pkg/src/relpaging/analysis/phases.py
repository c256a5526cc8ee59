"""k-phase and x-block decompositions of a request sequence.

A k-phase is a maximal stretch, starting where the previous one ended, that
touches at most k distinct pages. A phase is *complete* when it touches
exactly k distinct pages; only the last phase can be incomplete. The final
phase counts as complete if it reaches k distinct pages even when nothing
follows it, which is what the ``b + k - 1`` and ``bk + k - 1`` fault bounds
need.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..engine import CacheConfig, fault_flags


@dataclass
class PhasePartition:
    k: int
    length: int
    boundaries: list[int]  # start index of each phase; empty for an empty sequence
    per_phase_distinct: list[int]
    per_phase_faults: dict[str, list[int]] = field(default_factory=dict)

    @property
    def complete_count(self) -> int:
        return sum(1 for d in self.per_phase_distinct if d == self.k)

    @property
    def closed_count(self) -> int:
        """Complete phases that are followed by at least one more request."""
        return sum(1 for i, d in enumerate(self.per_phase_distinct)
                   if d == self.k and i + 1 < len(self.boundaries))

    def spans(self) -> list[tuple[int, int]]:
        ends = self.boundaries[1:] + [self.length]
        return list(zip(self.boundaries, ends))

    def attach_faults(self, algorithm: str, flags: Sequence[bool]) -> list[int]:
        """Split per-request fault flags into per-phase counts and store them."""
        counts = [sum(flags[a:b]) for a, b in self.spans()]
        self.per_phase_faults[algorithm] = counts
        return counts

    def to_dict(self) -> dict:
        return {"k": self.k, "boundaries": self.boundaries,
                "complete_count": self.complete_count,
                "per_phase_distinct": self.per_phase_distinct,
                "per_phase_faults": self.per_phase_faults}


def k_phases(requests: Sequence[int], k: int) -> PhasePartition:
    if k < 1:
        raise ValueError("k must be >= 1")
    boundaries: list[int] = []
    distinct: list[int] = []
    seen: set[int] = set()
    for i, page in enumerate(requests):
        if not boundaries or (page not in seen and len(seen) == k):
            if boundaries:
                distinct.append(len(seen))
            boundaries.append(i)
            seen = set()
        seen.add(page)
    if boundaries:
        distinct.append(len(seen))
    return PhasePartition(k, len(requests), boundaries, distinct)


def phase_faults(algorithm: str, requests: Sequence[int], cfg: CacheConfig) -> PhasePartition:
    """k-phases of ``requests`` with ``algorithm``'s fault count in each."""
    part = k_phases(requests, cfg.k)
    part.attach_faults(algorithm.upper(), fault_flags(algorithm, requests, cfg))
    return part


@dataclass
class BlockPartition:
    x: int
    algorithm: str
    length: int
    boundaries: list[int]
    per_block_faults: list[int]

    @property
    def complete_count(self) -> int:
        return sum(1 for f in self.per_block_faults if f == self.x)

    def to_dict(self) -> dict:
        return {"x": self.x, "algorithm": self.algorithm, "boundaries": self.boundaries,
                "complete_count": self.complete_count, "per_block_faults": self.per_block_faults}


def x_blocks(requests: Sequence[int], algorithm: str, x: int, cfg: CacheConfig) -> BlockPartition:
    """Maximal blocks on which ``algorithm`` faults at most ``x`` times.

    A new block starts at the reference algorithm's (x+1)-th, (2x+1)-th, ...
    fault, so every block but the last holds exactly ``x`` faults.
    """
    if x < 1:
        raise ValueError("x must be >= 1")
    flags = fault_flags(algorithm, requests, cfg)
    boundaries: list[int] = []
    counts: list[int] = []
    for i, fault in enumerate(flags):
        if not boundaries or (fault and counts[-1] == x):
            boundaries.append(i)
            counts.append(0)
        if fault:
            counts[-1] += 1
    return BlockPartition(x, algorithm.upper(), len(requests), boundaries, counts)


def min_cost_lower_bound(b: int, k: int) -> int:
    """Fewest faults any algorithm can have on a sequence with b complete k-phases."""
    if b < 1:
        raise ValueError("b must be >= 1")
    return b + k - 1


def lru_upper_bound(b: int, k: int) -> int:
    """Most faults LRU can have on a sequence with b complete k-phases."""
    return b * k + k - 1
