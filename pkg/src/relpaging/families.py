"""Adversarial request-sequence families with closed-form fault counts.

Each generator returns ``(requests, prediction)``. Predicted counts are exact
values for the whole sequence unless ``prediction.scope_start`` is nonzero, in
which case they cover ``requests[scope_start:]`` only. Per-phase predictions
(``per_phase``) apply to every complete k-phase that is followed by more
requests, ignoring phases that start before ``phase_origin`` and then the
first ``phase_skip`` of the rest.

Star sequences use the highest vertex as the center. Cycle sequences are
reduced modulo N into 1..N before being returned.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from math import lcm

from .graphs import AccessGraph, make_graph, normalize_cycle
from .analysis.cycle_model import turning_phase_faults, xr


class FamilyParameterError(ValueError):
    pass


@dataclass(frozen=True)
class FamilySpec:
    family_id: str
    k: int
    n: int
    N: int | None = None
    r: int | None = None


@dataclass
class FamilyPrediction:
    length: int
    predicted_faults: dict[str, int]
    source: str
    scope_start: int = 0
    per_phase: dict[str, int] = field(default_factory=dict)
    phase_skip: int = 1
    phase_origin: int = 0
    equal_on_prefix: tuple[str, ...] = ()


@dataclass
class FamilyInstance:
    spec: FamilySpec
    graph: AccessGraph
    requests: list[int]
    prediction: FamilyPrediction

    def to_dict(self) -> dict:
        params = {k: v for k, v in asdict(self.spec).items() if k != "family_id" and v is not None}
        pred = {"length": self.prediction.length, "faults": self.prediction.predicted_faults}
        if self.prediction.scope_start:
            pred["scope_start"] = self.prediction.scope_start
        if self.prediction.per_phase:
            pred["per_phase"] = self.prediction.per_phase
            pred["phase_skip"] = self.prediction.phase_skip
            pred["phase_origin"] = self.prediction.phase_origin
        return {"family_id": self.spec.family_id, "params": params,
                "graph": self.graph.to_dict(), "sequence": self.requests, "predictions": pred}


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise FamilyParameterError(msg)


def _interleave(leaves, center: int) -> list[int]:
    out = []
    for leaf in leaves:
        out += [leaf, center]
    return out


def gen_path_zigzag(k: int, n: int):
    """<1, 2, ..., k+1, k, ..., 2>^n on the path with k+1 vertices."""
    _require(k >= 2, "path zigzag needs k >= 2")
    _require(n >= 0, "n must be >= 0")
    block = list(range(1, k + 2)) + list(range(k, 1, -1))
    seq = block * n
    if n == 0:
        faults = {"LRU": 0, "FAR": 0, "FIFO": 0, "FWF": 0}
    else:
        faults = {"LRU": 2 * n + k - 1, "FAR": 2 * n + k - 1,
                  "FIFO": (k + 1) * n, "FWF": 2 * k * n}
    return seq, FamilyPrediction(2 * k * n, faults, "path zigzag: LRU=FAR=2n+k-1, FWF=2kn, FIFO=(k+1)n")


def gen_fwf_fifo_path(k: int, n: int):
    """Prefix R (plus page k when k is even) that fixes FIFO's queue order,
    followed by K_n = J^n with J = <k+1, k, ..., 1, 2, ..., k>^h, h = floor((k+1)/2).

    Predictions cover the K_n portion.
    """
    _require(k >= 3, "FWF-vs-FIFO path family needs k >= 3")
    _require(n >= 0, "n must be >= 0")
    h = (k + 1) // 2
    prefix = [h]
    for i in range(1, h):
        down = list(range(h + i, h - i - 1, -1))  # h+i, ..., h-i
        up = list(range(h - i + 1, h + i + 1))  # h-i+1, ..., h+i
        prefix += down + up
    if k % 2 == 0:
        prefix.append(k)
    sweep = list(range(k + 1, 0, -1)) + list(range(2, k + 1))
    body = sweep * (h * n)
    pred = FamilyPrediction(
        length=len(prefix) + 2 * k * h * n,
        predicted_faults={"FWF": 2 * k * h * n, "FIFO": (k + 1) * n},
        source="FWF vs FIFO on paths: FWF=2khn, FIFO=(k+1)n on K_n",
        scope_start=len(prefix),
        equal_on_prefix=("FWF", "FIFO"),
    )
    return prefix + body, pred


def _star_prefix(k: int, s: int) -> list[int]:
    return _interleave(range(1, k), s)


def gen_star_min(k: int, n: int, N: int | None = None):
    """<P, J^n> with J = B_1..B_{k-1}, every B_i = <k, s, k-1, s, ..., 1, s>."""
    _require(k >= 3, "star-min family needs k >= 3")
    N = k + 1 if N is None else N
    _require(N >= k + 1, "star needs N >= k+1")
    s = N
    prefix = _interleave(list(range(1, k)) + list(range(k - 2, 0, -1)), s)
    block = _interleave(range(k, 0, -1), s)
    seq = prefix + block * ((k - 1) * n)
    if n == 0:
        faults = {}
    else:
        lru = k + (k - 1) * k * n
        faults = {"LRU": lru, "FAR": lru, "FIFO": k + (k + 1) * n}
    return seq, FamilyPrediction(2 * (2 * k - 3) + 2 * k * (k - 1) * n, faults,
                                 "star Min: LRU=k+(k-1)kn, FIFO=k+(k+1)n")


def _star_max_rows(k: int, s: int) -> list[int]:
    rows = []
    for j in range(k):
        center = k - j
        side = [(center + t - 1) % k + 1 for t in range(1, k - 1)]  # center+1 .. center+k-2 mod k
        rows += _interleave(side[::-1] + [center] + side, s)
    return rows


def gen_star_max(k: int, n: int, N: int | None = None):
    """<P, B^n>; row j of B is centered on leaf k-j and LRU faults only there."""
    _require(k >= 3, "star-max family needs k >= 3")
    N = k + 1 if N is None else N
    _require(N >= k + 1, "star needs N >= k+1")
    s = N
    seq = _star_prefix(k, s) + _star_max_rows(k, s) * n
    faults = {"LRU": k + k * n, "FAR": k + k * n, "FIFO": k + k * k * n}
    return seq, FamilyPrediction(2 * (k - 1) + (4 * k - 6) * k * n, faults,
                                 "star Max: LRU=k+kn, FIFO=k+k^2 n")


def gen_star_fwf_lru(k: int, n: int, N: int | None = None):
    """<P, (B_1, B_2)^n> with B_1 = <k, s, ..., 2, s> and B_2 = <1, s, ..., k-1, s>."""
    _require(k >= 3, "star FWF family needs k >= 3")
    N = k + 1 if N is None else N
    _require(N >= k + 1, "star needs N >= k+1")
    s = N
    b1 = _interleave(range(k, 1, -1), s)
    b2 = _interleave(range(1, k), s)
    seq = _star_prefix(k, s) + (b1 + b2) * n
    faults = {"LRU": 2 * n + k, "FAR": 2 * n + k, "FWF": 2 * k * n + k}
    return seq, FamilyPrediction(4 * (k - 1) * n + 2 * (k - 1), faults,
                                 "star FWF vs LRU: LRU=2n+k, FWF=2kn+k")


def _i_free_rows(k: int, s: int) -> list[int]:
    rows = []
    for i in range(1, k + 1):
        start = (i - 2) % k + 1  # i-1, with 0 read as k
        leaves = [(start - t - 1) % k + 1 for t in range(k - 1)]  # descending cyclically, skips i
        rows += _interleave(leaves, s)
    return rows


def gen_star_fwf_fifo(k: int, n: int, N: int | None = None):
    """<P, B^n> where row i of B visits every leaf of 1..k except i."""
    _require(k >= 3, "star FWF family needs k >= 3")
    N = k + 1 if N is None else N
    _require(N >= k + 1, "star needs N >= k+1")
    s = N
    seq = _star_prefix(k, s) + _i_free_rows(k, s) * n
    faults = {"FIFO": k * n + k, "FWF": k * k * n + k}
    return seq, FamilyPrediction(2 * (k - 1) + 2 * (k - 1) * k * n, faults,
                                 "star FWF vs FIFO: FIFO=kn+k, FWF=k^2 n+k")


def cycle_rows_count(k: int, r: int) -> int:
    N = k + r
    return lcm(N, r) // r


def gen_cycle_rows(k: int, r: int, n: int):
    """J_n = <P, B^n> on C_{k+r}; row j of B walks down k pages from j*r."""
    _require(k >= 2, "cycle rows family needs k >= 2")
    _require(1 <= r <= k - 1, f"r must lie in 1..{k - 1}")
    _require(n >= 0, "n must be >= 0")
    N = k + r
    R = cycle_rows_count(k, r)
    prefix = list(range(1, N + 1)) + list(range(1, r))
    rows = []
    for j in range(1, R + 1):
        rows += [normalize_cycle(j * r - t, N) for t in range(k)]
    seq = prefix + rows * n
    if n == 0:
        faults = {}
    else:
        lru = N + r - k + k * R * n
        faults = {"FIFO": N + r * R * n, "LRU": lru, "FWF": lru}
    pred = FamilyPrediction(N + r - 1 + k * R * n, faults,
                            "cycle Min: FIFO=N+rRn, LRU=FWF=N+r-k+kRn",
                            per_phase={"FAR": xr(N, k).X_r}, phase_skip=2,
                            phase_origin=len(prefix))
    return seq, pred


def gen_cycle_shift_zigzag(k: int, n: int, N: int | None = None):
    """<S_0, ..., S_n>, S_i = <i+k, ..., i+1, ..., i+k> on C_N."""
    N = k + 1 if N is None else N
    _require(k >= 2, "shift zigzag needs k >= 2")
    _require(N >= k + 1, "shift zigzag needs N >= k+1")
    _require(n >= 0, "n must be >= 0")
    seq = []
    for i in range(n + 1):
        down = range(i + k, i, -1)
        up = range(i + 2, i + k + 1)
        seq += [normalize_cycle(p, N) for p in (*down, *up)]
    faults = {"LRU": k + n, "FIFO": k + k * n}
    return seq, FamilyPrediction((2 * k - 1) * (n + 1), faults,
                                 "cycle Max: LRU=k+n, FIFO=k+kn")


def gen_cycle_loop(N: int, n: int, k: int):
    """<1, 2, ..., N>^n. LRU, FIFO and FWF fault on every request when N > k."""
    _require(N >= 3, "cycle needs N >= 3")
    _require(n >= 0, "n must be >= 0")
    _require(1 <= k < N, "cycle loop needs 1 <= k < N")
    seq = list(range(1, N + 1)) * n
    faults = {"LRU": N * n, "FIFO": N * n, "FWF": N * n}
    per_phase = {"FAR": xr(N, k).X_r} if N - k <= k - 1 else {}
    return seq, FamilyPrediction(N * n, faults, "whole cycle: A(I_n)=Nn, FAR=X_r per phase",
                                 per_phase=per_phase)


def gen_cycle_turn(N: int, n: int, k: int):
    """<1, 2, ..., N-1, N, N-1, ..., 2>^n on C_N."""
    r = N - k
    _require(1 <= r <= k - 1, "turning family needs k+1 <= N <= 2k-1")
    _require(n >= 0, "n must be >= 0")
    block = list(range(1, N + 1)) + list(range(N - 1, 1, -1))
    seq = block * n
    faults = {"LRU": 2 * n * r + k - 1} if n else {}
    return seq, FamilyPrediction(2 * (N - 1) * n, faults, "turning: LRU=2nr+k-1",
                                 per_phase={"FAR": turning_phase_faults(N, k)})


FAMILIES = {
    "path_zigzag": ("path", "k, n"),
    "fwf_fifo_path": ("path", "k, n"),
    "star_min": ("star", "k, n[, N]"),
    "star_max": ("star", "k, n[, N]"),
    "star_fwf_lru": ("star", "k, n[, N]"),
    "star_fwf_fifo": ("star", "k, n[, N]"),
    "cycle_rows": ("cycle", "k, r, n"),
    "cycle_shift_zigzag": ("cycle", "k, n[, N]"),
    "cycle_loop": ("cycle", "N, k, n"),
    "cycle_turn": ("cycle", "N, k, n"),
}


def expand(spec: FamilySpec) -> FamilyInstance:
    """Materialize a family: its graph, request sequence and predictions."""
    fid, k, n, N, r = spec.family_id, spec.k, spec.n, spec.N, spec.r
    if fid == "path_zigzag":
        seq, pred = gen_path_zigzag(k, n)
        graph = make_graph("path", k + 1 if N is None else N)
    elif fid == "fwf_fifo_path":
        seq, pred = gen_fwf_fifo_path(k, n)
        graph = make_graph("path", k + 1 if N is None else N)
    elif fid in ("star_min", "star_max", "star_fwf_lru", "star_fwf_fifo"):
        gen = {"star_min": gen_star_min, "star_max": gen_star_max,
               "star_fwf_lru": gen_star_fwf_lru, "star_fwf_fifo": gen_star_fwf_fifo}[fid]
        N = k + 1 if N is None else N
        seq, pred = gen(k, n, N)
        graph = make_graph("star", N)
    elif fid == "cycle_rows":
        if r is None:
            _require(N is not None, "cycle_rows needs r or N")
            r = N - k
        seq, pred = gen_cycle_rows(k, r, n)
        graph = make_graph("cycle", k + r)
    elif fid == "cycle_shift_zigzag":
        N = k + 1 if N is None else N
        seq, pred = gen_cycle_shift_zigzag(k, n, N)
        graph = make_graph("cycle", N)
    elif fid in ("cycle_loop", "cycle_turn"):
        if N is None:
            _require(r is not None, f"{fid} needs N or r")
            N = k + r
        gen = gen_cycle_loop if fid == "cycle_loop" else gen_cycle_turn
        seq, pred = gen(N, n, k)
        graph = make_graph("cycle", N)
    else:
        raise FamilyParameterError(f"unknown family {fid!r}; known: {', '.join(FAMILIES)}")
    if graph.n_vertices < max(seq, default=1):
        raise FamilyParameterError(f"graph {graph.descriptor()} too small for {fid}")
    return FamilyInstance(spec, graph, seq, pred)
