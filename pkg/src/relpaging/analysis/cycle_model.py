"""Per-phase FAR fault counts on the cycle C_N with N = k + r, 1 <= r <= k-1.

Within a k-phase FAR's faults come in batches of r. The first fault of a
batch evicts the midpoint of the current unmarked segment; the remaining
faults of the batch evict neighbours in the direction of travel. ``d_i`` is
the unmarked-segment length after marking the batch's first page and ``D_i``
the distance to the page evicted at that fault. A phase has as many batches as
it takes for ``d_i + 1 <= 2r``; the last batch contributes ``d_i + 1 - r``.

All logarithms are base 2.
"""
from __future__ import annotations

from dataclasses import dataclass


def floor_log2_ratio(a: int, b: int) -> int:
    """Largest integer x >= 0 with b * 2**x <= a, i.e. floor(log2(a / b))."""
    if a < b or b <= 0:
        raise ValueError(f"need a >= b > 0, got a={a}, b={b}")
    x = 0
    while b << (x + 1) <= a:
        x += 1
    return x


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _phase_faults(batches: list[tuple[int, int]], r: int) -> int:
    last_d = batches[-1][0]
    return r * (len(batches) - 1) + (last_d + 1 - r)


def whole_cycle_batches(N: int, r: int) -> list[tuple[int, int]]:
    """(d_i, D_i) while going around the cycle without turning."""
    out = []
    d = N - 1
    while True:
        D = ceil_div(d, 2)
        out.append((d, D))
        if d + 1 <= 2 * r:
            return out
        d -= D


def turning_batches(N: int, r: int) -> list[tuple[int, int]]:
    """(d_i, D_i) when the walk turns back after the first batch.

    After the turn, an even unmarked segment loses its farther midpoint
    (it is the less recently used of the two), so D_i = d_i/2 + 1.
    """
    d = N - 1
    D = ceil_div(d, 2)
    out = [(d, D)]
    if d + 1 <= 2 * r:
        return out
    d = D - 1
    while True:
        D = d // 2 + 1 if d % 2 == 0 else ceil_div(d, 2)
        out.append((d, D))
        if d + 1 <= 2 * r:
            return out
        d -= D


@dataclass(frozen=True)
class CycleFaultModel:
    N: int
    k: int
    r: int
    x: int
    y: int
    X_r: int
    N_hat: int
    x_hat: int
    y_hat: int
    batches: tuple[tuple[int, int], ...]
    turn_batches: tuple[tuple[int, int], ...]

    @property
    def turning_faults(self) -> int:
        return self.r * self.x_hat + self.y_hat

    @property
    def batch_faults(self) -> int:
        """Per-phase faults for the whole-cycle walk, from the d_i/D_i recurrence."""
        return _phase_faults(list(self.batches), self.r)

    @property
    def turn_batch_faults(self) -> int:
        return _phase_faults(list(self.turn_batches), self.r)

    def loop_total_bounds(self, n: int) -> tuple[int, int]:
        """Bounds on FAR's total faults on n trips around the cycle."""
        phases = (n * self.N) // self.k
        return phases * self.X_r + self.k - self.X_r, phases * self.X_r + self.k - 1

    def to_dict(self) -> dict:
        return {
            "N": self.N, "k": self.k, "r": self.r, "x": self.x, "y": self.y,
            "X_r": self.X_r, "N_hat": self.N_hat, "x_hat": self.x_hat,
            "y_hat": self.y_hat, "turning_faults": self.turning_faults,
            "batches": [list(b) for b in self.batches],
            "turn_batches": [list(b) for b in self.turn_batches],
        }


def xr(N: int, k: int) -> CycleFaultModel:
    r = N - k
    if not 1 <= r <= k - 1:
        raise ValueError(f"need 1 <= r = N - k <= k - 1, got N={N}, k={k}")
    x = floor_log2_ratio(N, r)
    top = ceil_div(N, 2 ** x)
    n_hat = N if N % 2 == 0 else N - 1
    x_hat = floor_log2_ratio(n_hat, r)
    return CycleFaultModel(
        N=N, k=k, r=r, x=x, y=top - r, X_r=r * (x - 1) + top,
        N_hat=n_hat, x_hat=x_hat, y_hat=n_hat // 2 ** x_hat - r,
        batches=tuple(whole_cycle_batches(N, r)),
        turn_batches=tuple(turning_batches(N, r)),
    )


def turning_phase_faults(N: int, k: int) -> int:
    return xr(N, k).turning_faults
