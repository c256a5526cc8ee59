"""Compare a family's closed-form predictions with simulation."""
from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Iterable, Iterator

from .analysis.phases import k_phases
from .engine import CacheConfig, fault_flags
from .families import FAMILIES, FamilyInstance, FamilyParameterError, FamilySpec, expand
from .graphs import respects


@dataclass(frozen=True)
class Check:
    family_id: str
    params: str
    quantity: str
    predicted: int | None
    simulated: int | str
    ok: bool

    def to_dict(self) -> dict:
        d = asdict(self)
        d["match"] = "OK" if self.ok else "FAIL"
        return d


def params_text(spec: FamilySpec) -> str:
    parts = [f"k={spec.k}"]
    if spec.N is not None:
        parts.append(f"N={spec.N}")
    if spec.r is not None:
        parts.append(f"r={spec.r}")
    parts.append(f"n={spec.n}")
    return " ".join(parts)


def checked_phase_faults(inst: FamilyInstance, algorithm: str) -> list[int]:
    """Per-phase faults of ``algorithm`` on the phases a per-phase prediction covers."""
    pred = inst.prediction
    part = k_phases(inst.requests, inst.spec.k)
    counts = part.attach_faults(algorithm, fault_flags(algorithm, inst.requests,
                                                       CacheConfig(inst.spec.k, inst.graph)))
    eligible = [i for i, start in enumerate(part.boundaries) if start >= pred.phase_origin]
    last = len(part.boundaries) - 1
    return [counts[i] for i in eligible[pred.phase_skip:]
            if i < last and part.per_phase_distinct[i] == inst.spec.k]


def check_instance(inst: FamilyInstance) -> list[Check]:
    spec, pred = inst.spec, inst.prediction
    label = params_text(spec)
    out = [Check(spec.family_id, label, "length", pred.length, len(inst.requests),
                 pred.length == len(inst.requests)),
           Check(spec.family_id, label, "respects", None, "yes" if respects(inst.requests, inst.graph) else "no",
                 respects(inst.requests, inst.graph))]
    cfg = CacheConfig(spec.k, inst.graph)
    flags = {}

    def flags_for(alg):
        if alg not in flags:
            flags[alg] = fault_flags(alg, inst.requests, cfg)
        return flags[alg]

    for alg, want in sorted(pred.predicted_faults.items()):
        got = sum(flags_for(alg)[pred.scope_start:])
        out.append(Check(spec.family_id, label, alg, want, got, got == want))
    if pred.equal_on_prefix:
        a, b = pred.equal_on_prefix
        fa = sum(flags_for(a)[:pred.scope_start])
        fb = sum(flags_for(b)[:pred.scope_start])
        out.append(Check(spec.family_id, label, f"prefix {a}={b}", fa, fb, fa == fb))
    for alg, want in sorted(pred.per_phase.items()):
        seen = checked_phase_faults(inst, alg)
        if not seen:  # sequence too short to contain a covered phase
            continue
        shown = ",".join(str(v) for v in sorted(set(seen)))
        out.append(Check(spec.family_id, label, f"{alg}/phase", want, shown,
                         all(v == want for v in seen)))
    return out


def family_grid(families: Iterable[str] | None = None, ks: Iterable[int] = range(2, 9),
                ns: Iterable[int] = range(1, 13), max_cycle_n: int = 16) -> Iterator[FamilySpec]:
    """Every in-range parameter combination; out-of-range ones are skipped silently."""
    ks, ns = list(ks), list(ns)
    for fid in families or FAMILIES:
        graph_class = FAMILIES[fid][0]
        for k in ks:
            if graph_class == "cycle" and fid != "cycle_shift_zigzag":
                params = [(k + r, r) for r in range(1, k) if k + r <= max_cycle_n]
            else:
                params = [(None, None)]
            for N, r in params:
                for n in ns:
                    spec = FamilySpec(fid, k, n, N=N if fid != "cycle_rows" else None, r=r if fid == "cycle_rows" else None)
                    try:
                        yield spec, expand(spec)
                    except FamilyParameterError:
                        break


def validate(families=None, ks=range(2, 9), ns=range(1, 13), max_cycle_n=16) -> list[Check]:
    checks = []
    for _, inst in family_grid(families, ks, ns, max_cycle_n):
        checks += check_instance(inst)
    return checks
