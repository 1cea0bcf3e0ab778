"""Independent witness validation and construction-vs-oracle cross-checks.

The checker re-derives everything from the spec's edge relation; it never
trusts annotations made by a construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import InvalidWitness
from .graph import INNER, OUTER, BicirculantSpec, EdgeKind, Vertex
from .witness import HamiltonWitness


@dataclass(frozen=True)
class Violation:
    kind: str  # WrongLength | RepeatedVertex | NonAdjacentStep | OpenCycle | WrongEndpoints | ForbiddenEdgeUsed
    detail: str
    position: Optional[int] = None

    def __str__(self) -> str:
        pos = f" at {self.position}" if self.position is not None else ""
        return f"{self.kind}{pos}: {self.detail}"


def classify_edge(spec: BicirculantSpec, x: Vertex, y: Vertex) -> Optional[EdgeKind]:
    """The EdgeKind of xy, derived from the parameters; None if not an edge."""
    m = spec.m
    if x.layer == y.layer:
        d = (y.index - x.index) % m
        types = spec.R if x.layer == OUTER else spec.T
        if d in types or (-d) % m in types:
            t = min(d, (-d) % m)
            canon = t if (t in types) else (-t) % m
            return EdgeKind("outer" if x.layer == OUTER else "inner", canon)
        return None
    uu, vv = (x, y) if x.layer == OUTER else (y, x)
    c = (vv.index - uu.index) % m
    if c in spec.S:
        return EdgeKind("spoke", c)
    return None


def check_witness(spec: BicirculantSpec, witness: HamiltonWitness) -> Optional[Violation]:
    """None when every HamiltonWitness invariant holds against edges(spec)."""
    seq = witness.sequence
    n = 2 * spec.m
    if len(seq) != n:
        return Violation("WrongLength", f"got {len(seq)} vertices, expected {n}")
    for i, x in enumerate(seq):
        if not (0 <= x.index < spec.m) or x.layer not in (OUTER, INNER):
            return Violation("NonAdjacentStep", f"vertex {x} outside the graph", i)
    if len(set(seq)) != n:
        seen: dict[Vertex, int] = {}
        for i, x in enumerate(seq):
            if x in seen:
                return Violation("RepeatedVertex", f"{x} at {seen[x]} and {i}", i)
            seen[x] = i
    for i in range(n - 1):
        if classify_edge(spec, seq[i], seq[i + 1]) is None:
            return Violation("NonAdjacentStep", f"{seq[i]} -- {seq[i + 1]} is not an edge", i)
    if witness.kind == "cycle":
        if n < 3:
            return Violation("WrongLength", "a cycle needs at least 3 vertices")
        if classify_edge(spec, seq[-1], seq[0]) is None:
            return Violation("OpenCycle", f"{seq[-1]} -- {seq[0]} is not an edge")
    elif witness.kind == "path":
        if witness.start is not None and seq[0] != witness.start:
            return Violation("WrongEndpoints", f"starts at {seq[0]}, declared {witness.start}")
        if witness.end is not None and seq[-1] != witness.end:
            return Violation("WrongEndpoints", f"ends at {seq[-1]}, declared {witness.end}")
    else:
        return Violation("WrongEndpoints", f"unknown witness kind {witness.kind!r}")
    return None


def witness_edge_profile(spec: BicirculantSpec, witness: HamiltonWitness) -> dict[str, int]:
    """Counts of outer/inner/spoke edges used by a (valid) witness."""
    bad = check_witness(spec, witness)
    if bad is not None:
        raise InvalidWitness(str(bad))
    seq = witness.sequence
    steps = list(zip(seq, seq[1:]))
    if witness.kind == "cycle":
        steps.append((seq[-1], seq[0]))
    counts = {"outer": 0, "inner": 0, "spoke": 0}
    for x, y in steps:
        counts[classify_edge(spec, x, y).kind] += 1
    return counts


def has_outer_and_inner(spec: BicirculantSpec, witness: HamiltonWitness) -> bool:
    prof = witness_edge_profile(spec, witness)
    return prof["outer"] > 0 and prof["inner"] > 0


def cross_validate(spec: BicirculantSpec, report, budget=None) -> dict:
    """Compare a SolveReport against the exhaustive oracle where feasible.

    For 2m <= 24 the oracle verdict is definitive and must agree; beyond
    that only the witness is (re)validated.  A validated cycle witness
    dominates an Inconclusive search verdict.
    """
    from .solver import SearchBudget, oracle_is_hamiltonian

    budget = budget or SearchBudget()
    summary = {"spec": str(spec), "witness_ok": None, "oracle": None, "agrees": True}
    verdict = report.verdict
    if verdict.kind == "hamiltonian":
        bad = check_witness(spec, verdict.witness)
        summary["witness_ok"] = bad is None
        if bad is not None:
            summary["agrees"] = False
            summary["violation"] = str(bad)
    if 2 * spec.m <= 24:
        res = oracle_is_hamiltonian(spec, budget)
        summary["oracle"] = res.kind
        if res.kind == "yes" and verdict.kind not in ("hamiltonian",):
            summary["agrees"] = verdict.kind == "inconclusive" or verdict.kind == "no_strategy"
            # a missed cycle is not a contradiction, but record it
            summary["oracle_found_cycle"] = True
        if res.kind == "no" and verdict.kind == "hamiltonian":
            summary["agrees"] = False
        if res.kind == "yes" and verdict.kind == "exception":
            summary["agrees"] = False
    return summary
