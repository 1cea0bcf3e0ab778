"""The strategy ladder: route a spec to a construction, recurse, certify.

Rungs are tried in the fixed order below; every attempt (successful or not)
lands in the report's strategy tree.  A Hamiltonian verdict never leaves
this module without its witness passing the independent checker.

  1. normalize / split into components
  2. SmallM            exact answer for m <= 5
  3. ExceptionFamily   K2 and the Alspach generalized Petersen graphs
  4. HaarConnected     gcd(m,S) = 1: a spanning Haar cycle
  5. HalfTurn          m even, m/2 in both R and T (imported, searched)
  6. UniformGrid       some type not coprime to gcd(m,S)
  7. Type I / II       congruent or rho > 0 pair, else remove a spoke
                       type and hook the components back together
  8. ThreeSpokeReduction  |S| >= 4: recurse on a spanning 3-spoke subgraph
  9. ImportedBaseSearch   budgeted exhaustive fallback
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Optional

from .constructions import (
    classify_type,
    congruent_case,
    nonuniform_extension,
    hook_with_search,
    ring_uniform_cycle,
    spanning_three_spoke_subset,
    uniform_grid_cycle,
)
from .errors import BicirculantError
from .graph import (
    INNER,
    BicirculantSpec,
    ExceptionTag,
    Vertex,
    gcd_all,
    is_connected,
    normalize,
    recognize_exception,
    split_components,
    subgraph_ab,
    swap_layers,
    swap_vertex,
    u,
)
from .representation import nonuniform_params, uniform_params
from .solver import (
    SearchBudget,
    adjacency_from_spec,
    hamilton_cycle,
    spoke_pair_cycle,
)
from .verify import check_witness, has_outer_and_inner
from .witness import HamiltonWitness

MAX_DEPTH = 64


@dataclass(frozen=True)
class Verdict:
    kind: str  # hamiltonian | exception | no_strategy | inconclusive | disconnected
    witness: Optional[HamiltonWitness] = None
    tag: Optional[ExceptionTag] = None
    detail: dict = field(default_factory=dict, compare=False)


@dataclass
class StrategyEvent:
    tag: str
    detail: dict = field(default_factory=dict)
    sub_reports: list = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "tag": self.tag,
            "detail": self.detail,
            "sub_reports": [r.to_json_dict() for r in self.sub_reports],
        }


@dataclass
class SolveReport:
    spec: BicirculantSpec
    verdict: Verdict
    strategy: list[StrategyEvent] = field(default_factory=list)
    elapsed: float = 0.0

    def to_json_dict(self) -> dict:
        out = {
            "spec": str(self.spec),
            "verdict": self.verdict.kind,
            "elapsed_s": round(self.elapsed, 4),
            "strategy": [e.to_json_dict() for e in self.strategy],
        }
        if self.verdict.witness is not None:
            out["witness"] = {
                "kind": self.verdict.witness.kind,
                "sequence": self.verdict.witness.to_json_list(),
                "note": _json_safe(self.verdict.witness.note),
            }
        if self.verdict.tag is not None:
            out["exception"] = {"tag": self.verdict.tag.tag, "m": self.verdict.tag.m}
        if self.verdict.detail:
            out["detail"] = _json_safe(self.verdict.detail)
        return out


def _json_safe(obj):
    if isinstance(obj, dict):
        return {str(k): _json_safe(x) for k, x in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(x) for x in obj]
    if isinstance(obj, Vertex):
        return str(obj)
    return obj


class _Clock:
    def __init__(self, budget: SearchBudget):
        self.budget = budget
        self.deadline = time.monotonic() + budget.time_limit

    def remaining(self) -> float:
        return self.deadline - time.monotonic()

    def expired(self) -> bool:
        return self.remaining() <= 0

    def sub_budget(self, fraction: float = 1.0) -> SearchBudget:
        return SearchBudget(
            node_limit=self.budget.node_limit,
            time_limit=max(0.05, self.remaining() * fraction),
            algorithm=self.budget.algorithm,
        )


def dispatch_solve(
    spec: BicirculantSpec, budget: Optional[SearchBudget] = None, _depth: int = 0
) -> SolveReport:
    """Run the case ladder and return a certified report."""
    t0 = time.monotonic()
    budget = budget or SearchBudget()
    clock = _Clock(budget)
    report = SolveReport(spec=spec, verdict=Verdict("inconclusive"))
    try:
        report.verdict = _solve(spec, clock, report.strategy, _depth)
    finally:
        report.elapsed = time.monotonic() - t0
    if report.verdict.kind == "hamiltonian":
        bad = check_witness(spec, report.verdict.witness)
        if bad is not None:
            raise BicirculantError(f"internal: invalid witness escaped a construction: {bad}")
    return report


def _solve(spec: BicirculantSpec, clock: _Clock, events: list, depth: int) -> Verdict:
    if depth > MAX_DEPTH:
        raise BicirculantError("strategy recursion exceeded its depth bound")
    m = spec.m

    norm, shift = normalize(spec)
    if shift:
        events.append(StrategyEvent("Normalize", {"shift": shift, "spec": str(norm)}))

        def back(x: Vertex) -> Vertex:
            return Vertex(x.layer, (x.index + shift) % m) if x.layer == INNER else x

        verdict = _solve(norm, clock, events, depth + 1)
        if verdict.kind == "hamiltonian":
            return Verdict("hamiltonian", witness=verdict.witness.mapped(back), detail=verdict.detail)
        return verdict
    spec = norm

    # 1. components
    if not is_connected(spec):
        comps = split_components(spec)
        ev = StrategyEvent("Components", {"count": len(comps), "quotient": str(comps[0].quotient)})
        events.append(ev)
        sub = dispatch_solve(comps[0].quotient, clock.sub_budget(), depth + 1)
        ev.sub_reports.append(sub)
        return Verdict("disconnected", detail={"components": len(comps), "component_verdict": sub.verdict.kind})

    # 2. small m: the oracle is exact
    if m <= 5:
        ev = StrategyEvent("SmallM", {"m": m})
        events.append(ev)
        if m == 1:
            return Verdict("exception", tag=ExceptionTag("K2", 1))
        res = hamilton_cycle(adjacency_from_spec(spec), clock.sub_budget())
        if res.kind == "yes":
            return Verdict("hamiltonian", witness=res.witness)
        tag = recognize_exception(spec)
        if tag is not None:
            return Verdict("exception", tag=tag)
        return Verdict("no_strategy", detail={"oracle": res.kind})

    # 3. exception families
    tag = recognize_exception(spec)
    if tag is not None:
        events.append(StrategyEvent("ExceptionFamily", {"tag": tag.tag, "m": tag.m}))
        return Verdict("exception", tag=tag)

    g1 = spec.gcd_s()

    # 4. connected Haar subgraph
    if g1 == 1 and len(spec.S) >= 2:
        ev = StrategyEvent("HaarConnected", {"gcd_m_S": 1})
        events.append(ev)
        if len(spec.S) == 2:
            seq = spoke_pair_cycle(m, spec.S, 0)
            return Verdict("hamiltonian", witness=HamiltonWitness.cycle(seq, note={"haar": "two_spokes"}))
        haar = BicirculantSpec(m, (), spec.S, ())
        res = hamilton_cycle(adjacency_from_spec(haar), clock.sub_budget(0.4))
        ev.detail["search"] = res.kind
        if res.kind == "yes":
            w = HamiltonWitness.cycle(res.witness.sequence, note={"haar": "connected"})
            return Verdict("hamiltonian", witness=w)
        # fall through: other strategies may still use outer/inner edges

    if clock.expired():
        return Verdict("inconclusive", detail={"reason": "budget"})

    # 5. half-turn types on both layers (imported result; searched)
    if m % 2 == 0 and (m // 2) in spec.R and (m // 2) in spec.T and len(spec.S) >= 3:
        ev = StrategyEvent("HalfTurn", {})
        events.append(ev)
        res = hamilton_cycle(adjacency_from_spec(spec), clock.sub_budget(0.5))
        ev.detail["search"] = res.kind
        if res.kind == "yes":
            return Verdict("hamiltonian", witness=res.witness, detail={"imported": "half_turn"})

    # 6. uniform grid for a type not coprime to gcd(m,S)
    if g1 > 1 and len(spec.S) >= 2:
        verdict = _try_uniform_grids(spec, clock, events)
        if verdict is not None:
            return verdict

    if clock.expired():
        return Verdict("inconclusive", detail={"reason": "budget"})

    # 7. type I / II dichotomy for all-coprime two-layer types
    if g1 > 1 and len(spec.S) >= 2:
        verdict = _try_typed_strategies(spec, clock, events, depth)
        if verdict is not None:
            return verdict

    # 8. spanning three-spoke subgraph
    if len(spec.S) >= 4 and not clock.expired():
        trio = spanning_three_spoke_subset(spec)
        ev = StrategyEvent("ThreeSpokeReduction", {"subset": list(trio) if trio else None})
        events.append(ev)
        if trio is not None:
            sub_spec = BicirculantSpec(m, spec.R, tuple(sorted(trio)), spec.T)
            sub = dispatch_solve(sub_spec, clock.sub_budget(), depth + 1)
            ev.sub_reports.append(sub)
            if sub.verdict.kind == "hamiltonian":
                return Verdict("hamiltonian", witness=sub.verdict.witness, detail={"via": "three_spokes"})

    # 9. last resort: budgeted exhaustive attempt
    ev = StrategyEvent("ImportedBaseSearch", {})
    events.append(ev)
    if not clock.expired():
        res = hamilton_cycle(adjacency_from_spec(spec), clock.sub_budget(0.8))
        ev.detail["search"] = res.kind
        if res.kind == "yes":
            return Verdict("hamiltonian", witness=res.witness, detail={"imported": "search"})
        if res.kind == "no":
            return Verdict("no_strategy", detail={"oracle": "no"})
        return Verdict("no_strategy", detail={"search": "budget exhausted"})
    return Verdict("no_strategy", detail={"reason": "ladder complete, budget exhausted"})


# ---------------------------------------------------------------------------
# rung 6

def _uniform_candidates(spec: BicirculantSpec):
    """(a, b, swapped) choices with b not coprime to gcd(m,S)."""
    m = spec.m
    g1 = spec.gcd_s()
    for swapped in (False, True):
        R, T = (spec.R, spec.T) if not swapped else (spec.T, spec.R)
        for b in T:
            if 2 * b == m or math.gcd(b, g1) == 1:
                continue
            lam1 = math.gcd(g1, b)
            for a in R:
                if 2 * a == m or math.gcd(a, lam1) != 1:
                    continue
                yield a, b, swapped


def _try_uniform_grids(spec: BicirculantSpec, clock: _Clock, events: list) -> Optional[Verdict]:
    m = spec.m
    tried = []
    for a, b, swapped in _uniform_candidates(spec):
        if clock.expired():
            break
        work = spec if not swapped else normalize(swap_layers(spec))[0]
        sshift = 0 if not swapped else normalize(swap_layers(spec))[1]
        try:
            ab = subgraph_ab(work, a, b) if a in work.R and b in work.T else None
            if ab is None:
                continue
            rep = uniform_params(m, work.S, b, a=a)
            if rep.mu >= 1:
                w = uniform_grid_cycle(ab, rep, budget=clock.sub_budget(0.5))
                method = "grid"
            else:
                w = ring_uniform_cycle(ab, budget=clock.sub_budget(0.5))
                method = "ring"
                if w is None:
                    tried.append({"a": a, "b": b, "outcome": "no ring stitching"})
                    continue
        except BicirculantError as exc:
            tried.append({"a": a, "b": b, "outcome": type(exc).__name__})
            continue
        if swapped:
            w = w.mapped(lambda x: Vertex(x.layer, (x.index + sshift) % m) if x.layer == INNER else x)
            w = w.mapped(swap_vertex)
        events.append(
            StrategyEvent("UniformGrid", {"a": a, "b": b, "swapped": swapped, "method": method, "tried": tried})
        )
        return Verdict("hamiltonian", witness=w)
    if tried:
        events.append(StrategyEvent("UniformGrid", {"outcome": "failed", "tried": tried}))
    return None


# ---------------------------------------------------------------------------
# rung 7

def _try_typed_strategies(
    spec: BicirculantSpec, clock: _Clock, events: list, depth: int
) -> Optional[Verdict]:
    tv = classify_type(spec, min_spokes=2)
    if tv.kind == "not_applicable":
        return None
    events.append(StrategyEvent("TypeClassification", {"kind": tv.kind, "pair": tv.pair}))
    if tv.kind == "type1":
        order = sorted(
            (p for p, k in tv.pair_kinds.items() if k in ("rho_positive", "congruent")),
            key=lambda p: (0 if tv.pair_kinds[p] == "rho_positive" else 1, p),
        )
        if len(spec.S) == 2:  # the ladder construction needs three spoke types
            order = [p for p in order if tv.pair_kinds[p] == "rho_positive"]
        for a, b in order:
            if clock.expired():
                break
            kind = tv.pair_kinds[(a, b)]
            ab = subgraph_ab(spec, a, b)
            try:
                if kind == "rho_positive":
                    rep = nonuniform_params(spec.m, spec.S, a, b)
                    w = nonuniform_extension(ab, rep, budget=clock.sub_budget(0.5))
                    events.append(
                        StrategyEvent(
                            "NonUniformExtension",
                            {"a": a, "b": b, "lam": rep.lam, "mu": rep.mu, "rho": rep.rho},
                        )
                    )
                    return Verdict("hamiltonian", witness=w)
                w = congruent_case(ab, budget=clock.sub_budget(0.5))
                tagmap = {
                    "equal_types": "CongruentOdd_EqualTypes",
                    "general": "CongruentOdd_General",
                    "even_brick": "CongruentEven_Brick",
                }
                events.append(
                    StrategyEvent(tagmap.get(w.note.get("congruent"), "Congruent"), {"a": a, "b": b})
                )
                return Verdict("hamiltonian", witness=w)
            except BicirculantError as exc:
                events.append(
                    StrategyEvent("TypeIAttempt", {"a": a, "b": b, "kind": kind, "outcome": type(exc).__name__})
                )
                continue
        return None
    if len(spec.S) < 3:
        return None  # imported territory: bicirculants with two spoke types
    # type II: remove one spoke type, solve the pieces, hook them back
    return _type2_recursion(spec, tv, clock, events, depth)


def _protected_spoke(spec: BicirculantSpec) -> Optional[int]:
    """c' not divisible by the full power of two in m (kept during removal
    so that m/gcd(m,S') stays even when it can)."""
    if spec.m % 2:
        return None
    v2 = (spec.m & -spec.m).bit_length() - 1
    for c in spec.S:
        if c and c % (1 << v2):
            return c
    return None


def _type2_recursion(
    spec: BicirculantSpec, tv, clock: _Clock, events: list, depth: int
) -> Optional[Verdict]:
    m = spec.m
    a, b = tv.pair
    keep = _protected_spoke(spec)
    candidates = [c for c in spec.S if c and c != keep] or [c for c in spec.S if c]
    ev = StrategyEvent("TypeIIRecursion", {"a": a, "b": b, "protected": keep})
    events.append(ev)
    for c in candidates:
        if clock.expired():
            break
        S_prime = tuple(x for x in spec.S if x != c)
        delta = gcd_all(m, [a], S_prime, [b])
        ev.detail["removed"] = c
        ev.detail["delta"] = delta
        ab_full = subgraph_ab(spec, a, b)
        if delta == 1:
            sub_spec = BicirculantSpec(m, ab_full.R, S_prime, ab_full.T)
            sub = dispatch_solve(sub_spec, clock.sub_budget(), depth + 1)
            ev.sub_reports.append(sub)
            if sub.verdict.kind == "hamiltonian":
                return Verdict("hamiltonian", witness=sub.verdict.witness, detail={"via": "spoke_removal"})
            continue
        quotient = BicirculantSpec(
            m // delta,
            tuple(sorted({(a // delta) % (m // delta), (m - a) // delta % (m // delta)})),
            tuple(x // delta for x in S_prime),
            tuple(sorted({(b // delta) % (m // delta), (m - b) // delta % (m // delta)})),
        )
        # the quotient inherits the (lam, mu, rho) of the full graph
        try:
            parent_rep = nonuniform_params(m, spec.S, a, b)
            quot_rep = nonuniform_params(quotient.m, quotient.S, a // delta, b // delta)
        except BicirculantError as exc:
            ev.detail["outcome"] = f"representation: {type(exc).__name__}"
            continue
        if (quot_rep.lam, quot_rep.mu, quot_rep.rho) != (parent_rep.lam, parent_rep.mu, parent_rep.rho):
            raise BicirculantError("internal: spoke removal changed the grid parameters")
        sub = dispatch_solve(quotient, clock.sub_budget(0.5), depth + 1)
        ev.sub_reports.append(sub)
        if sub.verdict.kind != "hamiltonian":
            continue
        cyc = sub.verdict.witness
        if not has_outer_and_inner(quotient, cyc):
            ev.detail["outcome"] = "component cycle misses outer or inner edges"
            continue
        try:
            path = nonuniform_extension(quotient, quot_rep, budget=clock.sub_budget(0.5))
        except BicirculantError:
            path = None
        try:
            w = hook_with_search(ab_full, c, quotient, cyc, clock.sub_budget(0.5), path=path)
        except BicirculantError as exc:
            ev.detail["outcome"] = f"hooking: {type(exc).__name__}"
            continue
        events.append(StrategyEvent("TwoHooked", {"c": c, "components": delta}))
        return Verdict("hamiltonian", witness=w, detail={"via": "two_hooked"})
    return None
