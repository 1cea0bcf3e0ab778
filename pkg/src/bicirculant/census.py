"""Exhaustive and sampled censuses of bicirculant specs.

Enumeration is canonical up to the spoke shift only: S is shifted to its
lexicographically smallest translate containing 0 and all sets are sorted.
R and T run over negation-closed subsets; regular specs (|R| = |T|) are
the census default since the hamiltonicity conjecture concerns regular
bicirculants.  Each spec goes through the dispatcher and, where the exact
oracle is feasible, a cross-check.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from .dispatch import SolveReport, dispatch_solve
from .graph import BicirculantSpec, is_connected, validate_spec
from .solver import DP_LIMIT, SearchBudget
from .verify import cross_validate


@dataclass(frozen=True)
class CensusConfig:
    m_min: int = 1
    m_max: int = 8
    max_spokes: int = 8
    max_rt_types: int = 8
    sample: Optional[int] = None  # None = exhaustive
    seed: int = 0
    budget: SearchBudget = field(default_factory=SearchBudget)
    workers: int = 1
    regular_only: bool = True
    cross_check: bool = True


def symmetric_subsets(m: int, max_size: int) -> list[tuple[int, ...]]:
    """Negation-closed subsets of Z_m minus {0}, smallest first."""
    pairs = []
    for a in range(1, m // 2 + 1):
        if a == m - a:
            pairs.append((a,))
        else:
            pairs.append((a, m - a))
    out = []
    for r in range(len(pairs) + 1):
        for combo in itertools.combinations(pairs, r):
            s = tuple(sorted(x for p in combo for x in p))
            if len(s) <= max_size:
                out.append(s)
    return sorted(set(out), key=lambda s: (len(s), s))


def canonical_spoke_sets(m: int, max_size: int) -> list[tuple[int, ...]]:
    """Spoke sets containing 0, deduplicated by the shift isomorphism."""
    seen = set()
    out = []
    for size in range(1, min(max_size, m) + 1):
        for rest in itertools.combinations(range(1, m), size - 1):
            s = (0,) + rest
            canon = min(tuple(sorted((x - c) % m for x in s)) for c in s)
            if canon not in seen:
                seen.add(canon)
                out.append(canon)
    return out


def enumerate_specs(cfg: CensusConfig) -> Iterator[BicirculantSpec]:
    for m in range(cfg.m_min, cfg.m_max + 1):
        spokes = canonical_spoke_sets(m, cfg.max_spokes)
        rts = symmetric_subsets(m, cfg.max_rt_types)
        for S in spokes:
            for R in rts:
                for T in rts:
                    if cfg.regular_only and len(R) != len(T):
                        continue
                    spec = BicirculantSpec(m, R, S, T)
                    if is_connected(spec):
                        yield spec


def sample_specs(cfg: CensusConfig) -> Iterator[BicirculantSpec]:
    rng = random.Random(cfg.seed)
    produced = 0
    attempts = 0
    while produced < (cfg.sample or 0) and attempts < 1000 * (cfg.sample or 1):
        attempts += 1
        m = rng.randint(max(cfg.m_min, 3), cfg.m_max)
        n_spokes = rng.randint(1, min(cfg.max_spokes, m))
        S = (0,) + tuple(rng.sample(range(1, m), n_spokes - 1)) if n_spokes > 1 else (0,)
        n_rt = rng.randint(0, cfg.max_rt_types // 2)
        R = set()
        for _ in range(n_rt):
            a = rng.randint(1, m - 1)
            R |= {a, m - a}
        if cfg.regular_only:
            T = set()
            for _ in range(n_rt):
                b = rng.randint(1, m - 1)
                T |= {b, m - b}
            if len(T) != len(R):
                continue
        else:
            T = {x for x in (rng.randint(1, m - 1) for _ in range(n_rt))}
            T |= {m - x for x in T}
        try:
            spec = validate_spec(m, sorted(R), sorted(S), sorted(T))
        except Exception:
            continue
        if is_connected(spec):
            produced += 1
            yield spec


def census_entry(spec: BicirculantSpec, budget: SearchBudget, cross_check: bool) -> dict:
    report = dispatch_solve(spec, budget)
    entry = {
        "spec": str(spec),
        "verdict": report.verdict.kind,
        "tags": [e.tag for e in report.strategy],
        "elapsed_s": round(report.elapsed, 4),
    }
    if report.verdict.tag is not None:
        entry["exception"] = report.verdict.tag.tag
    if cross_check and 2 * spec.m <= DP_LIMIT:
        agree = cross_validate(spec, report, budget)
        entry["oracle"] = agree.get("oracle")
        entry["agrees"] = agree.get("agrees")
        if agree.get("oracle_found_cycle"):
            entry["oracle_found_cycle"] = True
    elif report.verdict.kind == "hamiltonian":
        entry["agrees"] = True  # witness re-validated by dispatch
    return entry


def _worker(args):
    spec_str, budget_tuple, cross = args
    from .graph import parse_spec

    budget = SearchBudget(*budget_tuple)
    return census_entry(parse_spec(spec_str), budget, cross)


def run_census(cfg: CensusConfig, sink=None) -> dict:
    """Run the census; returns the summary and streams JSON lines to sink."""
    t0 = time.monotonic()
    specs = sample_specs(cfg) if cfg.sample else enumerate_specs(cfg)
    summary = {
        "total": 0,
        "hamiltonian": 0,
        "exceptions": [],
        "unresolved": [],
        "disagreements": [],
        "tag_histogram": {},
    }

    def absorb(entry: dict):
        summary["total"] += 1
        if entry["verdict"] == "hamiltonian":
            summary["hamiltonian"] += 1
        elif entry["verdict"] == "exception":
            summary["exceptions"].append(entry["spec"])
        else:
            summary["unresolved"].append(entry["spec"])
        if entry.get("agrees") is False or entry.get("oracle_found_cycle"):
            summary["disagreements"].append(entry["spec"])
        for tag in entry["tags"]:
            summary["tag_histogram"][tag] = summary["tag_histogram"].get(tag, 0) + 1
        if sink is not None:
            sink.write(json.dumps(entry) + "\n")

    budget_tuple = (cfg.budget.node_limit, cfg.budget.time_limit, cfg.budget.algorithm)
    try:
        if cfg.workers > 1:
            import multiprocessing as mp

            with mp.Pool(cfg.workers) as pool:
                jobs = ((str(s), budget_tuple, cfg.cross_check) for s in specs)
                for entry in pool.imap(_worker, jobs, chunksize=16):
                    absorb(entry)
        else:
            for spec in specs:
                absorb(census_entry(spec, cfg.budget, cfg.cross_check))
    except KeyboardInterrupt:
        summary["interrupted"] = True
    summary["runtime_s"] = round(time.monotonic() - t0, 2)
    return summary
