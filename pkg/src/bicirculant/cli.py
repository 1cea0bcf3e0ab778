"""Command line surface: solve, params, oracle, verify, census, export.

Exit codes are a stable contract: 0 solved or exception confirmed, 2 when
no strategy applies or the budget ran out, 3 for usage and parse errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys

from .census import CensusConfig, run_census
from .dispatch import dispatch_solve
from .errors import BicirculantError
from .graph import (
    OUTER,
    BicirculantSpec,
    edges,
    parse_spec,
    spec_from_json_dict,
)
from .representation import nonuniform_params, uniform_params
from .solver import SearchBudget, oracle_is_hamiltonian
from .verify import check_witness, classify_edge
from .witness import HamiltonWitness

log = logging.getLogger("bicirc")


def _setup_logging():
    level = os.environ.get("BICIRC_LOG", "error").lower()
    logging.basicConfig(
        level={"error": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}.get(
            level, logging.ERROR
        ),
        format="%(levelname)s %(name)s: %(message)s",
    )


def _budget(args) -> SearchBudget:
    return SearchBudget(node_limit=args.budget_nodes, time_limit=args.budget_seconds)


def _load_spec(text: str) -> BicirculantSpec:
    text = text.strip()
    if text.startswith("{"):
        return spec_from_json_dict(json.loads(text))
    return parse_spec(text)


def cmd_solve(args) -> int:
    try:
        spec = _load_spec(args.spec)
    except BicirculantError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 3
    report = dispatch_solve(spec, _budget(args))
    print(json.dumps(report.to_json_dict(), indent=None if args.json else 2))
    if args.emit_dot and report.verdict.witness is not None:
        with open(args.emit_dot, "w") as fh:
            fh.write(to_dot(spec, report.verdict.witness))
        log.info("wrote %s", args.emit_dot)
    return 0 if report.verdict.kind in ("hamiltonian", "exception") else 2


def cmd_params(args) -> int:
    try:
        spec = _load_spec(args.spec)
    except BicirculantError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 3
    a = args.a if args.a is not None else (min(spec.R) if spec.R else None)
    b = args.b if args.b is not None else (min(spec.T) if spec.T else None)
    if a is None or b is None:
        print("params needs both an outer type (--a) and an inner type (--b)", file=sys.stderr)
        return 3
    try:
        g1 = spec.gcd_s()
        if math.gcd(b, g1) > 1:
            rep = uniform_params(spec.m, spec.S, b, a=a)
        else:
            rep = nonuniform_params(spec.m, spec.S, a, b)
    except BicirculantError as exc:
        print(f"no representation: {exc}", file=sys.stderr)
        return 2
    print(json.dumps(rep.to_json_dict(), indent=None if args.json else 2))
    return 0


def cmd_oracle(args) -> int:
    try:
        spec = _load_spec(args.spec)
    except BicirculantError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 3
    res = oracle_is_hamiltonian(spec, _budget(args))
    out = {"spec": str(spec), "verdict": res.kind}
    if res.witness is not None:
        out["witness"] = res.witness.to_json_list()
    print(json.dumps(out, indent=None if args.json else 2))
    return 0 if res.kind in ("yes", "no") else 2


def cmd_verify(args) -> int:
    try:
        if args.file == "-":
            payload = json.load(sys.stdin)
        else:
            with open(args.file) as fh:
                payload = json.load(fh)
        spec = (
            spec_from_json_dict(payload["spec"])
            if isinstance(payload["spec"], dict)
            else parse_spec(payload["spec"])
        )
        wit = payload["witness"]
        witness = HamiltonWitness.from_json(wit.get("kind", "cycle"), wit["sequence"])
    except (KeyError, ValueError, OSError) as exc:
        print(f"bad input: {exc}", file=sys.stderr)
        return 3
    violation = check_witness(spec, witness)
    if violation is None:
        print(json.dumps({"ok": True}))
        return 0
    print(json.dumps({"ok": False, "violation": str(violation)}))
    return 1


def cmd_census(args) -> int:
    cfg = CensusConfig(
        m_min=args.m_min,
        m_max=args.m_max,
        max_spokes=args.max_spokes,
        max_rt_types=args.max_rt,
        sample=args.sample,
        seed=args.seed,
        budget=_budget(args),
        workers=args.workers,
        cross_check=not args.no_cross_check,
    )
    sink = open(args.out, "w") if args.out else None
    try:
        summary = run_census(cfg, sink=sink)
    finally:
        if sink:
            sink.close()
    print(json.dumps(summary, indent=None if args.json else 2))
    return 0


def to_dot(spec: BicirculantSpec, witness: HamiltonWitness = None) -> str:
    marked = set()
    if witness is not None:
        seq = witness.sequence
        steps = list(zip(seq, seq[1:]))
        if witness.kind == "cycle":
            steps.append((seq[-1], seq[0]))
        marked = {frozenset(e) for e in steps}
    lines = ["graph bicirculant {", "  layout=neato;"]
    m = spec.m
    for i in range(m):
        ang = 2 * math.pi * i / m
        lines.append(
            f'  u{i} [pos="{2 * math.cos(ang):.3f},{2 * math.sin(ang):.3f}!", shape=circle];'
        )
        lines.append(
            f'  v{i} [pos="{1.1 * math.cos(ang):.3f},{1.1 * math.sin(ang):.3f}!", shape=circle];'
        )
    for x, y, kind in edges(spec):
        attr = f'kind="{kind.kind}{kind.t}"'
        if frozenset((x, y)) in marked:
            attr += ", color=red, penwidth=2.5"
        lines.append(f"  {x} -- {y} [{attr}];")
    lines.append("}")
    return "\n".join(lines)


def cmd_export(args) -> int:
    try:
        spec = _load_spec(args.spec)
    except BicirculantError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 3
    if args.format == "dot":
        text = to_dot(spec)
    elif args.format == "json-edges":
        text = json.dumps(
            {
                "spec": spec.to_json_dict(),
                "edges": [[str(x), str(y), k.kind, k.t] for x, y, k in edges(spec)],
            },
            indent=2,
        )
    else:
        print(f"unknown format {args.format!r}", file=sys.stderr)
        return 3
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        print(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget-nodes", type=int, default=2_000_000, help="search node limit")
    common.add_argument("--budget-seconds", type=float, default=30.0, help="search wall budget")
    common.add_argument("--workers", type=int, default=1, help="census worker processes")
    common.add_argument("--seed", type=int, default=0, help="sampling seed")
    common.add_argument("--json", action="store_true", help="compact JSON output")
    p = argparse.ArgumentParser(
        prog="bicirc",
        description="Hamilton cycles in bicirculant graphs B(m;R,S,T)",
        parents=[common],
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str):
        return sub.add_parser(name, help=help_text, parents=[common])

    sp = add("solve", "run the strategy ladder on a spec")
    sp.add_argument("spec")
    sp.add_argument("--emit-dot", metavar="FILE", help="write the witness-highlighted graph")
    sp.set_defaults(func=cmd_solve)

    sp = add("params", "grid representation parameters for B(m;a,S,b)")
    sp.add_argument("spec")
    sp.add_argument("--a", type=int)
    sp.add_argument("--b", type=int)
    sp.set_defaults(func=cmd_params)

    sp = add("oracle", "exhaustive hamiltonicity verdict")
    sp.add_argument("spec")
    sp.set_defaults(func=cmd_oracle)

    sp = add("verify", "check a witness JSON against a spec")
    sp.add_argument("file", help="JSON file with {spec, witness}; - for stdin")
    sp.set_defaults(func=cmd_verify)

    sp = add("census", "enumerate or sample specs and solve them all")
    sp.add_argument("--m-min", type=int, default=1)
    sp.add_argument("--m-max", type=int, default=8)
    sp.add_argument("--max-spokes", type=int, default=8)
    sp.add_argument("--max-rt", type=int, default=8)
    sp.add_argument("--sample", type=int, default=None, help="random sample size (default exhaustive)")
    sp.add_argument("--out", metavar="FILE", help="JSON-lines stream of per-spec results")
    sp.add_argument("--no-cross-check", action="store_true")
    sp.set_defaults(func=cmd_census)

    sp = add("export", "emit the graph as DOT or edge JSON")
    sp.add_argument("spec")
    sp.add_argument("--format", choices=["dot", "json-edges"], default="dot")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    _setup_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 3 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
