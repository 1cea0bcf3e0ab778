"""Witness checker: totality, exact violation kinds, edge profiling."""

import random

import pytest

from bicirculant.errors import InvalidWitness
from bicirculant.graph import Vertex, parse_spec, u, v, validate_spec
from bicirculant.solver import adjacency_from_spec, hamilton_cycle
from bicirculant.verify import (
    check_witness,
    classify_edge,
    has_outer_and_inner,
    witness_edge_profile,
)
from bicirculant.witness import HamiltonWitness

HEX = validate_spec(3, [], [0, 1], [])
HEX_CYCLE = HamiltonWitness.cycle([u(0), v(1), u(1), v(2), u(2), v(0)])


class TestCheckWitness:
    def test_valid_cycle(self):
        assert check_witness(HEX, HEX_CYCLE) is None

    def test_wrong_length(self):
        w = HamiltonWitness.cycle([u(0), v(1), u(1), v(2)])
        assert check_witness(HEX, w).kind == "WrongLength"

    def test_repeated_vertex(self):
        w = HamiltonWitness.cycle([u(0), v(1), u(1), v(2), u(2), v(1)])
        assert check_witness(HEX, w).kind == "RepeatedVertex"

    def test_non_adjacent_step(self):
        w = HamiltonWitness.cycle([u(0), u(1), v(1), v(2), u(2), v(0)])
        bad = check_witness(HEX, w)
        assert bad.kind == "NonAdjacentStep" and bad.position == 0

    def test_open_cycle(self):
        s = parse_spec("B(7;1,6;0;2,5)")
        good = hamilton_cycle(adjacency_from_spec(s)).witness
        seq = list(good.sequence)
        seq[3], seq[4] = seq[4], seq[3]
        assert check_witness(s, HamiltonWitness.cycle(seq)) is not None

    def test_wrong_endpoints(self):
        w = HamiltonWitness("path", HEX_CYCLE.sequence, start=u(0), end=u(1))
        assert check_witness(HEX, w).kind == "WrongEndpoints"

    def test_path_accepted(self):
        w = HamiltonWitness.path(HEX_CYCLE.sequence)
        assert check_witness(HEX, w) is None

    def test_fuzz_perturbations_rejected(self, rng):
        s = parse_spec("B(7;1,6;0;2,5)")
        base = hamilton_cycle(adjacency_from_spec(s)).witness
        n = len(base.sequence)
        rejected = 0
        for _ in range(200):
            seq = list(base.sequence)
            op = rng.randrange(3)
            if op == 0:
                i = rng.randrange(n)
                seq[i] = Vertex(seq[i].layer, (seq[i].index + rng.randint(1, 6)) % 7)
            elif op == 1:
                i, j = rng.sample(range(n), 2)
                seq[i], seq[j] = seq[j], seq[i]
            else:
                seq.pop(rng.randrange(n))
            if check_witness(s, HamiltonWitness.cycle(seq)) is not None:
                rejected += 1
        assert rejected > 150  # most random edits break something


class TestEdgeProfile:
    def test_pure_haar_cycle(self):
        prof = witness_edge_profile(HEX, HEX_CYCLE)
        assert prof == {"outer": 0, "inner": 0, "spoke": 6}

    def test_gp_spoke_count_even_positive(self):
        s = parse_spec("B(7;1,6;0;2,5)")
        w = hamilton_cycle(adjacency_from_spec(s)).witness
        prof = witness_edge_profile(s, w)
        assert prof["spoke"] >= 2 and prof["spoke"] % 2 == 0

    def test_profile_requires_valid_witness(self):
        w = HamiltonWitness.cycle([u(0), u(1), v(1), v(2), u(2), v(0)])
        with pytest.raises(InvalidWitness):
            witness_edge_profile(HEX, w)

    def test_has_outer_and_inner(self):
        assert not has_outer_and_inner(HEX, HEX_CYCLE)

    def test_classification_rederived(self):
        s = validate_spec(8, [2, 6], [0, 1], [4])
        assert classify_edge(s, u(0), u(2)).kind == "outer"
        assert classify_edge(s, v(0), v(4)) == ("inner", 4)
        assert classify_edge(s, u(0), v(1)) == ("spoke", 1)
        assert classify_edge(s, u(0), v(3)) is None
        assert classify_edge(s, u(0), u(1)) is None


class TestCrossValidate:
    def test_agreement_on_exception(self):
        from bicirculant.dispatch import dispatch_solve
        from bicirculant.verify import cross_validate

        s = parse_spec("B(11;1,10;0;2,9)")
        rep = dispatch_solve(s)
        out = cross_validate(s, rep)
        assert out["oracle"] == "no" and out["agrees"]

    def test_certificate_dominance(self):
        from bicirculant.dispatch import dispatch_solve
        from bicirculant.verify import cross_validate

        s = parse_spec("B(7;1,6;0;2,5)")
        rep = dispatch_solve(s)
        out = cross_validate(s, rep)
        assert out["witness_ok"] and out["agrees"]
