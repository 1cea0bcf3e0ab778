"""CLI contract: subcommands, exit codes, formats."""

import json

import pytest

from bicirculant.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestSolve:
    def test_exception_exit_zero(self, capsys):
        code, out, _ = run(capsys, "solve", "B(5;1,4;0;2,3)", "--json")
        assert code == 0
        payload = json.loads(out)
        assert payload["verdict"] == "exception"
        assert payload["exception"]["tag"] == "AlspachGP"

    def test_hamiltonian(self, capsys):
        code, out, _ = run(capsys, "solve", "B(3;;0,1;)", "--json")
        assert code == 0
        payload = json.loads(out)
        assert payload["verdict"] == "hamiltonian"
        assert len(payload["witness"]["sequence"]) == 6

    def test_parse_error_exit_three(self, capsys):
        code, _, err = run(capsys, "solve", "B(nope)")
        assert code == 3 and "parse error" in err

    def test_emit_dot(self, capsys, tmp_path):
        target = tmp_path / "out.dot"
        code, _, _ = run(
            capsys, "solve", "B(24;1,23;0,12;4,20)", "--emit-dot", str(target), "--json"
        )
        assert code == 0
        text = target.read_text()
        assert text.startswith("graph bicirculant")
        assert "color=red" in text  # the witness is highlighted

    def test_json_spec_accepted(self, capsys):
        code, out, _ = run(capsys, "solve", '{"m":3,"R":[],"S":[0,1],"T":[]}', "--json")
        assert code == 0 and json.loads(out)["verdict"] == "hamiltonian"


class TestParams:
    def test_nonuniform(self, capsys):
        code, out, _ = run(capsys, "params", "B(30;1,29;0,15;4,26)", "--json")
        assert code == 0
        payload = json.loads(out)
        assert payload["kind"] == "nonuniform"
        assert (payload["lambda"], payload["mu"], payload["rho"]) == (3, 3, 2)
        assert payload["grid"][1][0] == 4

    def test_uniform(self, capsys):
        code, out, _ = run(capsys, "params", "B(24;1,23;0,12;4,20)", "--json")
        payload = json.loads(out)
        assert code == 0 and payload["kind"] == "uniform"

    def test_no_representation(self, capsys):
        code, _, err = run(capsys, "params", "B(30;1,29;0,15;14,16)", "--json")
        assert code == 2 and "no representation" in err


class TestOracle:
    def test_definitive(self, capsys):
        code, out, _ = run(capsys, "oracle", "B(7;1,6;0;2,5)", "--json")
        assert code == 0 and json.loads(out)["verdict"] == "yes"

    def test_negative(self, capsys):
        code, out, _ = run(capsys, "oracle", "B(5;1,4;0;2,3)", "--json")
        assert code == 0 and json.loads(out)["verdict"] == "no"


class TestVerify:
    def test_ok_and_violation(self, capsys, tmp_path):
        good = {
            "spec": "B(3;;0,1;)",
            "witness": {"kind": "cycle", "sequence": ["u0", "v1", "u1", "v2", "u2", "v0"]},
        }
        p = tmp_path / "w.json"
        p.write_text(json.dumps(good))
        code, out, _ = run(capsys, "verify", str(p))
        assert code == 0 and json.loads(out)["ok"]

        bad = dict(good, witness={"kind": "cycle", "sequence": ["u0", "u1", "v1", "v2", "u2", "v0"]})
        p.write_text(json.dumps(bad))
        code, out, _ = run(capsys, "verify", str(p))
        assert code == 1
        payload = json.loads(out)
        assert not payload["ok"] and "NonAdjacentStep" in payload["violation"]

    def test_bad_input_exit_three(self, capsys, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text("{}")
        code, _, err = run(capsys, "verify", str(p))
        assert code == 3


class TestExport:
    def test_json_edges_roundtrip(self, capsys):
        code, out, _ = run(capsys, "export", "B(5;1,4;0;2,3)", "--format", "json-edges")
        assert code == 0
        payload = json.loads(out)
        assert len(payload["edges"]) == 15
        from bicirculant.graph import spec_from_json_dict, edge_set, parse_vertex

        spec = spec_from_json_dict(payload["spec"])
        got = {frozenset((parse_vertex(x), parse_vertex(y))) for x, y, _, _ in payload["edges"]}
        assert got == edge_set(spec)

    def test_dot_counts(self, capsys):
        code, out, _ = run(capsys, "export", "B(5;1,4;0;2,3)", "--format", "dot")
        assert code == 0
        assert out.count(" -- ") == 15
        assert out.count("shape=circle") == 10

    def test_unknown_format_exit_three(self, capsys):
        code = main(["export", "B(3;;0,1;)", "--format", "pdf"])
        assert code == 3


class TestCensusCommand:
    def test_tiny_census(self, capsys, tmp_path):
        stream = tmp_path / "census.jsonl"
        code, out, _ = run(
            capsys, "census", "--m-min", "1", "--m-max", "5", "--out", str(stream), "--json"
        )
        assert code == 0
        summary = json.loads(out)
        assert summary["total"] == 66
        assert sorted(summary["exceptions"]) == ["B(1;;0;)", "B(5;1,4;0;2,3)", "B(5;2,3;0;1,4)"]
        assert summary["disagreements"] == []
        lines = [json.loads(x) for x in stream.read_text().splitlines()]
        assert len(lines) == summary["total"]

    def test_sampled_census_deterministic(self, capsys):
        code1, out1, _ = run(
            capsys, "census", "--m-min", "10", "--m-max", "20", "--sample", "12",
            "--seed", "42", "--json", "--no-cross-check",
        )
        code2, out2, _ = run(
            capsys, "census", "--m-min", "10", "--m-max", "20", "--sample", "12",
            "--seed", "42", "--json", "--no-cross-check",
        )
        assert code1 == code2 == 0
        s1, s2 = json.loads(out1), json.loads(out2)
        assert s1["total"] == 12 and s1["tag_histogram"] == s2["tag_histogram"]
