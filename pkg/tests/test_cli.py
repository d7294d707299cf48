from __future__ import annotations

import json

import pytest
from click.testing import CliRunner

from modan.cli import main
from modan import io
from modan.exactlin import Subspace


@pytest.fixture
def run(fixture_dir):
    runner = CliRunner()

    def invoke(*args):
        args = [str(fixture_dir / a) if a.endswith(".json") and "/" not in a else a for a in args]
        return runner.invoke(main, args, catch_exceptions=False)
    return invoke


def _json(result):
    return json.loads(result.output)


def test_validate(run):
    r = run("validate", "A2.json")
    assert r.exit_code == 0 and "valid: True" in r.output
    assert run("validate", "A0.json").exit_code == 0


def test_validate_reports_witness(run):
    r = run("validate", "broken_assoc.json")
    assert r.exit_code == 1
    assert "(b0*b0)*b1 != b0*(b0*b1)" in r.output


def test_usage_errors(run, tmp_path):
    assert run("validate", str(tmp_path / "missing.json")).exit_code == 2
    assert run("nonsense").exit_code == 2
    assert run("connection", "A2.json").exit_code == 2
    assert run("check", "A2.json", "--only", "no.such.tag").exit_code == 2


def test_malformed_file_fails(run, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"algebra": {"basis": ["e"], "products": [[[0.5]]]}}')
    r = run("validate", str(p))
    assert r.exit_code == 1 and "floats" in r.output


def test_multipliers_json_round_trip(run):
    out = _json(run("--json", "multipliers", "A3.json"))
    assert out["dim"] == 2
    vecs = [[x for row in m for x in row] for m in out["basis"]]
    s = io.subspace_from_json({"ambient_dim": 4, "basis": vecs})
    from modan.fixtures import truncated_ideal
    from modan.multiplier import multiplier_space
    assert s == multiplier_space(truncated_ideal()).space


def test_derivations_and_module_spaces(run):
    assert _json(run("derivations", "A2.json", "--json"))["dim"] == 1
    mm = _json(run("module-multipliers", "AD3.json", "--json"))
    assert mm["dim"] == 3 and mm["hom_into_annihilator_dim"] == 1
    md = _json(run("module-derivations", "M2.json", "--json"))
    assert md["dim"] == 3 and md["endomorphism_dim"] == 2
    assert md["projection_kernel_dim"] == 2


def test_connection_with_potential(run, tmp_path):
    p = tmp_path / "pot.json"
    p.write_text(json.dumps({"1": [[1, 0], [0, 1]]}))
    out = _json(run("connection", "AD3.json", "--potential", str(p), "--json"))
    assert out["flags"]["Lie"] is False
    assert out["curvature"]["0,1"] == [["-1", "0"], ["0", "-1"]]
    flat = _json(run("connection", "M2r2.json", "--json"))
    assert all(flat["flags"].values())


def test_gauge(run, tmp_path):
    g = tmp_path / "g.json"
    g.write_text(json.dumps([[1, 0], [1, 1]]))
    pair = tmp_path / "pair.json"
    pair.write_text(json.dumps({"module_op": [[0, 0], [0, 1]], "algebra_op": [[0, 0], [0, 1]]}))
    r = run("gauge", "M2.json", "--g", str(g), "--target", "derivation", "--input", str(pair), "--json")
    assert r.exit_code == 0
    out = _json(r)
    assert out["result"]["module_op"] == [["0", "0"], ["-1", "1"]]
    assert out["in_space"] and out["same_base"]


def test_gauge_rejects_non_linear(run, tmp_path):
    g = tmp_path / "g.json"
    g.write_text(json.dumps([[0, 1], [1, 0]]))
    pair = tmp_path / "pair.json"
    pair.write_text(json.dumps({"module_op": [[1, 0], [0, 1]], "algebra_op": [[1, 0], [0, 1]]}))
    r = run("gauge", "M2.json", "--g", str(g), "--target", "multiplier", "--input", str(pair))
    assert r.exit_code == 1


def test_cohomology_commands(run):
    h = _json(run("cohomology", "hochschild", "A2.json", "--json"))
    assert [r["H"] for r in h["rows"]] == [2, 0, 0, 0]
    d = _json(run("cohomology", "derham", "A2.json", "--json"))
    assert [r["H"] for r in d["rows"]] == [1, 0, 0, 0]
    m = _json(run("cohomology", "derham", "AD3.json", "--json"))
    assert [r["H"] for r in m["rows"]] == [0, 0, 0, 0]
    lift = _json(run("cohomology", "derham", "M2r2.json", "--kappa", "lift", "--qmax", "2", "--json"))
    assert [r["H"] for r in lift["rows"]] == [2, 0, 0]


def test_cohomology_refuses_bad_kappa(run, tmp_path):
    k = tmp_path / "k.json"
    k.write_text(json.dumps([[2, 0], [0, 2]]))
    assert run("cohomology", "hochschild", "A2.json", "--kappa", str(k)).exit_code == 1
    assert run("cohomology", "derham", "A3.json", "--kappa", str(k)).exit_code == 1


def test_text_table(run):
    r = run("cohomology", "derham", "M2.json", "--qmax", "1")
    assert r.output.splitlines()[0].split() == ["q", "dim", "rank", "H"]


def test_check_magic_and_homotopy(run):
    assert run("check-magic", "M2.json", "--qmax", "2").exit_code == 0
    h = _json(run("homotopy", "AD3.json", "--json"))
    assert h["ok"] and h["basis_forms_checked"] == {"0": 2, "1": 4, "2": 2, "3": 0}


def test_check_report(run):
    r = run("--json", "--qmax", "1", "check", "AD3.json")
    assert r.exit_code == 0
    out = _json(r)
    assert out["summary"]["fail"] == 0
    tags = [c["tag"] for c in out["checks"]]
    assert tags == sorted(tags)


def test_check_skips_degree_checks_at_zero(run):
    out = _json(run("check", "M2.json", "--qmax", "0", "--json"))
    skipped = [c["tag"] for c in out["checks"] if c["status"] == "skip"]
    assert skipped and all(t.startswith(("hochschild", "derham")) for t in skipped)


def test_same_seed_byte_identical(run):
    a = run("check", "M2.json", "--qmax", "1", "--seed", "5", "--json").output
    b = run("check", "M2.json", "--qmax", "1", "--seed", "5", "--json").output
    assert a == b


def test_oracle_command(run):
    r = run("oracle", "A3.json", "--json")
    assert r.exit_code == 0
    assert all(row["status"] == "agree" for row in _json(r)["rows"])
    assert run("oracle", "M2r2.json", "--cap", "2").exit_code == 1
