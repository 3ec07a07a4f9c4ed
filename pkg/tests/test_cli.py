"""CLI surface: subcommands, JSON emission, exit codes."""

import json

import pytest
from click.testing import CliRunner

from arrlab.cli import main

BRAID3 = {
    "dim": 3,
    "hyperplanes": [
        {"normal": [1, -1, 0], "offset": 0},
        {"normal": [1, 0, -1], "offset": 0},
        {"normal": [0, 1, -1], "offset": 0},
    ],
}


@pytest.fixture
def runner():
    return CliRunner()


def write(tmp_path, name, data):
    p = tmp_path / name
    p.write_text(json.dumps(data))
    return str(p)


def test_chi_text_and_json(runner, tmp_path):
    path = write(tmp_path, "a.json", BRAID3)
    res = runner.invoke(main, ["chi", path])
    assert res.exit_code == 0 and "t(t - 1)(t - 2)" in res.output
    res = runner.invoke(main, ["chi", path, "--json"])
    data = json.loads(res.output)
    assert data["roots"] == [0, 1, 2] and data["coeffs"] == [0, 2, -3, 1]


def test_chi_budget_exit_code(runner, tmp_path):
    # fresh arrangement (memoized chi results bypass the budget by design)
    fresh = {
        "dim": 4,
        "hyperplanes": [
            {"normal": [1, -1, 0, 0], "offset": 0},
            {"normal": [1, 0, -1, 0], "offset": 0},
            {"normal": [1, 0, 0, -1], "offset": 0},
            {"normal": [0, 1, -1, 0], "offset": 0},
            {"normal": [0, 1, 0, -1], "offset": 5},
            {"normal": [0, 0, 1, -1], "offset": 7},
        ],
    }
    path = write(tmp_path, "fresh.json", fresh)
    res = runner.invoke(main, ["chi", path, "--budget-flats", "2"])
    assert res.exit_code == 2


def test_malformed_input_exit_code(runner, tmp_path):
    bad = {"dim": 2, "hyperplanes": [{"normal": [1, -1], "offset": 0},
                                     {"normal": [2, -2], "offset": 0}]}
    path = write(tmp_path, "bad.json", bad)
    res = runner.invoke(main, ["chi", path])
    assert res.exit_code == 3


def test_free_verify_round_trip(runner, tmp_path):
    path = write(tmp_path, "a.json", BRAID3)
    cert = str(tmp_path / "cert.json")
    res = runner.invoke(main, ["free", path, "--cert-out", cert])
    assert res.exit_code == 0 and "supersolvable" in res.output
    res = runner.invoke(main, ["verify", cert])
    assert res.exit_code == 0 and "verified" in res.output
    # tamper: claim different exponents
    bundle = json.loads((tmp_path / "cert.json").read_text())
    bundle["certificate"]["exponents"] = [0, 1, 3]
    tampered = write(tmp_path, "tampered.json", bundle)
    res = runner.invoke(main, ["verify", tampered])
    assert res.exit_code == 1


def test_accuracy_profile_and_witness(runner, tmp_path):
    path = write(tmp_path, "a.json", BRAID3)
    wit = str(tmp_path / "wit.json")
    res = runner.invoke(main, ["accuracy", path, "--witness-out", wit])
    assert res.exit_code == 0 and "flag-accurate    : True" in res.output
    res = runner.invoke(main, ["verify", wit])
    assert res.exit_code == 0


def test_graph_checks(runner, tmp_path):
    c4 = write(tmp_path, "c4.json", {"n": 4, "edges": [[0, 1], [1, 2], [2, 3], [0, 3]]})
    res = runner.invoke(main, ["graph", c4, "--check=chordal"])
    assert res.exit_code == 1 and "induced cycle" in res.output
    k3 = write(tmp_path, "k3.json", {"n": 3, "edges": [[0, 1], [1, 2], [0, 2]]})
    res = runner.invoke(main, ["graph", k3, "--check=accuracy"])
    assert res.exit_code == 0 and "flag-accurate    : True" in res.output


def test_ideal_stream(runner):
    res = runner.invoke(main, ["ideal", "--type=A2", "--all"])
    assert res.exit_code == 0
    lines = [json.loads(line) for line in res.output.strip().splitlines()]
    assert len(lines) == 5
    assert all(line["mat_partition_valid"] for line in lines)


def test_ideal_dot(runner):
    res = runner.invoke(main, ["ideal", "--type=A2", "--roots"])
    assert res.exit_code == 0 and res.output.startswith("digraph")


def test_deform_validate(runner):
    res = runner.invoke(main, ["deform", "--family=bfam", "--p=0", "--l=2", "--m=1", "--a=1", "--validate"])
    assert res.exit_code == 0
    data = json.loads(res.output)
    assert data["expected_exponents"] == [1, 5, 7] and data["flag_accurate"] is True


def test_descend_validate_row(runner):
    res = runner.invoke(main, ["descend", "--genealogy=shi", "--l=2", "--validate-row"])
    assert res.exit_code == 0
    data = json.loads(res.output)
    assert all(c["exponents_ok"] and c["mutation_replay_ok"] and c["ind_flag_accurate"]
               for c in data["cells"])


def test_restrict_and_localize(runner, tmp_path):
    path = write(tmp_path, "a.json", BRAID3)
    res = runner.invoke(main, ["restrict", path, "--flat", "[[1,-1,0,0]]"])
    assert res.exit_code == 0
    assert json.loads(res.output)["dim"] == 2
    res = runner.invoke(main, ["localize", path, "--flat", "[[1,-1,0,0]]"])
    assert json.loads(res.output)["hyperplanes"] == [{"normal": [1, -1, 0], "offset": 0}]


def test_ideal_flag_accuracy_stream(runner):
    res = runner.invoke(main, ["ideal", "--type=A2", "--all", "--check=flag-accuracy"])
    assert res.exit_code == 0
    lines = [json.loads(line) for line in res.output.strip().splitlines()]
    assert all(line.get("flag_accurate", True) for line in lines)


def test_ideal_big_type_guard(runner):
    res = runner.invoke(main, ["ideal", "--type=E8", "--all"])
    assert res.exit_code == 3 and "allow-big" in res.output


def test_verify_rejects_malformed_bundles(runner, tmp_path):
    base = {"arrangement": BRAID3}
    for payload in (
        {"certificate": {"kind": "supersolvable", "exponents": "zap", "derivation": {}}},
        {"certificate": {"kind": "divisional", "exponents": [0, 1, 2], "derivation": {}}},
        {"witness": {"kind": "flag", "flats": [{"dim": "x"}], "essential_coords": [0, 1, 2]}},
    ):
        p = write(tmp_path, "m.json", {**base, **payload})
        res = runner.invoke(main, ["verify", p])
        assert res.exit_code == 1, (payload, res.output)
