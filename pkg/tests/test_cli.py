"""Tests for the command line front end and scenario machinery."""

import json
import math
import os
import subprocess
import sys
from pathlib import Path

import pytest

from nccausal.cli import bound_curve_rows, main, scan_cone_rows, zitter_report
from nccausal.scenario import ScenarioError, load_scenario, run_check
from nccausal.spacetime import SI_UNITS

REPO = Path(__file__).resolve().parents[1]
SCENARIOS = REPO / "scenarios"


def _write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def _read_records(path):
    lines = Path(path).read_text().splitlines()
    header = json.loads(lines[0])
    assert header["kind"] == "header"
    return header, [json.loads(line) for line in lines[1:]]


def _body(path):
    return Path(path).read_text().splitlines()[1:]


# ---------------------------------------------------------------------------
# check
# ---------------------------------------------------------------------------


def test_check_m2_examples(tmp_path):
    out = str(tmp_path / "out.jsonl")
    code = main(["check", str(SCENARIOS / "m2_basic.json"), "--out", out])
    assert code == 0
    header, records = _read_records(out)
    assert [r["verdict"] for r in records] == [True, False, False]
    for r in records:
        if r["verdict"]:
            assert r["distance"] >= r["bound"] - 1e-9


def test_check_moyal_cone_examples(tmp_path):
    out = str(tmp_path / "out.jsonl")
    code = main(["check", str(SCENARIOS / "moyal_coherent.json"), "--out", out])
    assert code == 0
    _, records = _read_records(out)
    assert [r["verdict"] for r in records] == [True, False, True]


def test_check_two_sheet_ignores_vector_field(tmp_path):
    with pytest.warns(UserWarning, match="ignored"):
        scenario = load_scenario(str(SCENARIOS / "two_sheet_basic.json"))
    records, _ = run_check(scenario)
    assert [r["verdict"] for r in records] == [True, False, True]
    # identical scenario without the vector-field entry: same verdicts
    doc = json.loads((SCENARIOS / "two_sheet_basic.json").read_text())
    del doc["A"]
    records2, _ = run_check(load_scenario(doc))
    assert [r["verdict"] for r in records] == [r["verdict"] for r in records2]


def test_check_higgs_grid_scenario(tmp_path):
    out = str(tmp_path / "out.jsonl")
    code = main(["check", str(SCENARIOS / "two_sheet_higgs_grid.json"), "--out", out])
    assert code == 0
    _, records = _read_records(out)
    # weight 2: crossing needs proper time >= pi/4 ~ 0.785
    assert [r["verdict"] for r in records] == [True, False]


def test_check_generalized_exit_code_2(tmp_path):
    out = str(tmp_path / "out.jsonl")
    code = main(["check", str(SCENARIOS / "moyal_generalized.json"), "--out", out])
    assert code == 2  # the spatial-jump pair is Undetermined
    _, records = _read_records(out)
    assert records[0]["verdict"] == "Causal"
    assert records[1]["verdict"] == "Undetermined"
    assert "reason" in records[1]


def test_check_empty_pairs(tmp_path):
    doc = {"model": "m2", "dirac": {"d1": 1.0, "d2": 0.0}, "pairs": []}
    out = str(tmp_path / "out.jsonl")
    code = main(["check", _write(tmp_path, "s.json", doc), "--out", out])
    assert code == 0
    header, records = _read_records(out)
    assert records == []


def test_check_schema_error_reports_path_and_writes_nothing(tmp_path, capsys):
    doc = {
        "model": "m2",
        "dirac": {"d1": 1.0, "d2": 0.0},
        "pairs": [{"from": {"t": 0, "x": 0, "latitude": 0}, "to": {"t": "soon", "x": 0, "latitude": 0}}],
    }
    out = str(tmp_path / "out.jsonl")
    code = main(["check", _write(tmp_path, "bad.json", doc), "--out", out])
    assert code == 1
    assert not os.path.exists(out)  # no partial result files
    err = capsys.readouterr().err
    assert "scenario error" in err
    assert "to.t" in err  # JSON path of the offending node


def test_check_unreadable_file(tmp_path, capsys):
    code = main(["check", str(tmp_path / "missing.json")])
    assert code == 1


def test_check_deterministic_modulo_header(tmp_path):
    out1 = str(tmp_path / "a.jsonl")
    out2 = str(tmp_path / "b.jsonl")
    scenario = str(SCENARIOS / "two_sheet_higgs_grid.json")
    assert main(["check", scenario, "--out", out1]) == 0
    assert main(["check", scenario, "--out", out2]) == 0
    assert _body(out1) == _body(out2)
    h1, _ = _read_records(out1)
    h2, _ = _read_records(out2)
    assert {k: v for k, v in h1.items() if k != "timestamp"} == {
        k: v for k, v in h2.items() if k != "timestamp"
    }


def test_check_parallel_matches_serial(tmp_path, monkeypatch):
    out1 = str(tmp_path / "serial.jsonl")
    out2 = str(tmp_path / "parallel.jsonl")
    scenario = str(SCENARIOS / "m2_basic.json")
    monkeypatch.setenv("NCC_THREADS", "1")
    assert main(["check", scenario, "--out", out1]) == 0
    monkeypatch.setenv("NCC_THREADS", "4")
    assert main(["check", scenario, "--out", out2]) == 0
    assert _body(out1) == _body(out2)


def test_cli_seed_override_changes_provenance(tmp_path):
    out = str(tmp_path / "out.jsonl")
    assert main(["check", str(SCENARIOS / "m2_basic.json"), "--seed", "7", "--out", out]) == 0
    header, records = _read_records(out)
    assert header["seed"] == 7
    assert all(r["provenance"]["seed"] == 7 for r in records)


# ---------------------------------------------------------------------------
# sweeps
# ---------------------------------------------------------------------------


def test_scan_cone_small_grid(tmp_path):
    rows = scan_cone_rows(-1, 1, 3, -1, 1, 3)
    causal = {(re, im) for re, im, c in rows if c}
    # closed cone: the origin itself is causal (reflexivity), plus the three
    # points on and inside the boundary at re = 1
    assert causal == {(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (1.0, -1.0)}
    # symmetric under im -> -im
    verdicts = {(re, im): c for re, im, c in rows}
    assert all(verdicts[(re, im)] == verdicts[(re, -im)] for re, im, _ in rows)


def test_scan_cone_origin_is_causal():
    rows = scan_cone_rows(0, 0, 1, 0, 0, 1)
    assert rows == [(0.0, 0.0, 1)]


def test_scan_cone_csv_output(tmp_path):
    out = str(tmp_path / "cone.csv")
    assert main(["scan-cone", "--re-steps", "3", "--im-steps", "3", "--out", out]) == 0
    lines = Path(out).read_text().splitlines()
    assert lines[0] == "re,im,causal"
    assert len(lines) == 10
    assert sum(int(line.split(",")[2]) for line in lines[1:]) == 4


def test_bound_curve_values(tmp_path):
    rows = bound_curve_rows(2.0, 3)
    expected = [math.pi / 2, math.pi / (2 * math.sqrt(2)), math.pi / (2 * math.sqrt(3)), math.pi / 4]
    assert [n for n, _ in rows] == [0, 1, 2, 3]
    for (_, got), want in zip(rows, expected):
        assert got == pytest.approx(want, abs=1e-12)
    out = str(tmp_path / "curve.csv")
    assert main(["bound-curve", "--theta", "2.0", "--n-max", "3", "--out", out]) == 0
    lines = Path(out).read_text().splitlines()
    assert lines[0] == "n,bound"
    assert [float(line.split(",")[1]) for line in lines[1:]] == [b for _, b in rows]


def test_bound_curve_small_theta():
    assert all(b < 0.02 for _, b in bound_curve_rows(1e-4, 5))


def test_bound_curve_rejects_bad_args(capsys):
    assert main(["bound-curve", "--theta", "0.0", "--n-max", "3"]) == 1
    assert main(["bound-curve", "--theta", "1.0", "--n-max", "-1"]) == 1


# ---------------------------------------------------------------------------
# zitter
# ---------------------------------------------------------------------------


def test_zitter_report_fields(tmp_path):
    report = zitter_report(9.1093837e-31, SI_UNITS)
    assert report["cross_sheet_bound_s"] == report["zitterbewegung_period_s"] / 2
    assert report["cross_sheet_bound_natural"] == pytest.approx(math.pi / 2)
    out = str(tmp_path / "zitter.json")
    code = main(["zitter", "--mass", "9.1093837e-31", "--out", out])
    assert code == 0
    on_disk = json.loads(Path(out).read_text())
    assert on_disk["zitterbewegung_period_s"] == pytest.approx(4.05e-21, rel=0.01)
    assert main(["zitter", "--mass", "-1.0"]) == 1


def test_zitter_json_stdout(capsys):
    assert main(["zitter", "--mass", "1.0", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["mass_kg"] == 1.0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def test_verify_agreement(tmp_path):
    doc = {
        "model": "moyal",
        "params": {"theta": 1.0, "truncation": 32},
        "pairs": [
            {
                "id": "timelike",
                "from": {"kind": "coherent", "kappa_re": 0.0},
                "to": {"kind": "coherent", "kappa_re": 1.0},
            },
            {
                "id": "spacelike",
                "from": {"kind": "coherent", "kappa_re": 0.0},
                "to": {"kind": "coherent", "kappa_re": 0.0, "kappa_im": 0.5},
            },
        ],
        "options": {"budget": 300, "seed": 0},
    }
    out = str(tmp_path / "verify.jsonl")
    code = main(["verify", _write(tmp_path, "v.json", doc), "--out", out])
    assert code == 0
    _, records = _read_records(out)
    timelike, spacelike = records
    assert timelike["closed_form"] is True
    assert timelike["witness_found"] is False
    assert timelike["agreement"] is True
    assert spacelike["closed_form"] is False
    assert spacelike["witness_found"] is True
    assert spacelike["margin"] > 1e-4
    assert spacelike["agreement"] is True
    assert spacelike["verdict"] == "NotCausal"


def test_verify_cone_boundary_no_contradiction(tmp_path):
    lam = 1 / math.sqrt(2)
    doc = {
        "model": "moyal",
        "params": {"theta": 1.0, "truncation": 24},
        "pairs": [
            {
                "from": {"kind": "coherent", "kappa_re": 0.0},
                "to": {"kind": "coherent", "kappa_re": lam, "kappa_im": lam},
            }
        ],
        "options": {"budget": 150, "seed": 3},
    }
    out = str(tmp_path / "verify.jsonl")
    code = main(["verify", _write(tmp_path, "v.json", doc), "--out", out])
    assert code == 0
    _, records = _read_records(out)
    assert records[0]["closed_form"] is True
    assert records[0]["witness_found"] is False


def test_verify_inconclusive_pair_exits_2(tmp_path):
    # a barely-spacelike pair at tiny budget: closed form says no, the
    # search finds nothing, so the outcome stays undetermined
    doc = {
        "model": "moyal",
        "params": {"theta": 1.0, "truncation": 24},
        "pairs": [
            {
                "from": {"kind": "coherent", "kappa_re": 0.0},
                "to": {"kind": "coherent", "kappa_re": 0.999, "kappa_im": 1.0},
            }
        ],
        "options": {"budget": 0, "seed": 0},
    }
    out = str(tmp_path / "v.jsonl")
    code = main(["verify", _write(tmp_path, "v.json", doc), "--out", out])
    _, records = _read_records(out)
    if records[0]["witness_found"]:
        pytest.skip("gradient direction already certifies this pair")
    assert code == 2
    assert records[0]["verdict"] == "Undetermined"


def test_verify_verbose_emits_witness(tmp_path):
    doc = {
        "model": "moyal",
        "params": {"theta": 1.0, "truncation": 16},
        "pairs": [
            {
                "from": {"kind": "coherent", "kappa_re": 0.0},
                "to": {"kind": "coherent", "kappa_re": 0.0, "kappa_im": 0.6},
            }
        ],
        "options": {"budget": 200, "seed": 1},
    }
    out = str(tmp_path / "v.jsonl")
    code = main(["verify", _write(tmp_path, "v.json", doc), "--verbose", "--out", out])
    assert code == 0
    _, records = _read_records(out)
    assert records[0]["witness_found"] is True
    witness = records[0]["witness"]
    assert "coeffs_re" in witness and "coeffs_im" in witness
    assert max(witness["spectrum"]) <= 1e-9  # certified negative semidefinite


def test_verify_rejects_non_moyal(tmp_path, capsys):
    code = main(["verify", str(SCENARIOS / "m2_basic.json")])
    assert code == 1
    assert "moyal" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# misc
# ---------------------------------------------------------------------------


def test_scenario_rejects_unknown_model():
    with pytest.raises(ScenarioError):
        load_scenario({"model": "galilean", "pairs": []})


def test_scenario_rejects_wrong_schema_id():
    with pytest.raises(ScenarioError, match="schema"):
        load_scenario({"$schema": "urn:other:v9", "model": "m2", "dirac": {"d1": 1, "d2": 0}, "pairs": []})


def test_module_entry_point_smoke():
    proc = subprocess.run(
        [sys.executable, "-m", "nccausal", "bound-curve", "--theta", "2.0", "--n-max", "1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "n,bound"
