import csv
import io
import json
import subprocess
import sys

import pytest

from inverse_markov.bounds import BoundReport, diamond_width, komarov_upper
from inverse_markov import cli
from inverse_markov.cli import parse_n, run
from inverse_markov.geometry import ResourceLimitError, set_from_json
from inverse_markov.search import MarkovEstimate

DIAMOND = '{"shape": "diamond", "epsilon": 0.3}'


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_geom_reports_width(capsys):
    code, out, _ = call(capsys, "geom", "--set", DIAMOND)
    doc = json.loads(out)
    assert code == 0
    assert doc["results"][0]["d"] == pytest.approx(2.0)
    assert doc["results"][0]["w"] == pytest.approx(0.5747, abs=1e-4)
    assert doc["config"]["subcommand"] == "geom"
    assert set_from_json(doc["config"]["set"]) == set_from_json(json.loads(DIAMOND))


def test_usage_errors_exit_one(capsys):
    assert call(capsys, "geom", "--set", "{oops")[0] == 1
    assert call(capsys, "geom")[0] == 1
    assert call(capsys, "bounds", "--set", DIAMOND, "--n", "5..2")[0] == 1
    assert call(capsys, "frobnicate")[0] == 1
    code, _, err = call(capsys, "reproduce", "nope")
    assert code == 1 and "diamond-sweep" in err


def test_resource_cap_exit_three(capsys, monkeypatch):
    def too_big(*args, **kwargs):
        raise ResourceLimitError("boundary samples exceed cap")

    monkeypatch.setattr(cli, "cmd_witness", too_big)
    code, out, err = call(capsys, "witness", "--set", DIAMOND, "--n", "3")
    assert code == 3 and out == "" and "resource cap" in err


def test_bounds_csv_round_trip(capsys):
    code, out, _ = call(capsys, "bounds", "--set", '{"shape": "diamond", "epsilon": 0.2}', "--n", "1..300",
                        "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("# config: ")
    rows = list(csv.DictReader(io.StringIO("\n".join(lines[1:]))))
    assert len(rows) == 300
    assert "corollary1_threshold" in rows[0] and "sharpness_threshold" in rows[0]
    assert set(rows[0]) == set(BoundReport.csv_fields())
    # 17 significant digits survive the round trip
    assert float(rows[199]["komarov_upper"]) == komarov_upper(2.0, diamond_width(0.2), 200)


def test_segment_bounds_flag_revesz_as_missing(capsys):
    _, out, _ = call(capsys, "bounds", "--set", '{"shape": "segment", "endpoints": [[-1, 0], [1, 0]]}',
                     "--n", "4")
    row = json.loads(out)["results"][0]
    assert row["w"] == 0 and row["revesz_lower"] is None


def test_witness_branches(capsys):
    code, out, _ = call(capsys, "witness", "--set", '{"shape": "diamond", "epsilon": 0.2}', "--n", "50,200,201")
    rows = json.loads(out)["results"]
    assert code == 0
    assert [r["case_tag"] for r in rows] == ["SMALL_N_OR_WIDE", "EVEN", "ODD"]
    assert [r["m"] for r in rows] == [0, 100, 100]
    assert all(r["holds"] and r["margin"] > 0 for r in rows)


def test_estimate_sandwich_and_schema(capsys):
    code, out, _ = call(capsys, "estimate", "--set", DIAMOND, "--n", "2", "--budget", "200")
    row = json.loads(out)["results"][0]
    assert code == 0 and row["sandwich"]
    est = MarkovEstimate.from_json(row)
    assert est.value >= row["komarov_lower"]


def test_verify_small_grid(capsys):
    code, out, _ = call(capsys, "verify", "--w-step", "0.1", "--m", "100", "--samples", "200")
    doc = json.loads(out)
    assert code == 0 and doc["summary"]["passed"]
    assert {"check_id", "params", "status", "margin", "method"} <= set(doc["results"][0])


def test_output_is_byte_identical(capsys, tmp_path):
    out = tmp_path / "sweep.csv"
    runs = []
    for _ in range(2):
        assert run(["reproduce", "diamond-sweep", "--n", "50", "--format", "csv", "--out", str(out)]) == 0
        runs.append(out.read_bytes())
    assert runs[0] == runs[1] and len(runs[0]) > 0


def test_set_from_file(capsys, tmp_path):
    p = tmp_path / "k.json"
    p.write_text('{"shape": "disk", "center": [1, 2], "radius": 0.5}')
    code, out, _ = call(capsys, "geom", "--set", str(p))
    assert code == 0 and json.loads(out)["results"][0]["d"] == pytest.approx(1.0)


def test_parse_n():
    assert parse_n("3") == [3]
    assert parse_n("1..4") == [1, 2, 3, 4]
    assert parse_n("2:3,7") == [2, 3, 7]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "inverse_markov", "geom", "--set", DIAMOND, "--format", "csv"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[1].startswith("d,w,s")
