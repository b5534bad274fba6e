"""Command line behavior: formats, exit codes, determinism."""

import json
import subprocess
import sys

from nilorbit.cli import main


def run_cli(args, tmp_path=None):
    out = tmp_path / "out.json" if tmp_path else None
    argv = list(args) + (["--out", str(out)] if out else [])
    code = main(argv)
    text = out.read_text() if out else None
    return code, text


def test_classify_example(tmp_path):
    pair = tmp_path / "pair.json"
    pair.write_text(json.dumps({"p": 5, "rows": [[0, 0], [1, 0]], "v": [1, 0]}))
    code, text = run_cli(["classify", "--in", str(pair)], tmp_path)
    assert code == 0
    doc = json.loads(text)
    assert doc["result"]["bpartition"] == [[1], [1]]
    assert doc["result"]["a"] == 1
    assert doc["result"]["dim"] == 3
    assert doc["seed"] == 0


def test_classify_mixed_pair(tmp_path):
    pair = tmp_path / "pair.json"
    pair.write_text(json.dumps({"p": 5, "rows": [[1, 0], [0, 2]], "v": [1, 0]}))
    code, text = run_cli(["classify", "--in", str(pair)], tmp_path)
    assert code == 0
    doc = json.loads(text)
    assert doc["result"]["mu"] == 1
    assert doc["result"]["blocks"] == [
        {"eigenvalue": 1, "bpartition": [[1], []]},
        {"eigenvalue": 2, "bpartition": [[], [1]]},
    ]


def test_census_json_and_csv(tmp_path):
    code, text = run_cli(["census", "--n", "2", "--prime", "2"], tmp_path)
    assert code == 0
    doc = json.loads(text)
    assert len(doc["classes"]) == 5
    assert sum(row["count"] for row in doc["classes"]) == 16

    code, text = run_cli(
        ["census", "--n", "2", "--prime", "2", "--format", "csv"], tmp_path
    )
    assert code == 0
    lines = text.strip().split("\n")
    assert lines[0] == "lambda1,lambda2,count,a,dim"
    assert len(lines) == 6
    assert lines[1] == "2,,6,0,4"


def test_census_budget_exit_code(tmp_path):
    code = main(
        ["census", "--n", "3", "--prime", "3", "--budget", "10", "--out", str(tmp_path / "x")]
    )
    assert code == 3


def test_invalid_input_exit_code(tmp_path):
    code = main(["classify", "--in", str(tmp_path / "missing.json")])
    assert code == 2
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"p": 9, "rows": [[0]], "v": [0]}))
    assert main(["classify", "--in", str(bad)]) == 2


def test_springer_single_mu(tmp_path):
    code, text = run_cli(["springer", "--mu", "[[1],[1]]"], tmp_path)
    assert code == 0
    doc = json.loads(text)
    assert doc["ok"] is True
    rep = doc["reports"][0]
    assert rep["d_mu"] == 0 and rep["degree_ok"] and rep["leading_ok"]


def test_closure_command(tmp_path):
    code, text = run_cli(["closure", "--n", "2"], tmp_path)
    assert code == 0
    doc = json.loads(text)
    assert {"lower": [[1], [1]], "upper": [[2], []]} in doc["hasse"]
    assert len(doc["hasse"]) == 5


def test_galois_command(tmp_path):
    code, text = run_cli(["galois", "--n", "2"], tmp_path)
    assert code == 0
    doc = json.loads(text)
    assert doc["p"] == 3
    assert doc["ok"] is True
    assert [row["count"] for row in doc["rows"]] == [2, 1, 2]


def test_slice_command_n1(tmp_path):
    code, text = run_cli(["slice", "--n", "1", "--primes", "3", "5", "7"], tmp_path)
    assert code == 0
    doc = json.loads(text)
    assert doc["ok"] is True
    assert all(row["check"] == "slice-dimension" for row in doc["rows"])


def test_springer_stratum_command(tmp_path):
    code, text = run_cli(["springer", "--n", "2", "--m", "2"], tmp_path)
    assert code == 0
    doc = json.loads(text)
    assert [rep["mu"] for rep in doc["reports"]] == [[[2], []], [[1, 1], []]]
    assert doc["ok"] is True


def test_exotic_roots_command(tmp_path):
    code, text = run_cli(["exotic", "--n", "2", "--checks", "roots"], tmp_path)
    assert code == 0
    doc = json.loads(text)
    assert doc["rows"][0]["check"] == "roots" and doc["rows"][0]["ok"]


def test_verify_partitions_deterministic(tmp_path):
    code1, text1 = run_cli(["verify", "--suite", "partitions", "--n-max", "4"], tmp_path)
    code2, text2 = run_cli(["verify", "--suite", "partitions", "--n-max", "4"], tmp_path)
    assert code1 == code2 == 0
    assert text1 == text2
    doc = json.loads(text1)
    assert doc["ok"] is True
    assert all(check["ok"] for check in doc["checks"])


def test_cli_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "nilorbit.cli", "verify", "--suite", "partitions", "--n-max", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert doc["command"] == "verify" and doc["ok"]
