from __future__ import annotations

import json
import subprocess
import sys

import pytest

from fanramsey import BLUE, ColoredGraph, G2Spec, parse, serialize
from fanramsey.cli import main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def g1_file(tmp_path, capsys):
    path = tmp_path / "g1.cg"
    assert main(["construct", "g1", "--n", "4", "-o", str(path)]) == 0
    capsys.readouterr()
    return path


def test_construct_g1(g1_file, capsys):
    assert g1_file.read_text().startswith("cg 24\n")


@pytest.mark.parametrize("argv, header", [
    (["lower-bound", "--n", "4"], "cg 24 star 17"),
    (["g2", "--n", "4", "--seed", "3"], "cg 24"),
    (["matching-critical", "--m", "2", "--r", "4"], "cg 5"),
    (["fan-k3-critical", "--n", "2"], "cg 8"),
])
def test_construct_to_stdout(capsys, argv, header):
    code, out, err = run(capsys, "construct", *argv)
    assert code == 0 and out.splitlines()[0] == header
    assert "order" in err


def test_construct_g2_seed_is_reproducible(capsys):
    _, a, _ = run(capsys, "construct", "g2", "--n", "4", "--seed", "9")
    _, b, _ = run(capsys, "construct", "g2", "--n", "4", "--seed", "9")
    assert a == b


def test_construct_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(G2Spec(4, [(0, 8)], [(8, 16)], [(16, 0)]).to_json())
    assert run(capsys, "construct", "g2", "--n", "4", "--spec", bad)[0] == 2
    assert run(capsys, "construct", "matching-critical", "--m", "2")[0] == 2
    assert run(capsys, "construct", "g1", "--n", "1")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["construct", "g7"])
    assert exc.value.code == 2


def test_check(g1_file, tmp_path, capsys):
    code, out, _ = run(capsys, "check", g1_file, "--red", "fan:4", "--blue", "clique:4")
    assert code == 0 and json.loads(out) == {"free": True}
    k4 = tmp_path / "k4.cg"
    k4.write_text(serialize(ColoredGraph.monochromatic(4, BLUE)))
    code, out, _ = run(capsys, "check", k4, "--red", "fan:1", "--blue", "clique:4")
    report = json.loads(out)
    assert code == 1 and report["free"] is False
    assert report["witness"]["kind"] == "Clique" and report["witness"]["color"] == "B"


def test_check_parse_errors(g1_file, tmp_path, capsys):
    trunc = tmp_path / "t.cg"
    trunc.write_text("\n".join(g1_file.read_text().splitlines()[:10]))
    code, _, err = run(capsys, "check", trunc, "--red", "fan:4", "--blue", "clique:4")
    assert code == 2 and "line" in err
    assert run(capsys, "check", tmp_path / "missing.cg", "--red", "fan:4", "--blue", "clique:4")[0] == 2
    assert run(capsys, "check", g1_file, "--red", "clique:4", "--blue", "clique:4")[0] == 2
    assert run(capsys, "check", g1_file, "--red", "fan:x", "--blue", "clique:4")[0] == 2


def test_search(capsys):
    code, out, _ = run(capsys, "search", "--order", "6", "--red", "matching:2", "--blue", "clique:4")
    assert code == 0 and json.loads(out)["status"] == "Exhausted"
    code, out, _ = run(capsys, "search", "--order", "5", "--red", "matching:2", "--blue", "clique:4", "--no-symmetry")
    report = json.loads(out)
    assert code == 0 and report["status"] == "WitnessFound" and report["stats"]["symmetry"] == "none"
    assert parse(report["witness"]).order == 5


def test_search_threads(capsys):
    code, out, _ = run(capsys, "search", "--order", "8", "--red", "matching:3", "--blue", "clique:4", "--threads", "2")
    assert code == 0 and json.loads(out)["status"] == "Exhausted"
    with pytest.raises(SystemExit):
        main(["search", "--order", "8", "--red", "matching:3", "--blue", "clique:4", "--threads", "0"])


def test_search_checkpoint_cycle(tmp_path, capsys):
    ck = tmp_path / "ck.txt"
    argv = ["search", "--order", "9", "--red", "fan:2", "--blue", "clique:3", "--checkpoint", ck]
    code, out, _ = run(capsys, *argv, "--budget-nodes", "300")
    assert code == 3 and json.loads(out)["status"] == "Aborted" and ck.exists()
    code, out, err = run(capsys, *argv)
    assert code == 0 and json.loads(out)["status"] == "Exhausted" and "resuming" in err
    code, _, err = run(capsys, "search", "--order", "9", "--red", "fan:3", "--blue", "clique:3", "--checkpoint", ck)
    assert code == 2 and "header" in err


def test_budget_env(monkeypatch, capsys):
    monkeypatch.setenv("RAMSEY_BUDGET_SECS", "0")
    code, out, _ = run(capsys, "search", "--order", "9", "--red", "fan:2", "--blue", "clique:3")
    assert code == 3 and json.loads(out)["status"] == "Aborted"


def test_extend(g1_file, capsys):
    code, out, _ = run(capsys, "extend", g1_file, "--red", "fan:4", "--blue", "clique:4", "--max")
    report = json.loads(out)
    assert code == 0 and report["max_k"] == 17 and report["optimal"] is True
    assert parse(report["witness"]).k == 17
    code, out, _ = run(capsys, "extend", g1_file, "--red", "fan:4", "--blue", "clique:4", "--k", "18")
    assert code == 0 and json.loads(out)["status"] == "Exhausted"
    assert run(capsys, "extend", g1_file, "--red", "fan:4", "--blue", "clique:4", "--k", "40")[0] == 2
    assert run(capsys, "extend", g1_file, "--red", "fan:3", "--blue", "clique:4", "--k", "1")[0] == 2


def test_verify_ramsey(capsys):
    code, out, _ = run(capsys, "verify-ramsey", "--red", "matching:2", "--blue", "clique:4", "--claimed", "6")
    assert code == 0 and json.loads(out)["verdict"] == "VERIFIED"
    code, out, _ = run(capsys, "verify-ramsey", "--red", "matching:2", "--blue", "clique:4", "--claimed", "5")
    assert code == 1 and json.loads(out)["verdict"] == "REFUTED"
    code, out, _ = run(
        capsys, "verify-ramsey", "--red", "matching:3", "--blue", "clique:4", "--claimed", "8", "--budget-nodes", "5"
    )
    assert code == 3 and json.loads(out)["verdict"] == "INCONCLUSIVE"


def test_verify_lemmas(g1_file, tmp_path, capsys):
    code, out, err = run(capsys, "verify-lemmas", g1_file, "--n", "4")
    reports = json.loads(out)
    assert code == 0 and all(r["holds"] for r in reports)
    assert "0 failed" in err
    assert run(capsys, "verify-lemmas", g1_file, "--n", "3")[0] == 2


def test_uniqueness_scan_budget(capsys):
    code, out, _ = run(capsys, "uniqueness-scan", "--n", "2", "--budget-nodes", "100")
    assert code == 3 and json.loads(out)["status"] == "Aborted"


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "fanramsey", "construct", "lower-bound", "--n", "5"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and proc.stdout.startswith("cg 30 star 21")
