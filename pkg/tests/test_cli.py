from __future__ import annotations

import json
import subprocess
import sys

import pytest

from lapsum.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_family_emit_graph6(capsys):
    code, out, _ = run(capsys, "family", "csplit", "5", "2", "--emit-graph6")
    import networkx as nx

    expected = nx.to_graph6_bytes(nx.complete_multipartite_graph(1, 1, 3), header=False).decode().strip()
    assert code == 0 and out.strip() == expected


def test_family_run_prints_records_and_summary(capsys):
    code, out, _ = run(capsys, "family", "csplit", "9", "4", "--json")
    assert code == 0
    lines = out.strip().split("\n")
    records = [json.loads(x) for x in lines[:8]]
    assert [r["class"] for r in records].count("Equality") == 1 and records[3]["k"] == 4
    summary = json.loads("\n".join(lines[9:]))
    assert summary["violations"] == 0 and summary["equalities"] == 1


def test_spectrum_command(capsys):
    code, out, _ = run(capsys, "spectrum", "--graph6", "D?{")
    assert code == 0
    assert "mu         5 1 1 1 0" in out
    assert "d*         5 1 1 1 0" in out
    assert "threshold  yes (00001)" in out


def test_bounds_command(capsys):
    code, out, _ = run(capsys, "bounds", "--graph6", "D?{", "--k", "1")
    assert code == 0 and "failures                     none" in out
    code, _, err = run(capsys, "bounds", "--graph6", "D?{", "--k", "5")
    assert code == 2 and "--k" in err


def test_verify_writes_records(capsys, tmp_path):
    out = tmp_path / "r.jsonl"
    code, text, _ = run(capsys, "verify", "--n", "4", "--checks", "brouwer,ng", "--k", "1,2", "--out", str(out))
    assert code == 0 and "violations  0" in text
    assert len(out.read_text().splitlines()) == 64 * 2 * 2


def test_verify_threshold_mode_and_input(capsys, tmp_path):
    code, text, _ = run(capsys, "verify", "--n", "6", "--mode", "threshold", "--json")
    assert code == 0 and json.loads(text)["graphs"] == 32
    g6 = tmp_path / "in.g6"
    g6.write_text("D?{\nC~\n")
    code, text, _ = run(capsys, "verify", "--input", str(g6), "--checks", "bounds,identities", "--json")
    assert code == 0 and json.loads(text)["graphs"] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--n", "9"],
        ["verify"],
        ["verify", "--n", "4", "--input", "x.g6"],
        ["verify", "--n", "4", "--checks", "brouwer,bogus"],
        ["verify", "--n", "4", "--k", "a,b"],
        ["verify", "--input", "/nonexistent/file.g6"],
        ["spectrum", "--graph6", ">>graph6<<C~"],
        ["family", "csplit", "5"],
        ["family", "csplit", "5", "7"],
        ["nonsense"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_malformed_graph6_file_exits_2(capsys, tmp_path):
    g6 = tmp_path / "bad.g6"
    g6.write_text("D?{\nC~\nC~~~\n")
    code, _, err = run(capsys, "verify", "--input", str(g6))
    assert code == 2 and ":3:" in err


def test_violations_exit_1(capsys, monkeypatch):
    import lapsum.pipeline as pipeline

    real = pipeline._brouwer_block

    def lying_block(*args):
        b = real(*args)
        b.cls[:] = pipeline.VIOLATION
        return b

    monkeypatch.setattr(pipeline, "_brouwer_block", lying_block)
    code, text, _ = run(capsys, "verify", "--n", "3")
    assert code == 1 and "violations  16" in text  # 8 graphs x k in {1, 2}


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "lapsum", "family", "gst", "1", "2", "--emit-graph6"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.strip().startswith("D")
