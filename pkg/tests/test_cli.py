import json

import pytest

from mergenet import canonical_key, from_json
from mergenet.cli import main
from mergenet.codec import MergingSequence, decode


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_e_seq(capsys):
    code, out, _ = run(capsys, "gen", "--family", "e", "--n", "4", "--format", "seq")
    assert code == 0
    assert out.strip() == "4 4 * : (1,2) (1,3) (1,4) (3,4) (2,4) (2,2) (2,3) (3,3) (3,2)"


def test_gen_check_flag(capsys):
    code, _, _ = run(capsys, "gen", "--family", "two-n", "--params", "3", "--check")
    assert code == 0


def test_bounds_output(capsys):
    code, out, _ = run(capsys, "bounds", "--m", "3", "--n", "3")
    assert code == 0
    assert "lower 13 upper 19" in out


def test_bounds_mstar(capsys):
    code, out, _ = run(capsys, "bounds", "--n", "4")
    assert code == 0
    assert "lower 9 upper 10" in out


def test_analyze_picgv(tmp_path, capsys):
    path = tmp_path / "picgv.json"
    code, _, _ = run(capsys, "gen", "--fixture", "picgv", "-o", str(path))
    assert code == 0
    code, out, _ = run(capsys, "analyze", str(path))
    assert code == 0
    assert "reroutable: True; mergings: 4" in out


def test_analyze_json_mode(tmp_path, capsys):
    path = tmp_path / "net.json"
    run(capsys, "gen", "--family", "two-n", "--params", "2", "-o", str(path))
    code, out, _ = run(capsys, "analyze", str(path), "--json")
    doc = json.loads(out)
    assert code == 0
    assert doc["mergings"] == 5 and doc["reroutable"] is False
    # x = |G|_M - n = 5 - 2 adjacent pairs across the two rails
    assert doc["block_decomposition"]["x"] == 3


def test_export_round_trip(tmp_path, capsys):
    net_path = tmp_path / "net.json"
    seq_path = tmp_path / "net.seq"
    run(capsys, "gen", "--family", "f", "--params", "3", "-o", str(net_path))
    code, _, _ = run(capsys, "export", str(net_path), "--format", "seq", "-o", str(seq_path))
    assert code == 0
    code, out, _ = run(capsys, "export", str(seq_path), "--format", "json")
    assert code == 0
    original = from_json(net_path.read_text())
    again = from_json(out)
    assert canonical_key(again) == canonical_key(original)


def test_json_output_byte_stable(tmp_path, capsys):
    _, out1, _ = run(capsys, "gen", "--family", "e", "--n", "3")
    _, out2, _ = run(capsys, "gen", "--family", "e", "--n", "3")
    assert out1 == out2


def test_dot_output(capsys):
    code, out, _ = run(capsys, "gen", "--fixture", "butterfly", "--format", "dot")
    assert code == 0
    assert out.startswith("digraph")
    assert "fillcolor=black" in out  # merging start vertices are solid dots


def test_search_cli(capsys):
    code, out, _ = run(capsys, "search", "--type", "m", "--params", "2", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["value"] == 5 and doc["complete"] is True


def test_count_cli(capsys):
    code, out, _ = run(capsys, "count", "--n", "2")
    doc = json.loads(out)
    assert code == 0 and doc["count"] == 2


def test_usage_error_exit_code(tmp_path, capsys):
    code, _, err = run(capsys, "analyze", str(tmp_path / "missing.json"))
    assert code == 1
    assert "error" in err


def test_gen_from_seq(capsys):
    code, out, _ = run(capsys, "gen", "--from-seq", "2 2 : (1,2) (2,1)", "--format", "seq")
    assert code == 0
    assert out.strip() == "2 2 : (1,2) (2,1)"


def test_verify_quick(capsys):
    code, out, _ = run(capsys, "verify", "--quick")
    assert code == 0
    assert "PASS" in out


def test_bad_family_exits_one(capsys):
    code, _, err = run(capsys, "gen", "--family", "nope", "--params", "2")
    assert code == 1 and "error" in err


def test_env_edge_limit(monkeypatch, capsys):
    import mergenet

    monkeypatch.setenv("MERGE_MAX_EDGES", "10")
    code, _, err = run(capsys, "gen", "--family", "e", "--n", "4")
    mergenet.set_edge_limit(10_000)
    assert code == 1
    assert "exceeds" in err
