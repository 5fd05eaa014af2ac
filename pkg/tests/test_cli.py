"""End-to-end CLI behavior: dispatch, formats, determinism, exit codes."""

import io
import json

import pytest

from chainpart import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_count_dispatch(capsys):
    code, out, _ = run(capsys, "count", "--p", "2", "--q", "3", "--u", "27")
    assert code == 0
    assert out == "7\n"


def test_count_all_methods(capsys):
    code, out, _ = run(capsys, "count", "--u", "19", "--method", "all")
    assert code == 0
    doc = json.loads(out)
    assert doc == {"u": 19, "cases": "4", "halving": "4", "direct": "4", "agree": True}


def test_count_alias_methods(capsys):
    for method in ("general", "p2", "theorem2"):
        code, out, _ = run(capsys, "count", "--u", "27", "--method", method)
        assert (code, out) == (0, "7\n")


def test_enumerate_words(capsys):
    code, out, _ = run(capsys, "enumerate", "--p", "2", "--q", "3", "--u", "19",
                       "--format", "words")
    assert code == 0
    assert set(out.split()) == {"3203", "3013", "1133", "11003"}


def test_enumerate_json_sum_strings(capsys):
    code, out, _ = run(capsys, "enumerate", "--u", "5", "--format", "json")
    assert code == 0
    docs = [json.loads(line) for line in out.splitlines()]
    assert [d["sum"] for d in docs] == ["5"]
    assert docs[0]["parts"] == [[2, 0], [0, 0]]


def test_enumerate_csv(capsys):
    code, out, _ = run(capsys, "enumerate", "--u", "19", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "u,values"
    assert lines[1] == "19,18 1"
    assert len(lines) == 5


def test_enumerate_deterministic(capsys):
    _, out1, _ = run(capsys, "enumerate", "--u", "57", "--format", "words")
    _, out2, _ = run(capsys, "enumerate", "--u", "57", "--format", "words")
    assert out1 == out2


def test_encode_decode_roundtrip(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO('[[1,2],[0,0]]\n18 1\n'))
    code, out, _ = run(capsys, "encode", "--codec", "lattice")
    assert code == 0
    assert out.splitlines() == ["3203", "3203"]
    monkeypatch.setattr("sys.stdin", io.StringIO("3203\n"))
    code, out, _ = run(capsys, "decode", "--codec", "lattice", "--format", "values")
    assert code == 0
    assert out == "18 1\n"


def test_tree_codec_cli(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("1332\n"))
    code, out, _ = run(capsys, "decode", "--codec", "tree", "--format", "values")
    assert code == 0
    assert out == "18 1\n"
    monkeypatch.setattr("sys.stdin", io.StringIO("18 1\n"))
    code, out, _ = run(capsys, "encode", "--codec", "tree")
    assert code == 0
    assert out == "1332\n"


def test_decode_malformed_word_exit_code(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("123\n"))
    code, _, err = run(capsys, "decode")
    assert code == 1
    assert "lattice word" in err


def test_scan_smallw_csv(capsys):
    code, out, _ = run(capsys, "scan", "smallw", "--limit", "12", "--emit", "csv")
    assert code == 0
    assert out.splitlines() == ["u,w", "0,1", "1,1", "2,1", "5,1", "11,1",
                                "3,2", "4,2", "6,2", "7,2", "8,2"]


def test_sigma_witness(capsys):
    code, out, _ = run(capsys, "sigma", "--u", "19", "--witness")
    assert code == 0
    doc = json.loads(out)
    assert doc["sigma"] == 2
    assert doc["values"] == ["18", "1"]
    assert doc["cost"] == {"p_ops": 1, "q_ops": 2, "adds": 1}


def test_chainpow(capsys):
    code, out, _ = run(capsys, "chainpow", "--g", "5", "--u", "19", "--mod", "101")
    assert code == 0
    assert out.strip() == str(pow(5, 19, 101))


def test_scan_w_csv(capsys):
    code, out, _ = run(capsys, "scan", "w", "--limit", "5", "--emit", "csv")
    assert code == 0
    assert out.splitlines() == ["u,w", "0,1", "1,1", "2,1", "3,2", "4,2", "5,1"]


def test_scan_maxw(capsys):
    code, out, _ = run(capsys, "scan", "maxw", "--limit", "30", "--emit", "csv")
    assert code == 0
    assert out.splitlines() == ["u,maxw,class", "3,2,q-odd", "9,4,q-odd",
                                "21,5,q-odd", "27,7,q-odd"]


def test_scan_monotonicity_alias(capsys):
    code, out, _ = run(capsys, "scan", "theorem4", "--limit", "2000")
    assert code == 0
    assert json.loads(out) == {"q": 3, "limit": 2000, "violations": 0}


def test_scan_bound(capsys):
    code, out, _ = run(capsys, "scan", "bound", "--limit", "2000")
    assert code == 0
    assert json.loads(out)["violations"] == 0


def test_graph_summary_and_dot(capsys):
    code, out, _ = run(capsys, "graph", "--u", "27")
    assert code == 0
    doc = json.loads(out)
    assert doc["vertices"] == 7 and doc["connected"] is True
    code, out, _ = run(capsys, "graph", "--u", "27", "--dot")
    assert code == 0
    assert out.startswith('graph "omega27"')
    assert '"2223";' in out


def test_walk_deterministic(capsys):
    _, out1, _ = run(capsys, "walk", "--u", "27", "--steps", "25", "--seed", "9")
    _, out2, _ = run(capsys, "walk", "--u", "27", "--steps", "25", "--seed", "9")
    assert out1 == out2


def test_sample_deterministic(capsys):
    _, out1, _ = run(capsys, "sample", "--u", "171", "--n", "5", "--seed", "3")
    _, out2, _ = run(capsys, "sample", "--u", "171", "--n", "5", "--seed", "3")
    assert out1 == out2
    assert len(out1.splitlines()) == 5


def test_alpha_output(capsys):
    code, out, _ = run(capsys, "alpha", "--p", "3", "--q", "4")
    assert code == 0
    doc = json.loads(out)
    assert abs(float(doc["alpha"]) - 1.0) < 1e-10
    assert abs(float(doc["c_upper"]) - 1.97744865) < 1e-6


def test_sumfn_csv(capsys):
    code, out, _ = run(capsys, "sumfn", "--xmax", "64", "--emit", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "x,s,ratio,c_upper"
    assert len(lines) == 7  # x = 2, 4, ..., 64


def test_domain_error_exit_code(capsys):
    code, _, err = run(capsys, "count", "--p", "2", "--q", "4", "--u", "5")
    assert code == 1
    assert "coprime" in err


def test_usage_error_exit_code(capsys):
    code, _, err = run(capsys, "count", "--u", "not-a-number")
    assert code == 1
    assert "usage" in err


def test_ceiling_env(capsys, monkeypatch):
    monkeypatch.setenv("CHAINPART_CEILING", "100")
    code, _, err = run(capsys, "enumerate", "--u", "200")
    assert code == 1
    assert "ceiling" in err


def test_selftest_quick(capsys):
    code, out, _ = run(capsys, "selftest", "--quick")
    assert code == 0
    lines = out.splitlines()
    assert sum(1 for line in lines if line.startswith("PASS")) == 14
    assert lines[-1] == "OK 14/14 criteria"


def test_selftest_detects_injected_corruption(capsys):
    code, out, _ = run(capsys, "selftest", "--quick", "--inject-corruption")
    assert code == 2
    assert any(line.startswith("FAIL 03") for line in out.splitlines())


def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "chainpart.cfg"
    cfg.write_text("q=5\n# comment\n")
    code, out, _ = run(capsys, "count", "--config", str(cfg), "--u", "10")
    assert code == 0
    assert out == "2\n"  # (2,5): {8,2} and {10}... counted with q = 5
    code, out, _ = run(capsys, "count", "--config", str(cfg), "--u", "10", "--q", "3")
    assert code == 0
    assert out == "3\n"  # explicit flag overrides the config value
