import json
import subprocess
import sys

import pytest

from kfib_narayana.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_seq(capsys):
    assert run(capsys, "seq", "kfib", "--k", "3", "--n", "6") == (0, "13\n")
    code, out = run(capsys, "seq", "narayana", "--m", "0", "--count", "10")
    assert code == 0 and out.split() == ["0", "1", "1", "1", "2", "3", "4", "6", "9", "13"]
    code, out = run(capsys, "seq", "kfib", "--k", "4", "--n", "-2", "--count", "6")
    assert out.split() == ["0", "0", "0", "1", "1", "2"]


def test_seq_bad_input(capsys):
    assert run(capsys, "seq", "kfib", "--k", "1", "--n", "3")[0] == 2
    assert run(capsys, "seq", "narayana", "--m", "-1")[0] == 2
    assert run(capsys, "seq", "kfib", "--k", "2", "--n", "-1")[0] == 2


def test_root(capsys):
    code, out = run(capsys, "root", "alpha", "--k", "2", "--prec", "128")
    assert code == 0 and out.startswith("1.6180339887498948482045868343656") and "±" in out
    code, out = run(capsys, "root", "lambda", "--prec", "96")
    assert out.startswith("1.46557123187676802665")
    assert run(capsys, "root", "alpha", "--k", "1")[0] == 2


def test_height(capsys):
    code, out = run(capsys, "height", "--minpoly", "1,-1,0,-1")
    assert code == 0 and out.startswith("0.12741502861334521")
    code, out = run(capsys, "height", "--minpoly", "31,-31,10,-1")
    assert out.startswith("1.14466240149504874864")  # log 31 / 3
    assert run(capsys, "height", "--minpoly", "1,x")[0] == 2


def test_bounds(capsys):
    code, out = run(capsys, "bounds", "small-k", "--k", "2")
    doc = json.loads(out)
    assert code == 0 and doc["k"] == 2 and doc["n_bound"] > 1.48e16
    code, out = run(capsys, "bounds", "large-k")
    assert json.loads(out)["k_bound"] == 3.72e16


def test_reduce(capsys):
    code, out = run(capsys, "reduce", "--tau", "lambda-log2", "--mu-kind", "large-k", "--M", "1.83e29")
    doc = json.loads(out)
    assert code == 0 and doc["q"] == "10555900978374790722282223722863"
    code, out = run(capsys, "reduce", "--tau", "alpha-lambda:5", "--mu-kind", "small-k", "--M", "1e20",
                    "--B", "lambda")
    assert json.loads(out)["u_bound"] < 200
    assert run(capsys, "reduce", "--tau", "pi", "--mu-kind", "large-k", "--M", "10")[0] == 2
    assert run(capsys, "reduce", "--tau", "lambda-log2", "--mu-kind", "small-k", "--M", "10")[0] == 2
    assert run(capsys, "reduce", "--tau", "alpha-lambda:x", "--mu-kind", "small-k", "--M", "10")[0] == 2


def test_search(capsys):
    code, out = run(capsys, "search", "intersect", "--k-lo", "2", "--k-hi", "3", "--n-max", "30", "--m-max", "40")
    keys = [(s["k"], s["n"], s["m"]) for s in json.loads(out)]
    assert code == 0 and keys == [(2, 4, 5), (2, 7, 9), (3, 4, 6), (3, 6, 9)]
    code, out = run(capsys, "search", "intersect", "--k-lo", "2", "--k-hi", "2", "--n-max", "5",
                    "--m-max", "5", "--with-trivial")
    assert any(s["trivial"] for s in json.loads(out))
    code, out = run(capsys, "search", "pow2", "--m-max", "10000")
    assert json.loads(out) == [{"m": 4, "l": 1}, {"m": 6, "l": 2}]


def test_pipeline_commands(capsys, tmp_path, certificate_file):
    assert run(capsys, "pipeline", "verify", str(certificate_file)) == (0, "pass\n")
    doc = json.loads(certificate_file.read_text())
    doc["stages"]["large_k"]["final_k_cap"] = 1
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    assert run(capsys, "pipeline", "verify", str(bad)) == (1, "fail\n")
    code, out = run(capsys, "pipeline", "large-k")
    assert code == 0 and json.loads(out)["final_k_cap"] < 220


@pytest.mark.slow
def test_pipeline_run_to_file(capsys, tmp_path, certificate_file):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"start_prec": 256}))
    out = tmp_path / "c.json"
    assert run(capsys, "pipeline", "run", "--config", str(cfg), "--out", str(out))[0] == 0
    assert out.read_bytes() == certificate_file.read_bytes()
    assert run(capsys, "pipeline", "run", "--config", str(tmp_path / "nope.json"))[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "kfib_narayana", "seq", "narayana", "--m", "9"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "13\n"
    proc = subprocess.run([sys.executable, "-m", "kfib_narayana", "--version"], capture_output=True, text=True)
    assert proc.stdout.strip() == "0.1.0"
