from __future__ import annotations

import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from slicefourier.cli import main
from slicefourier.files import dumps, read


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def write_json(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


def test_verify_exit_codes():
    code, out = run("verify", "--n", "4", "--k", "2")
    assert code == 0
    for name in ["diffuddu", "nulltoeig", "normofup", "ortho", "characnull", "characortho",
                 "normofchi", "norm", "restrict", "structure"]:
        assert f"PASS\t{name}\t" in out
    assert out.rstrip().endswith("16/16 checks passed")
    assert run("verify", "--n", "1", "--k", "0")[0] == 0
    assert run("verify", "--n", "40", "--k", "20")[0] == 2
    assert run("verify", "--n", "3", "--k", "5")[0] == 2
    assert run("verify", "--n", "3")[0] == 2


def test_usage_errors_exit_2():
    assert run()[0] == 2
    assert run("frobnicate")[0] == 2
    assert run("gl", "--n", "4", "--k", "2", "--synth", "random-pm1")[0] == 2
    assert run("gl", "--n", "4", "--k", "2", "--synth", "random-pm1", "--tau", "2")[0] == 2
    assert run("gl", "--n", "4", "--k", "2", "--synth", "nope", "--tau", "0.5")[0] == 2
    assert run("transform", "--input", "x.json")[0] == 2


def test_transform_constant_and_round_trip(tmp_path):
    c = 2.5
    src = write_json(tmp_path / "f.json", {"n": 4, "k": 2, "encoding": "dense", "values": [c] * 6})
    spec_path, back_path = str(tmp_path / "s.json"), str(tmp_path / "b.json")
    assert run("transform", "--input", src, "--output", spec_path)[0] == 0
    spec = read(spec_path).spectrum
    assert spec[()] == pytest.approx(math.sqrt(6) * c)
    assert np.allclose(spec.values[1:], 0.0, atol=1e-12)
    assert run("transform", "--input", spec_path, "--output", back_path, "--inverse")[0] == 0
    assert np.allclose(read(back_path).dense.values, c, atol=1e-9)


def test_transform_output_is_bit_stable_after_one_pass(tmp_path):
    f0 = tmp_path / "f0.json"
    assert run("synth", "--n", "6", "--k", "3", "--synth", "random-pm1", "--seed", "4", "--output", str(f0))[0] == 0
    s1, f1, s1b = (str(tmp_path / n) for n in ("s1.json", "f1.json", "s1b.json"))
    assert run("transform", "--input", str(f0), "--output", s1)[0] == 0
    assert run("transform", "--input", s1, "--output", f1, "--inverse")[0] == 0
    assert np.allclose(read(f0).dense.values, read(f1).dense.values, atol=1e-9)
    assert run("transform", "--input", str(f0), "--output", s1b)[0] == 0
    assert (tmp_path / "s1.json").read_bytes() == (tmp_path / "s1b.json").read_bytes()
    for p in (s1, f1):
        text = (tmp_path / p).read_text()
        assert dumps(read(p)) == text


def test_transform_rejects_non_top_set(tmp_path, capsys):
    src = write_json(tmp_path / "s.json", {"n": 4, "k": 2, "encoding": "sparse-spectrum",
                                          "values": [{"set": [1], "coefficient": 1.0}]})
    out = tmp_path / "out.json"
    code, _ = run("transform", "--input", src, "--output", str(out), "--inverse")
    assert code == 2
    assert "not a top set" in capsys.readouterr().err
    assert not out.exists()


def test_malformed_file_reports_position(tmp_path, capsys):
    src = tmp_path / "bad.json"
    src.write_text('{"n": 4,\n "k": 2\n "encoding": "dense"}')
    code, _ = run("transform", "--input", str(src), "--output", str(tmp_path / "o.json"))
    assert code == 2
    assert "line 3, column 2" in capsys.readouterr().err


def test_gl_planted_exact(tmp_path):
    code, out = run("gl", "--n", "8", "--k", "4", "--synth", "sign-of-spectrum:2", "--seed", "1",
                    "--tau", "0.5", "--audit")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "# slice (8,4) tau=0.5 mode=exact samples=0 seed=1"
    assert lines[1].startswith("{2}\t")
    assert float(lines[1].split("\t")[1]) ** 2 >= 0.6 ** 2
    assert "# audit missing=0 light=0" in lines
    assert lines[-1] == "# queries=70"


def test_gl_tau_one_usually_empty():
    code, out = run("gl", "--n", "8", "--k", "4", "--synth", "random-pm1", "--tau", "1", "--audit")
    assert code == 0
    body = [ln for ln in out.splitlines() if not ln.startswith("#")]
    assert body == []
    assert "# audit missing=0 light=0" in out


def test_gl_list_cap_exit_1():
    code, out = run("gl", "--n", "8", "--k", "4", "--synth", "random-pm1", "--tau", "0.1",
                    "--list-cap", "2")
    assert code == 1
    assert "# aborted:" in out


def test_gl_rejects_non_pm1_input(tmp_path):
    src = write_json(tmp_path / "f.json", {"n": 2, "k": 1, "encoding": "dense", "values": [1.0, 0.5]})
    assert run("gl", "--input", src, "--tau", "0.5")[0] == 2


def test_gl_sampled_is_byte_identical():
    argv = ["gl", "--n", "7", "--k", "3", "--synth", "sign-of-spectrum", "--seed", "9",
            "--tau", "0.5", "--mode", "sampled", "--samples", "3000", "--audit"]
    assert run(*argv) == run(*argv)


def test_basis_command(tmp_path):
    out = tmp_path / "b.json"
    assert run("basis", "--n", "4", "--k", "2", "--output", str(out))[0] == 0
    data = json.loads(out.read_text())
    m = np.array([v["values"] for v in data["vectors"]])
    assert np.allclose(m @ m.T, np.eye(6))
    assert [v["eigenvalue"] for v in data["vectors"]] == [4, 0, 0, 0, -2, -2]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "slicefourier", "verify", "--n", "3", "--k", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "checks passed" in proc.stdout
