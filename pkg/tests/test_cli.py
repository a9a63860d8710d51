import csv
import io
import json
import os
import subprocess
import sys

import pytest

from ellipk.cli import VERIFY_COLUMNS, main, parse_complex, sample_domain


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("text,value", [
    ("0+0i", 0j), ("0.5+0i", 0.5), ("1-2i", 1 - 2j), ("-0.25+1e-3i", -0.25 + 0.001j),
    ("0.3", 0.3), (".5-.5i", 0.5 - 0.5j), ("+1.5E-1+2i", 0.15 + 2j),
])
def test_parse_complex(text, value):
    assert parse_complex(text) == value


@pytest.mark.parametrize("text", ["1 +2i", "i", "1+i", "2j", "1+2", "abc", "", "1+2i "])
def test_parse_complex_rejects(text):
    import argparse

    with pytest.raises(argparse.ArgumentTypeError):
        parse_complex(text)


def test_eval_origin(kernel, capsys):
    code, out, _ = run(capsys, "eval", "--z", "0+0i", "--m", "0.3+0.1i")
    assert code == 0
    obj = json.loads(out)
    assert obj["sn"]["value"] == {"re": 0.0, "im": 0.0}
    assert obj["cn"]["value"] == {"re": 1.0, "im": 0.0}
    assert obj["dn"]["value"] == {"re": 1.0, "im": 0.0}


def test_eval_hyperbolic(kernel, capsys):
    code, out, _ = run(capsys, "eval", "--z", "0.5+0i", "--m", "1+0i")
    obj = json.loads(out)
    assert code == 0
    assert obj["sn"]["value"]["re"] == pytest.approx(0.462117157260, abs=1e-12)
    assert obj["cn"]["value"]["re"] == pytest.approx(0.886818883970, abs=1e-12)
    assert obj["dn"]["value"]["re"] == pytest.approx(0.886818883970, abs=1e-12)
    assert obj["sn"]["terms_used"] >= 1 and obj["sn"]["error_radius"] <= 1e-13


def test_eval_domain_error(kernel, capsys):
    code, _, err = run(capsys, "eval", "--z", "2+0i", "--m", "0.5+0i")
    assert code == 2 and "pi/2" in err


def test_eval_table_exhausted(kernel, capsys):
    code, _, err = run(capsys, "eval", "--z", "1.5+0i", "--m", "0.5", "--tol", "1e-17")
    assert code == 3 and "ELLIPK_TABLE_N" in err


def test_parse_error_exit_code(capsys):
    with pytest.raises(SystemExit) as info:
        main(["eval", "--z", "1 +2i", "--m", "0"])
    assert info.value.code == 2


def test_verify_single_sample(kernel, capsys):
    code, out, _ = run(capsys, "verify", "--samples", "1", "--seed", "7")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 2
    rec = json.loads(lines[0])
    assert rec["index"] == 0 and rec["seed"] == 7 and rec["passed"]
    summary = json.loads(lines[1])["summary"]
    assert summary["samples"] == summary["passed"] == 1
    assert summary["worst_margin_sharp"]["z"] == rec["z"]


def test_verify_rejects_radius(capsys):
    code, _, err = run(capsys, "verify", "--R", "1.6")
    assert code == 2 and "R" in err


def test_verify_deterministic(kernel, capsys):
    _, a, _ = run(capsys, "verify", "--samples", "300", "--seed", "3")
    _, b, _ = run(capsys, "verify", "--samples", "300", "--seed", "3", "--batch", "64")
    _, c, _ = run(capsys, "verify", "--samples", "300", "--seed", "4")
    assert a == b
    assert a != c


def test_verify_csv(kernel, capsys):
    code, out, err = run(capsys, "verify", "--samples", "5", "--format", "csv")
    assert code == 0
    assert "\r\n" in out
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == VERIFY_COLUMNS
    assert len(rows) == 6 and all(len(r) == len(VERIFY_COLUMNS) for r in rows)
    assert json.loads(err)["summary"]["passed"] == 5


def test_verify_to_file(kernel, capsys, tmp_path):
    path = tmp_path / "out.jsonl"
    code, out, _ = run(capsys, "verify", "--samples", "3", "--out", str(path))
    assert code == 0 and out == ""
    assert len(path.read_text().splitlines()) == 4


def test_verify_failure_exit_code(kernel, capsys, monkeypatch):
    import ellipk.cli as cli
    from ellipk.bounds import ChainRecord

    real = cli.check_theorem_many

    def broken(*args, **kwargs):
        reps = real(*args, **kwargs)
        import dataclasses

        return [dataclasses.replace(r, sn=ChainRecord(1.0, 0.0, 1.0, -1.0, 1.0, 0.0))
                for r in reps]

    monkeypatch.setattr(cli, "check_theorem_many", broken)
    code, out, _ = run(capsys, "verify", "--samples", "2")
    assert code == 4
    assert json.loads(out.splitlines()[-1])["summary"]["failed"] == 2


def test_sampler_in_domain():
    z, m = sample_domain(20000, 42, 1.5)
    assert (abs(m) <= 1).all() and (abs(z) <= 1.5).all()
    z2, m2 = sample_domain(20000, 42, 1.5)
    assert (z == z2).all() and (m == m2).all()


def test_monotone_minimal(kernel, capsys):
    code, out, _ = run(capsys, "monotone", "--u-count", "1", "--m1-count", "2")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 2
    assert json.loads(lines[0])["all_negative"] is True
    assert json.loads(lines[1])["summary"]["all_negative"] is True


def test_monotone_zero_row_excluded(kernel, capsys):
    code, out, _ = run(capsys, "monotone", "--u-count", "2", "--m1-count", "3",
                       "--include-zero")
    rows = [json.loads(x) for x in out.splitlines()]
    assert code == 0
    assert rows[0]["degenerate"] and rows[0]["df1"] == [0.0, 0.0, 0.0]
    assert rows[-1]["summary"]["degenerate_rows"] == 1


def test_monotone_csv(kernel, capsys):
    code, out, _ = run(capsys, "monotone", "--u-count", "2", "--m1-count", "3",
                       "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0][0] == "u" and len(rows) == 7


def test_coeffs_export(capsys, tmp_path):
    path = tmp_path / "t.json"
    assert main(["coeffs", "--N", "2", "--out", str(path)]) == 0
    obj = json.loads(path.read_text())
    assert {"kind": "sn", "n": 2, "coeffs": ["1", "14", "1"]} in obj["polynomials"]
    first = path.read_bytes()
    assert main(["coeffs", "--N", "2", "--out", str(path)]) == 0
    assert path.read_bytes() == first


def test_coeffs_zero(capsys):
    code, out, _ = run(capsys, "coeffs", "--N", "0")
    obj = json.loads(out)
    assert code == 0
    assert [p["coeffs"] for p in obj["polynomials"]] == [["1"], ["1"], ["1"]]


def test_coeffs_unwritable(capsys, tmp_path):
    code, _, err = run(capsys, "coeffs", "--N", "1", "--out", str(tmp_path / "no" / "x.json"))
    assert code == 2 and "cannot write" in err


def test_module_entry_point_and_env_table_size(tmp_path):
    env = dict(os.environ, ELLIPK_TABLE_N="40", ELLIPK_CACHE_DIR=str(tmp_path))
    near = subprocess.run([sys.executable, "-m", "ellipk", "eval", "--z", "0.3+0.1i",
                           "--m", "0.5"], env=env, capture_output=True, text=True)
    assert near.returncode == 0, near.stderr
    far = subprocess.run([sys.executable, "-m", "ellipk", "eval", "--z", "1.5+0i",
                          "--m", "0.5"], env=env, capture_output=True, text=True)
    assert far.returncode == 3
    assert "size 40" in far.stderr
