import csv
import io
import json
import math
import os
import subprocess
import sys
from pathlib import Path

import pytest

from smooth_tower.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_eval_identity():
    code, text = run("eval", "--expr", "x", "--at", "x=3", "--orders", "0;1;2")
    assert code == 0
    assert [float(line.split("\t")[1]) for line in text.splitlines()] == [3.0, 1.0, 0.0]


def test_eval_sin_exp_mixed():
    code, text = run("eval", "--expr", "sin(x)*exp(y^2)", "--at", "x=0.7,y=0.4", "--orders", "1,1")
    assert code == 0
    got = float(text.split("\t")[1])
    assert math.isclose(got, math.cos(0.7) * 0.8 * math.exp(0.16), rel_tol=1e-12)


def test_eval_domain_error(capsys):
    code, text = run("eval", "--expr", "log(x)", "--at", "x=-1", "--orders", "0")
    assert code == 3 and text == ""
    err = capsys.readouterr().err
    assert "log" in err and "x=-1" in err


@pytest.mark.parametrize("argv,code", [
    (["eval", "--expr", "x+", "--at", "x=1", "--orders", "0"], 2),
    (["eval", "--expr", "w", "--at", "x=1", "--orders", "0"], 2),
    (["eval", "--expr", "x", "--at", "x=1", "--orders", "1,0"], 1),
    (["eval", "--expr", "x", "--at", "x=1", "--orders", "-1"], 1),
    (["eval", "--expr", "x", "--at", "x=1", "--orders", "a"], 1),
    (["eval", "--expr", "x", "--at", "x", "--orders", "0"], 1),
    (["eval", "--expr", "x", "--at", "x=1,x=2", "--orders", "0"], 1),
    (["eval", "--expr", "x", "--at", "x=one", "--orders", "0"], 1),
    (["eval", "--expr", "x"], 1),
    (["table", "--expr", "x", "--at", "x=1", "--degree", "-1"], 1),
    (["table", "--expr", "1/x", "--at", "x=0", "--degree", "1"], 3),
    (["bench", "--functions", "nope"], 1),
    (["bench", "--reps", "2"], 1),
    (["frobnicate"], 1),
    ([], 1),
])
def test_exit_codes(argv, code, capsys):
    assert run(*argv)[0] == code
    assert capsys.readouterr().err


def test_too_deep_order_is_reported(capsys):
    code, text = run("eval", "--expr", "exp(x)", "--at", "x=0.5", "--orders", "5000")
    assert code == 3 and text == ""
    assert "recursion" in capsys.readouterr().err


def test_eval_dedupes_and_sorts():
    _, text = run("eval", "--expr", "x*y", "--at", "x=1,y=2", "--orders", "1,1;0,0;1,1")
    assert text == "0,0\t2.0\n1,1\t1.0\n"


def test_negative_zero_is_normalised():
    _, text = run("eval", "--expr=-x", "--at", "x=0", "--orders", "0")
    assert text == "0\t0.0\n"


def test_table_and_eval_agree():
    args = ["--expr", "sin(x)*exp(y^2+z)", "--at", "x=0.3,y=-0.2,z=0.9"]
    _, table = run("table", *args, "--degree", "3")
    rows = dict(line.split("\t") for line in table.splitlines())
    assert len(rows) == 20
    orders = ";".join(rows)
    _, ev = run("eval", *args, "--orders", orders)
    assert ev == table


def test_formats_parse():
    args = ["table", "--expr", "exp(x*y)", "--at", "x=0.5,y=2", "--degree", "2"]
    _, plain = run(*args)
    _, as_csv = run(*args, "--format", "csv")
    _, as_json = run(*args, "--format", "json")
    rows = list(csv.DictReader(io.StringIO(as_csv)))
    doc = json.loads(as_json)
    assert doc["variables"] == ["x", "y"] and doc["point"] == [0.5, 2.0]
    assert len(rows) == len(doc["coefficients"]) == len(plain.splitlines()) == 6
    for row, coeff in zip(rows, doc["coefficients"]):
        assert [int(row["x"]), int(row["y"])] == coeff["index"]
        assert float(row["value"]) == coeff["value"]


def _golden_cases():
    sys.path.insert(0, str(GOLDEN))
    try:
        from make_golden import CASES
    finally:
        sys.path.remove(str(GOLDEN))
    return CASES


@pytest.mark.parametrize("name,cmdline", sorted(_golden_cases().items()))
def test_golden(name, cmdline):
    import shlex
    code, text = run(*shlex.split(cmdline))
    assert code == 0
    assert text == (GOLDEN / f"{name}.txt").read_text()


def _strip_seconds(path):
    rows = list(csv.reader(path.open()))
    col = rows[0].index("seconds_median")
    return [r[:col] + r[col + 1:] for r in rows]


def test_bench_identity_layout_and_determinism(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run("bench", "--out-dir", str(a), "--functions", "identity")[0] == 0
    code, summary = run("bench", "--out-dir", str(b), "--functions", "identity")
    assert code == 0
    assert summary.splitlines()[0] == "function\trepresentation\tgrowth_exponent"
    for rep in ("succinct", "naive"):
        fa = a / f"multdiffupto-{rep}" / "identity.csv"
        fb = b / f"multdiffupto-{rep}" / "identity.csv"
        assert fa.exists() and fb.exists()
        assert _strip_seconds(fa) == _strip_seconds(fb)
        assert len(_strip_seconds(fa)) == 22
    assert "wrote" in capsys.readouterr().err


def test_bench_unwritable_dir(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    assert run("bench", "--out-dir", str(blocker), "--functions", "identity")[0] == 4


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "smooth_tower", "eval", "--expr", "x^3", "--at", "x=2",
         "--orders", "3"],
        capture_output=True, text=True, env={**os.environ},
    )
    assert proc.returncode == 0
    assert proc.stdout == "3\t6.0\n"
    bad = subprocess.run([sys.executable, "-m", "smooth_tower", "eval", "--expr", "sqrt(x)",
                          "--at", "x=-4", "--orders", "0"], capture_output=True, text=True)
    assert bad.returncode == 3 and bad.stdout == ""
