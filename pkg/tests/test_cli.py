import json
import subprocess
import sys

import pytest
from click.testing import CliRunner

from sinvariant.cli import InputError, main, run_batch, split_spec

KEYS = {"s", "dH", "writhe", "seifertCircles", "crossings", "field"}


def run(*args):
    res = CliRunner().invoke(main, list(args))
    return res.exit_code, json.loads(res.stdout.splitlines()[0])


def test_pretzel():
    code, out = run("--pretzel", "2,3,5", "--field", "Q")
    assert code == 0 and out["s"] == 6
    assert KEYS <= set(out)
    assert out["s"] == 2 * out["dH"] + out["writhe"] - out["seifertCircles"] + 1


def test_braid():
    code, out = run("--braid", "1 1 1")
    assert code == 0 and out["s"] == 2 and out["crossings"] == 3


def test_pd_with_oracle_check():
    code, out = run("--pd", "X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]", "--oracle-check")
    assert code == 0
    assert out["oracle"] == {"dH": out["dH"], "s": 2}


def test_field_and_complex_dump():
    code, out = run("--braid", "1 -2 1 -2", "--field", "F2", "--emit-complex")
    assert code == 0 and out["field"] == "F2" and out["s"] == 0
    assert out["complexDump"]["objects"]


def test_link_needs_flag():
    code, out = run("--pretzel", "2,2,3")
    assert code == 2 and "not a knot" in out["error"]
    code, out = run("--pretzel", "2,2,3", "--allow-links")
    assert code == 0
    code, _ = run("--braid", "1 -1")
    assert code == 2


@pytest.mark.parametrize(
    "args",
    [
        ("--pd", "X[1,4,2,3] X[3,6,4,7]"),
        ("--pretzel", "1,2"),
        ("--pretzel", "a,b,c"),
        ("--braid", "1 0"),
        ("--braid", "1", "--field", "Fp:4"),
        ("--braid", "1", "--pd", "X[1,1,2,2]"),
        (),
    ],
)
def test_parse_errors(args):
    res = CliRunner().invoke(main, list(args))
    assert res.exit_code == 1


def test_oracle_limit():
    code, out = run("--braid", "1 1 1 1 1 1 1 1 1", "--oracle-check")
    assert code == 2 and "oracle" in out["error"]


def test_deterministic_output():
    _, a = run("--pretzel", "3,-5,-7")
    _, b = run("--pretzel", "3,-5,-7")
    a["reductionStats"].pop("wallTime")
    b["reductionStats"].pop("wallTime")
    assert a == b and a["s"] == 2


def test_batch(tmp_path):
    f = tmp_path / "inputs.txt"
    f.write_text("# comment\nbraid:1 1 1\npretzel:2,3,5\npd:X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]\n")
    code, out = run("--batch", str(f), "--jobs", "2")
    assert code == 0
    assert [r["s"] for r in out["results"]] == [2, 6, 2]
    assert out["summary"] == {"count": 3, "ok": 3, "failed": 0}


def test_batch_reports_worst_exit_code():
    code, out = run_batch(["braid:1 1 1", "pretzel:2,2,3", "bogus"], dict(field_spec="Q"))
    assert code == 2
    assert out["summary"] == {"count": 3, "ok": 1, "failed": 2}


def test_split_spec():
    assert split_spec("pretzel: 1,1,1") == ("pretzel", "1,1,1")
    with pytest.raises(InputError):
        split_spec("knot:3_1")


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "sinvariant", "--braid", "-1 -1 -1"],
        capture_output=True,
        text=True,
    )
    assert out.returncode == 0
    assert json.loads(out.stdout)["s"] == -2
