import json
import subprocess
import sys

import pytest

from planarskein.cli import main


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_multiply(capsys):
    code, out, _ = run(capsys, "multiply", "--n", "4", "--expr", "t[1]*t[2]")
    assert code == 0
    obj = json.loads(out)
    assert obj["terms"] == [{"multicurve": [[1], [2]], "coeff": {"num": [["0", "1"]], "beta_pow": 0}}]


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--n", "3", "--families", "TYPEI_OV3")
    assert code == 0
    lines = [json.loads(l) for l in out.splitlines()]
    assert len(lines) == 6 and all(l["ok"] for l in lines)


def test_verify_jobs_deterministic(capsys):
    _, a, _ = run(capsys, "verify", "--n", "4", "--families", "COMM22_2,TYPEII_2")
    _, b, _ = run(capsys, "verify", "--n", "4", "--families", "COMM22_2,TYPEII_2", "--jobs", "2")

    def strip(text):
        return [{k: v for k, v in json.loads(l).items() if k != "millis"} for l in text.splitlines()]
    assert strip(a) == strip(b)


def test_verify_unknown_family(capsys):
    code, _, err = run(capsys, "verify", "--n", "3", "--families", "NOPE")
    assert code == 2 and "NOPE" in err


def test_spanning(capsys):
    code, out, _ = run(capsys, "spanning", "--profile", "1,1,1,1,1,1")
    rep = json.loads(out)
    assert code == 0 and rep["triangular"] and rep["unit_diagonal"]


def test_normal_form(capsys):
    code, out, _ = run(capsys, "normal-form", "--n", "4", "--expr", "s24*s13")
    assert code == 0 and "s13*s24" in out


def test_classical(capsys):
    code, out, _ = run(capsys, "classical", "--samples", "5", "--seed", "3")
    assert code == 0 and all(json.loads(l)["ok"] for l in out.splitlines())


def test_svg(capsys, tmp_path):
    path = tmp_path / "d.svg"
    code, out, _ = run(capsys, "svg", "--n", "4", "--expr", "s13*s24", "--out", str(path))
    assert code == 0 and "<svg" in path.read_text()
    assert json.loads(out)["crossings"] > 0


def test_calibrate(capsys, tmp_path):
    path = tmp_path / "c.json"
    code, out, _ = run(capsys, "calibrate", "--out", str(path))
    assert code == 0 and json.loads(path.read_text())["flip"] == json.loads(out)["flip"]


@pytest.mark.parametrize("args", [["multiply", "--n", "2", "--expr", "s1"],
                                  ["multiply", "--n", "2", "--expr", "s13"],
                                  ["bogus"], ["spanning"],
                                  ["svg", "--n", "2", "--expr", "t1", "--out", "/nonexistent/dir/x.svg"]])
def test_usage_errors(capsys, args):
    assert run(capsys, *args)[0] == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "planarskein", "multiply", "--n", "2", "--expr", "s12"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and json.loads(res.stdout)["terms"]
