"""Command line: exit codes, JSON round trips and golden reports."""

import contextlib
import io
import json
import pathlib
import subprocess
import sys
from fractions import Fraction as F

import pytest
from hypothesis import given, settings

import strategies as S
from polyma import catalog
from polyma.cli import main
from polyma.dim1 import Measure1D, solve_ma1
from polyma.io import (
    complex_from_json,
    complex_to_json,
    function_from_json,
    function_to_json,
    measure_from_json,
    measure_to_json,
    pq_from_json,
    pq_to_json,
    space_from_json,
    space_to_json,
)

GOLDEN = pathlib.Path(__file__).parent / "golden"
REPORTS = {
    "tropical_line": [],
    "axes_cross": ["--epsilon", "1/2"],
    "hexagon": ["--epsilon", "1/2"],
    "plane_complete": [],
    "bergman_u34": ["--epsilon", "1/4"],
}


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main([str(a) for a in argv])
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def hexdir(tmp_path):
    code, _, _ = run("example", "hexagon", "--epsilon", "1/2", "--out", tmp_path)
    assert code == 0
    return tmp_path


def test_validate_hexagon(hexdir):
    assert run("validate", hexdir / "space.json")[:2] == (0, "Valid\n")


def test_ma_hexagon_half(hexdir):
    code, text, _ = run("ma", "--space", hexdir / "space.json", "--fn", hexdir / "gamma.json")
    lines = text.splitlines()
    assert code == 0
    assert "(1,0): 3/2" in lines and "(1,1): 1/2" in lines and "total: 7" in lines


def test_solve_hexagon_half(hexdir):
    code, text, _ = run("solve-ma1", "--space", hexdir / "space.json", "--gamma", hexdir / "gamma.json",
                        "--mu", hexdir / "mu.json", "--basepoint", "1,0")
    assert code == 0
    assert "  (1,1): 1/6" in text.splitlines()
    assert text.splitlines()[-1] == "pc_status: Convex"


def test_usage_errors_exit_2(hexdir):
    assert run()[0] == 2
    assert run("frobnicate")[0] == 2
    assert run("ma", "--space", hexdir / "space.json")[0] == 2


def test_domain_errors_exit_1(hexdir, tmp_path):
    # a measure of the wrong total mass
    bad = tmp_path / "bad_mu.json"
    bad.write_text(json.dumps({"atoms": [{"point": ["1", "0"], "mass": "1"}], "densities": []}))
    code, _, err = run("solve-ma1", "--space", hexdir / "space.json", "--gamma", hexdir / "gamma.json",
                       "--mu", bad, "--basepoint", "1,0")
    assert code == 1 and "MassMismatch" in err
    # a missing file
    assert run("validate", tmp_path / "nope.json")[0] == 1
    # a float where a rational is required
    f = tmp_path / "float.json"
    d = json.loads((hexdir / "space.json").read_text())
    d["points"][0][0] = 0.5
    f.write_text(json.dumps(d))
    code, _, err = run("validate", f)
    assert code == 1 and "FormatError" in err


def test_convexity_witness_exit_1(tmp_path):
    run("example", "tropical_line", "--out", tmp_path)
    d = json.loads((tmp_path / "gamma.json").read_text())
    for form in d["forms"]:
        form["linear"] = [str(-F(x)) for x in form["linear"]]
    (tmp_path / "neg.json").write_text(json.dumps(d))
    code, text, _ = run("convex-check", "--fn", tmp_path / "neg.json")
    assert code == 1 and "Witness" in text


def test_console_script_installed():
    r = subprocess.run([sys.executable, "-m", "polyma", "report", "tropical_line"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert r.stdout == (GOLDEN / "tropical_line.txt").read_text()


@pytest.mark.parametrize("name", sorted(REPORTS))
def test_golden_report(name):
    code, text, _ = run("report", name, *REPORTS[name])
    assert code == 0
    assert text == (GOLDEN / f"{name}.txt").read_text(encoding="utf-8")


def test_report_is_deterministic():
    assert run("report", "hexagon", "--epsilon", "1/4") == run("report", "hexagon", "--epsilon", "1/4")


# ---------------------------------------------------------------------------
# round trips


def _through_json(d):
    return json.loads(json.dumps(d))


@pytest.mark.parametrize("name", sorted(REPORTS))
def test_example_round_trip(name):
    ex = catalog.generate(name)
    s = ex["space"]
    s2 = space_from_json(_through_json(space_to_json(s)))
    assert space_to_json(s2) == space_to_json(s)
    g = function_from_json(_through_json(function_to_json(ex["gamma"], None)), s2.complex)
    assert g.equals(ex["gamma"])


def test_pq_and_measure_round_trip():
    h = catalog.hexagon(F(1, 4))
    c = h["space"].complex
    mu = h["mu"]
    assert measure_from_json(_through_json(measure_to_json(mu))) == mu
    phi, _ = solve_ma1(h["space"], h["gamma"], mu, (1, 0))
    back = pq_from_json(_through_json(pq_to_json(phi, None)), c)
    for p in c.points:
        assert back(p) == phi(p)
    for e in c.bounded_edges():
        for t in (F(1, 3), F(1, 2)):
            a, b = c.face_points(e)
            x = tuple(u + t * (v - u) for u, v in zip(a, b))
            assert back(x) == phi(x)


@settings(max_examples=40)
@given(S.spaces1)
def test_random_space_round_trip(s):
    d = space_to_json(s)
    assert space_to_json(space_from_json(_through_json(d))) == d
    assert complex_to_json(complex_from_json(_through_json(complex_to_json(s.complex)))) == \
        complex_to_json(s.complex)


if __name__ == "__main__":
    # regenerate the golden reports after a verified change
    for name, extra in REPORTS.items():
        code, text, _ = run("report", name, *extra)
        assert code == 0
        (GOLDEN / f"{name}.txt").write_text(text, encoding="utf-8")
