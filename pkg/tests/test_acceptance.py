"""Acceptance gate: one pass/fail line per criterion, all checks exact.

Each test records its line in ``conftest.ACCEPTANCE``; the lines are printed
in the terminal summary (and immediately when pytest runs with ``-s``).
"""

import contextlib
import io
import time
from fractions import Fraction as F

import conftest
import suites
from polyma.catalog import axes_cross, bergman_u34, hexagon, plane_complete
from polyma.cli import main
from polyma.dim1 import Singular, envelope1, is_poly_smooth, solve_ma1
from polyma.geom import lattice_volume
from polyma.pafun import AtomicMeasure, ma_poly, positive_at_infinity
from polyma.dim1 import ortho_check

EPS_HEX = [F(1, 4), F(1, 2), F(1), F(3, 2)]
TIME_LIMIT = 5.0


class Gate:
    """Collects failed checks for one criterion and records the summary line."""

    def __init__(self, number: int, title: str):
        self.number, self.title = number, title
        self.failures: list = []
        self.cases = 0
        self.start = time.perf_counter()

    def check(self, ok: bool, what: str) -> None:
        self.cases += 1
        if not ok:
            self.failures.append(what)

    def finish(self, time_limit: float | None = None, extra: str = "") -> None:
        elapsed = time.perf_counter() - self.start
        if time_limit is not None:
            self.check(elapsed < time_limit, f"took {elapsed:.2f}s (limit {time_limit}s)")
        status = "PASS" if not self.failures else "FAIL"
        line = f"criterion {self.number}: {status}  {self.title}  [{self.cases} checks, {elapsed:.2f}s{extra}]"
        if self.failures:
            line += "  first failure: " + self.failures[0]
        conftest.ACCEPTANCE[self.number] = line
        print(line)
        assert not self.failures, self.failures


def cli(*argv) -> tuple[int, str]:
    out = io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(io.StringIO()):
        code = main([str(a) for a in argv])
    return code, out.getvalue()


def test_criterion_1_hexagon(tmp_path):
    g = Gate(1, "hexagon masses and solver output for eps in {1/4, 1/2, 1, 3/2}")
    for e in EPS_HEX:
        d = tmp_path / str(e).replace("/", "_")
        code, _ = cli("example", "hexagon", "--epsilon", e, "--out", d)
        g.check(code == 0, f"example hexagon eps={e} exit {code}")
        code, text = cli("ma", "--space", d / "space.json", "--fn", d / "gamma.json")
        g.check(code == 0, f"ma exit {code}")
        lines = set(text.splitlines())
        for p in ["(1,0)", "(-1,0)", "(0,1)", "(0,-1)"]:
            g.check(f"{p}: {2 - e}" in lines, f"ma eps={e}: mass at {p}")
        for p in ["(1,1)", "(-1,-1)"]:
            g.check(f"{p}: {e}" in lines, f"ma eps={e}: mass at {p}")
        g.check(f"total: {8 - 2 * e}" in lines, f"ma eps={e}: total")
        code, text = cli("solve-ma1", "--space", d / "space.json", "--gamma", d / "gamma.json",
                         "--mu", d / "mu.json", "--basepoint", "1,0")
        g.check(code == 0, f"solve-ma1 exit {code}")
        lines = {ln.strip() for ln in text.splitlines()}
        for p in ["(1,0)", "(-1,0)", "(0,1)", "(0,-1)"]:
            g.check(f"{p}: 0" in lines, f"solve eps={e}: value at {p}")
        for p in ["(1,1)", "(-1,-1)"]:
            g.check(f"{p}: {(1 - e) / 3}" in lines, f"solve eps={e}: value at {p}")
        # library level: every edge leaving (±1,0), (0,±1) toward a diagonal vertex is phi_2
        h = hexagon(e)
        s = h["space"]
        c = s.complex
        phi, status = solve_ma1(s, h["gamma"], h["mu"], (1, 0))
        g.check(bool(status), f"solve eps={e}: not convex")
        target = (F(0), -(1 + e / 2) / 3, (4 - e) / 6)
        pid = {p: i for i, p in enumerate(c.points)}
        for a, b in [((1, 0), (1, 1)), ((0, 1), (1, 1)), ((-1, 0), (-1, -1)), ((0, -1), (-1, -1))]:
            ia, ib = pid[tuple(map(F, a))], pid[tuple(map(F, b))]
            (eid,) = [f.id for f in c.faces_of_dim(1) if f.vertices == frozenset({ia, ib})]
            g.check(phi.coefficients(eid, ia) == target, f"edge {a}->{b} eps={e}")
            for t in (F(1, 3), F(1, 2)):
                x = tuple(F(u) + t * (F(v) - F(u)) for u, v in zip(a, b))
                g.check(phi(x) == (4 - e) * t * t / 6 - (1 + e / 2) * t / 3, f"phi_2({t}) eps={e}")
    g.finish(TIME_LIMIT)


def test_criterion_2_axes_cross(tmp_path):
    g = Gate(2, "axes-cross envelope, MA atom 2 at origin, ortho = -2 eps, origin singular")
    for e in [F(1), F(1, 2), F(1, 4)]:
        d = axes_cross(e)
        s, gamma, u = d["space"], d["gamma"], d["u"]
        P = envelope1(s, gamma, u)
        for x in [F(-3), F(-1, 2), F(0), F(2)]:
            g.check(P((x, 0)) == abs(x), f"P on x-axis eps={e}")
        for y in [F(-3), -e, -e / 2, F(0), e / 3, e, 2 * e + 1]:
            g.check(P((0, y)) == max(F(0), abs(y) - e), f"P on y-axis eps={e}")
        mu = ma_poly([P], s)
        g.check(mu[(0, 0)] == 2, f"MA(P)(0) eps={e}")
        val, comp = ortho_check(s, gamma, u, P)
        g.check(comp and val == -2 * e, f"ortho eps={e}: {val}")
        origin = s.complex.points.index((0, 0))
        g.check(isinstance(is_poly_smooth(s)[origin], Singular), "origin not singular")
    # the same through the command line
    code, _ = cli("example", "axes_cross", "--epsilon", "1", "--out", tmp_path)
    g.check(code == 0, "example axes_cross")
    code, text = cli("envelope1", "--space", tmp_path / "space.json", "--gamma", tmp_path / "gamma.json",
                     "--u", tmp_path / "u.json", "-o", tmp_path / "P.json")
    g.check(code == 0, f"envelope1 exit {code}")
    code, text = cli("ortho-check", "--space", tmp_path / "space.json", "--gamma", tmp_path / "gamma.json",
                     "--u", tmp_path / "u.json", "--P", tmp_path / "P.json")
    g.check("integral: -2" in text.splitlines(), "cli ortho-check integral")
    code, text = cli("smooth-check", "--space", tmp_path / "space.json")
    g.check("(0,0): Singular" in text, "cli smooth-check")
    g.finish(TIME_LIMIT)


def test_criterion_3_bergman(tmp_path):
    g = Gate(3, "Bergman fan U(3,4): balanced, MA(gamma)(0) = 4, ortho = -4 eps, not positive at infinity")
    for e in [F(1, 4), F(1, 2), F(1, 10)]:
        d = bergman_u34(e)
        s, gamma = d["space"], d["gamma"]
        g.check(s.problems() == [], "balancing")
        g.check(set(s.top_weight.values()) == {1}, "unit weights")
        g.check(ma_poly([gamma] * 2, s) == AtomicMeasure({(0, 0, 0): 4}), "MA(gamma)")
        val, comp = ortho_check(s, gamma, d["u"], gamma)
        g.check(comp and val == -4 * e, f"ortho eps={e}: {val}")
        g.check(positive_at_infinity(gamma) is False, "positive at infinity")
    code, _ = cli("example", "bergman_u34", "--epsilon", "1/4", "--out", tmp_path)
    g.check(code == 0, "example bergman_u34")
    code, text = cli("balance", "--space", tmp_path / "space.json")
    g.check(code == 0, f"cli balance exit {code}")
    g.finish(TIME_LIMIT)


def test_criterion_4_real_ma():
    g = Gate(4, "max(0,x,y) gives {0: 1} = 2! Vol(simplex); random convex instances compare Equal")
    d = plane_complete()
    mu = ma_poly([d["gamma"]] * 2, d["space"])
    g.check(mu == AtomicMeasure({(0, 0): 1}), f"MA = {mu}")
    g.check(mu[(0, 0)] == 1 * 2 * lattice_volume([(0, 0), (1, 0), (0, 1)]), "2! Vol")
    elapsed_fixed = time.perf_counter() - g.start
    g.check(elapsed_fixed < TIME_LIMIT, f"fixed instance took {elapsed_fixed:.2f}s")
    n = suites.run(suites.real_ma_agrees)
    g.check(n >= suites.N_PROPERTY, f"only {n} random instances")
    g.finish(extra=f", {n} random instances")


def test_criterion_5_property_suites():
    g = Gate(5, "property suites (intersection product, MA, degree, bilinear form, convexity tests)")
    counts = []
    for suite in suites.CRITERION5:
        try:
            n = suites.run(suite)
        except Exception as exc:  # report the failing suite, then fail the gate
            g.check(False, f"{suite.__name__}: {type(exc).__name__}: {exc}")
            continue
        counts.append(f"{suite.__name__}={n}")
        g.check(n >= suites.N_PROPERTY, f"{suite.__name__} ran {n} cases")
    both = suites.PAPC_OUTCOMES
    g.check(both[True] > 0 and both[False] > 0, f"convexity outcomes not mixed: {both}")
    g.finish(extra=", " + " ".join(counts))


def test_criterion_6_energy():
    g = Gate(6, "energy derivative, difference and translation identities")
    try:
        n = suites.run(suites.energy_identities)
    except Exception as exc:
        g.check(False, f"{type(exc).__name__}: {exc}")
        n = 0
    g.check(n >= suites.N_PROPERTY, f"only {n} pairs")
    g.finish(extra=f", {n} random pairs x 5 sample points")


def test_criterion_7_solver():
    g = Gate(7, "laplacian(solve_ma1(mu)) = mu, Convex on smooth graphs, MassMismatch detected")
    try:
        n = suites.run(suites.solver_round_trip)
    except Exception as exc:
        g.check(False, f"{type(exc).__name__}: {exc}")
        n = 0
    g.check(n >= 100, f"only {n} measures")
    g.finish(extra=f", {n} random measures")
