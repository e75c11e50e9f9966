"""One-dimensional theory: Laplacian, solver, envelope, smoothness and orthogonality."""

from fractions import Fraction as F

import pytest

import strategies as S
from polyma.catalog import axes_cross, bergman_u34, hexagon, real_line, tropical_line
from polyma.complex import BalancedSpace, Complex
from polyma.dim1 import (
    Measure1D,
    PQFunction,
    Singular,
    Smooth,
    envelope1,
    is_pc,
    is_poly_smooth,
    laplacian,
    ortho_check,
    solve_ma1,
)
from polyma.errors import (
    BadParameter,
    DimensionNotOne,
    Disconnected,
    InvalidFunction,
    MassMismatch,
    NotACompetitor,
    NotBoundedPerturbation,
    NotPositiveAtInfinity,
)
from polyma.geom import AffineForm, Polyhedron
from polyma.pafun import PAFunction, is_papc, ma_poly, rebase

EPS = [F(1, 4), F(1, 2), F(1), F(3, 2)]
DIAG = {(1, 1), (-1, -1)}


def _pid(c, p):
    return c.points.index(tuple(F(x) for x in p))


def _solve_hexagon(e):
    d = hexagon(e)
    s = d["space"]
    return d, solve_ma1(s, d["gamma"], d["mu"], (1, 0))


# ---------------------------------------------------------------------------
# Laplacian


def test_laplacian_of_gamma_line():
    d = tropical_line()
    assert laplacian(d["gamma"], d["space"]) == Measure1D({(0, 0): 3}, {})


@pytest.mark.parametrize("e", EPS)
def test_laplacian_of_hexagon_solution(e):
    d, (phi, _) = _solve_hexagon(e)
    lap = laplacian(phi, d["space"])
    assert lap.atoms == {}
    assert lap.densities == {eid: (4 - e) / 3 for eid in d["space"].complex.bounded_edges()}


def test_laplacian_of_affine_is_zero():
    s = real_line([0])
    f = PAFunction.affine(s.complex, AffineForm((F(2, 3),), 1))
    assert laplacian(f, s) == Measure1D()


def test_laplacian_needs_dimension_one():
    from polyma.catalog import plane_complete

    d = plane_complete()
    with pytest.raises(DimensionNotOne):
        laplacian(d["gamma"], d["space"])


def test_pq_orientation_consistent():
    d, (phi, _) = _solve_hexagon(F(1, 2))
    c = d["space"].complex
    for eid in c.bounded_edges():
        a, b = sorted(c.face(eid).vertices)
        va, sa, q = phi.coefficients(eid, a)
        vb, sb, qb = phi.coefficients(eid, b)
        assert q == qb and va == phi.values[a] and vb == phi.values[b]
        # forward and backward parametrizations describe the same quadratic
        assert sa + sb == -2 * q * 1


# ---------------------------------------------------------------------------
# solver


@pytest.mark.parametrize("e", EPS)
def test_hexagon_solution_matches_closed_form(e):
    d, (phi, status) = _solve_hexagon(e)
    c = d["space"].complex
    for p in [(1, 0), (-1, 0), (0, 1), (0, -1)]:
        assert phi.values[_pid(c, p)] == 0
    for p in DIAG:
        assert phi.values[_pid(c, p)] == (1 - e) / 3
    # from each of (±1,0), (0,±1) toward the adjacent diagonal vertex: (4-e)t^2/6 - (1+e/2)t/3
    for start, end in [((1, 0), (1, 1)), ((0, 1), (1, 1)), ((-1, 0), (-1, -1)), ((0, -1), (-1, -1))]:
        a, b = _pid(c, start), _pid(c, end)
        (eid,) = [f.id for f in c.faces_of_dim(1) if f.vertices == frozenset({a, b})]
        assert phi.coefficients(eid, a) == (0, -(1 + e / 2) / 3, (4 - e) / 6)
    assert status
    assert all(phi.rays[eid] == d["gamma"].form(eid).slope(c.face_rays(eid)[0]) for eid in phi.rays)


def test_gamma_solves_its_own_equation():
    d = hexagon(F(1, 2))
    s, g = d["space"], d["gamma"]
    mu = Measure1D.from_atomic(ma_poly([g], s))
    phi, status = solve_ma1(s, g, mu, (1, 0))
    assert status and phi.is_affine()
    shifted = g - g((1, 0))
    assert phi.to_pa().equals(shifted)


def test_single_atom_on_refined_line():
    line = tropical_line()
    s = S.subdivide1(line["space"], (-1, -1))
    mu = Measure1D({(-1, -1): 3}, {})
    phi, status = solve_ma1(s, line["gamma"], mu, (0, 0))
    assert status
    assert laplacian(phi, s) == mu
    # slopes 1 + 1 at the origin force slope -2 toward (-1,-1); there 2 + 1 = 3
    assert phi((-1, -1)) == -2 and phi((0, 0)) == 0 and phi((2, 0)) == 2 and phi((-3, -3)) == 0


def test_solver_errors():
    d = hexagon(F(1, 2))
    s, g = d["space"], d["gamma"]
    with pytest.raises(MassMismatch):
        solve_ma1(s, g, Measure1D({(1, 0): 1}), (1, 0))
    with pytest.raises(BadParameter):
        solve_ma1(s, g, Measure1D({(1, F(1, 2)): 7}), (1, 0))
    with pytest.raises(NotPositiveAtInfinity):
        solve_ma1(s, PAFunction.constant(s.complex, 0), Measure1D(), (1, 0))
    cells = [Polyhedron([(x, 0)], [(0, 1)]) for x in (0, 1)] + [Polyhedron([(x, 0)], [(0, -1)]) for x in (0, 1)]
    two = BalancedSpace.unit(Complex.from_cells(2, cells))
    gy = PAFunction.from_ambient(two.complex, lambda p: abs(p[1]))
    with pytest.raises(Disconnected):
        solve_ma1(two, gy, Measure1D({(0, 0): 2, (1, 0): 2}), (0, 0))


def test_basepoint_changes_constant_only():
    d = hexagon(F(1, 4))
    s = d["space"]
    phi1, _ = solve_ma1(s, d["gamma"], d["mu"], (1, 0))
    phi2, _ = solve_ma1(s, d["gamma"], d["mu"], (1, 1))
    diffs = {phi1.values[p] - phi2.values[p] for p in phi1.values}
    assert diffs == {F(1, 4)}  # (1 - eps)/3 at eps = 1/4
    assert phi1.edges == phi2.edges


def test_pq_validation():
    d, (phi, _) = _solve_hexagon(F(1, 2))
    phi.validate()
    bad = PQFunction(phi.carrier, {**phi.values, 0: phi.values[0] + 1}, phi.edges, phi.rays)
    with pytest.raises(InvalidFunction):
        bad.validate()


def test_is_pc_on_pq():
    d, (phi, _) = _solve_hexagon(F(1, 2))
    assert is_pc(phi)
    neg = PQFunction(phi.carrier, phi.values, {e: (a + 2 * q, -q) for e, (a, q) in phi.edges.items()}, phi.rays)
    assert not is_pc(neg)


# ---------------------------------------------------------------------------
# envelope


def test_envelope_of_constant_shift():
    d = hexagon(F(1, 2))
    s, g = d["space"], d["gamma"]
    u = PAFunction.constant(s.complex, F(5, 7))
    assert envelope1(s, g, u).equals(g + F(5, 7))


@pytest.mark.parametrize("e", [F(1), F(1, 2), F(1, 3)])
def test_envelope_axes_cross(e):
    d = axes_cross(e)
    P = envelope1(d["space"], d["gamma"], d["u"])
    for x in [F(0), F(1, 2), F(3), F(-2)]:
        assert P((x, 0)) == abs(x)
    for y in [F(0), e / 2, e, 2 * e, -3 * e, F(-7)]:
        assert P((0, y)) == max(0, abs(y) - e)


def test_envelope_when_gamma_is_already_below():
    line = tropical_line()
    s = S.subdivide1(line["space"], (1, 0))
    u = PAFunction.from_data(s.complex, lambda p: 1 if p == (1, 0) else 0, lambda m, r: 0)
    assert envelope1(s, line["gamma"], u).equals(rebase(line["gamma"], s.complex))


def test_envelope_rejects_unbounded_u():
    line = tropical_line()
    with pytest.raises(NotBoundedPerturbation):
        envelope1(line["space"], line["gamma"], line["gamma"])


# ---------------------------------------------------------------------------
# smoothness


def test_smoothness_examples():
    tl = tropical_line()["space"]
    assert list(is_poly_smooth(tl).values()) == [Smooth()]
    ax = axes_cross()["space"]
    (res,) = is_poly_smooth(ax).values()
    assert isinstance(res, Singular) and "rank" in res.reason
    rl = real_line([0, 1])
    assert all(isinstance(v, Smooth) for v in is_poly_smooth(rl).values())
    # four balanced directions of rank 3 spanning the index-2 lattice {x + y + z even}
    cells = [Polyhedron([(0, 0, 0)], [r]) for r in [(1, 1, 0), (1, -1, 0), (-1, 0, 1), (-1, 0, -1)]]
    c = Complex.from_cells(3, cells)
    (res,) = is_poly_smooth(c).values()
    assert isinstance(res, Singular) and "saturated" in res.reason


def test_hexagon_vertices_smooth():
    s = hexagon()["space"]
    assert all(isinstance(v, Smooth) for v in is_poly_smooth(s).values())


# ---------------------------------------------------------------------------
# orthogonality


def test_ortho_zero_when_obstacle_convex():
    d = hexagon(F(1, 2))
    s, g = d["space"], d["gamma"]
    u = PAFunction.constant(s.complex, 2)
    assert ortho_check(s, g, u, g + u) == (0, True)


@pytest.mark.parametrize("e", [F(1), F(1, 2), F(1, 5)])
def test_ortho_axes_cross(e):
    d = axes_cross(e)
    s = d["space"]
    P = envelope1(s, d["gamma"], d["u"])
    assert ma_poly([P], s).atoms == {(0, 0): 2, (0, e): 1, (0, -e): 1}
    assert ortho_check(s, d["gamma"], d["u"], P) == (-2 * e, True)


def test_ortho_bergman():
    d = bergman_u34(F(1, 4))
    assert ortho_check(d["space"], d["gamma"], d["u"], d["gamma"]) == (-1, True)


def test_ortho_rejects_non_competitors():
    d = axes_cross(F(1))
    s, g, u = d["space"], d["gamma"], d["u"]
    with pytest.raises(NotACompetitor, match="exceeds"):
        ortho_check(s, g, u, g + 5)
    with pytest.raises(NotACompetitor, match="convex"):
        ortho_check(s, g, u, g + u)
    with pytest.raises(NotACompetitor, match="growth"):
        ortho_check(s, g, u, PAFunction.constant(s.complex, -5))
