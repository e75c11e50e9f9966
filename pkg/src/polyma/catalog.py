"""Built-in example spaces and functions.

Each generator returns a dict of named artifacts.  Keys used:

``space``
    the :class:`~polyma.complex.BalancedSpace`
``gamma``
    the reference function
``u``, ``phi``, ``g``, ``mu``
    extra data where the example has them
"""

from __future__ import annotations

from fractions import Fraction

from .complex import BalancedSpace, Complex
from .errors import BadParameter
from .geom import AffineForm, Polyhedron, rvec, to_rational, vadd, vscale
from .pafun import PAFunction

ORIGIN2 = (0, 0)


def _ray_cells(apex, directions):
    return [Polyhedron([apex], [d]) for d in directions]


def tropical_line() -> dict:
    c = Complex.from_cells(2, _ray_cells(ORIGIN2, [(1, 0), (0, 1), (-1, -1)]), name="tropical_line")
    space = BalancedSpace.unit(c)
    gamma = PAFunction.from_data(c, lambda p: 0, lambda m, r: 1)
    return {"space": space, "gamma": gamma}


def tropical_line_function(gamma: PAFunction, slopes) -> PAFunction:
    """A conical function on the tropical line with the given slopes on rays (1,0), (0,1), (-1,-1)."""
    table = dict(zip([(1, 0), (0, 1), (-1, -1)], [to_rational(s) for s in slopes]))
    return PAFunction.from_data(gamma.carrier, lambda p: 0, lambda m, r: table[tuple(r)])


def axes_cross(epsilon=None) -> dict:
    """The union of the coordinate axes in the plane with ``gamma = |x| + |y|``.

    With ``epsilon`` the y-axis is subdivided at ``(0, ±epsilon)`` and the
    obstacle data ``phi`` and ``u = phi - gamma`` are included.
    """
    gamma_fn = lambda p: abs(p[0]) + abs(p[1])  # noqa: E731
    if epsilon is None:
        c = Complex.from_cells(2, _ray_cells(ORIGIN2, [(1, 0), (-1, 0), (0, 1), (0, -1)]), name="axes_cross")
        space = BalancedSpace.unit(c)
        return {"space": space, "gamma": PAFunction.from_ambient(c, gamma_fn)}
    e = to_rational(epsilon)
    if not e > 0:
        raise BadParameter("epsilon must be positive")
    cells = _ray_cells(ORIGIN2, [(1, 0), (-1, 0)])
    cells += [Polyhedron([(0, 0), (0, e)]), Polyhedron([(0, 0), (0, -e)]),
              Polyhedron([(0, e)], [(0, 1)]), Polyhedron([(0, -e)], [(0, -1)])]
    c = Complex.from_cells(2, cells, name="axes_cross")
    space = BalancedSpace.unit(c)
    gamma = PAFunction.from_ambient(c, gamma_fn)

    def phi_fn(p):
        x, y = p
        if y == 0:
            return abs(x) + e
        return e - abs(y) if abs(y) <= e else abs(y) - e

    phi = PAFunction.from_ambient(c, phi_fn)
    return {"space": space, "gamma": gamma, "phi": phi, "u": phi - gamma}


HEXAGON_VERTICES = [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)]


def hexagon(epsilon=Fraction(1, 2), subdivide: bool = False) -> dict:
    """The hexagon with six unbounded edges and the reference function ``gamma_eps``.

    ``mu`` is the measure with density ``(4 - eps)/3`` on every bounded edge.
    With ``subdivide`` every bounded edge is split at its midpoint.
    """
    e = to_rational(epsilon)
    if not 0 < e < 2:
        raise BadParameter("epsilon must lie in (0, 2)")
    V = [rvec(v) for v in HEXAGON_VERTICES]
    cells = []
    for i in range(6):
        a, b = V[i], V[(i + 1) % 6]
        if subdivide:
            mid = vscale(Fraction(1, 2), vadd(a, b))
            cells += [Polyhedron([a, mid]), Polyhedron([mid, b])]
        else:
            cells.append(Polyhedron([a, b]))
        cells.append(Polyhedron([a], [a]))
    c = Complex.from_cells(2, cells, name="hexagon")
    space = BalancedSpace.unit(c)
    diag = {(1, 1), (-1, -1)}

    def slope(m, r):
        return 2 - e if tuple(r) in diag else Fraction(1)

    if subdivide:
        # values at midpoints come from the unsubdivided function
        gamma = PAFunction.from_data(c, hexagon(e)["gamma"], slope)
    else:
        gamma = PAFunction.from_data(c, lambda p: 2 - e if tuple(p) in diag else Fraction(1), slope)
    from .dim1 import Measure1D

    mu = Measure1D({}, {eid: (4 - e) / 3 for eid in c.bounded_edges()})
    return {"space": space, "gamma": gamma, "mu": mu}


def plane_complete() -> dict:
    """The complete fan of ``max(0, x, y)`` in the plane with unit weights."""
    cells = [Polyhedron([ORIGIN2], [(-1, 0), (0, -1)]), Polyhedron([ORIGIN2], [(1, 1), (0, -1)]),
             Polyhedron([ORIGIN2], [(1, 1), (-1, 0)])]
    c = Complex.from_cells(2, cells, name="plane_complete")
    space = BalancedSpace.unit(c)
    forms = [AffineForm((0, 0), 0), AffineForm((1, 0), 0), AffineForm((0, 1), 0)]
    return {"space": space, "gamma": PAFunction.from_max(c, forms)}


def plane_quadrants(center=(0, 0)) -> BalancedSpace:
    """The plane cut into four quadrants at ``center``, unit weights."""
    p = rvec(center)
    cells = [Polyhedron([p], [(a, 0), (0, b)]) for a in (1, -1) for b in (1, -1)]
    return BalancedSpace.unit(Complex.from_cells(2, cells, name="plane_quadrants"))


def real_line(breakpoints=(0,)) -> BalancedSpace:
    """The real line subdivided at ``breakpoints``, unit weights."""
    pts = sorted({to_rational(b) for b in breakpoints})
    if not pts:
        raise BadParameter("need at least one breakpoint")
    cells = [Polyhedron([(pts[0],)], [(-1,)]), Polyhedron([(pts[-1],)], [(1,)])]
    cells += [Polyhedron([(a,), (b,)]) for a, b in zip(pts, pts[1:])]
    return BalancedSpace.unit(Complex.from_cells(1, cells, name="real_line"))


E3 = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)]


def _e(i):
    return E3[i - 1]


def _eij(i, j):
    return vadd(_e(i), _e(j))


PAIRS = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]


def bergman_u34(epsilon=Fraction(1, 4)) -> dict:
    """The Bergman fan of the uniform matroid of rank 3 on 4 elements in R^3.

    ``gamma`` is 1 on every primitive ray generator except ``e12`` and ``e34``
    where it is 0.  ``g`` lives on a refinement adding the vertices
    ``eps e_i``, ``eps e12`` and ``eps e34``; it equals ``gamma + eps`` away from
    the cones spanned by ``e1, e2`` and ``e3, e4`` and vanishes at ``eps e12``
    and ``eps e34``.  ``u = g - gamma``.
    """
    e = to_rational(epsilon)
    if not e > 0:
        raise BadParameter("epsilon must be positive")
    O = (0, 0, 0)
    fan_cells = []
    for i, j in PAIRS:
        fan_cells.append(Polyhedron([O], [_e(i), _eij(i, j)]))
        fan_cells.append(Polyhedron([O], [_eij(i, j), _e(j)]))
    fan = Complex.from_cells(3, fan_cells, name="bergman_u34")
    space = BalancedSpace.unit(fan)
    special = {tuple(_eij(1, 2)), tuple(_eij(3, 4))}

    def gval(r):
        return Fraction(0) if tuple(r) in special else Fraction(1)

    gamma = PAFunction.from_data(fan, lambda p: 0, lambda m, r: gval(r))

    cells = []
    for i, j in PAIRS:
        a, b, ab = _e(i), _e(j), _eij(i, j)
        ea, eb, eab = vscale(e, a), vscale(e, b), vscale(e, ab)
        if (i, j) in ((1, 2), (3, 4)):
            for x, ex in ((a, ea), (b, eb)):
                cells.append(Polyhedron([O, ex, eab]))
                cells.append(Polyhedron([ex, eab], [x]))
                cells.append(Polyhedron([eab], [x, ab]))
        else:
            for x, ex in ((a, ea), (b, eb)):
                cells.append(Polyhedron([O, ex], [ab]))
                cells.append(Polyhedron([ex], [x, ab]))
    fine = Complex.from_cells(3, cells, name="bergman_u34_refined")
    zero_pts = {vscale(e, _eij(1, 2)), vscale(e, _eij(3, 4))}

    def g_value(p):
        if rvec(p) in zero_pts:
            return Fraction(0)
        return gamma(p) + e

    g = PAFunction.from_data(fine, g_value, lambda m, r: gval(r))
    return {"space": space, "gamma": gamma, "g": g, "u": g - gamma, "refined": fine}


GENERATORS = {
    "tropical_line": tropical_line,
    "axes_cross": axes_cross,
    "hexagon": hexagon,
    "plane_complete": plane_complete,
    "bergman_u34": bergman_u34,
}


def generate(name: str, epsilon=None) -> dict:
    if name not in GENERATORS:
        raise BadParameter(f"unknown example {name!r}; choose from {sorted(GENERATORS)}")
    fn = GENERATORS[name]
    if name in ("tropical_line", "plane_complete"):
        return fn()
    if name == "axes_cross":
        return fn(Fraction(1) / 2 if epsilon is None else epsilon)
    return fn() if epsilon is None else fn(epsilon)
