"""Hypothesis strategies for small balanced spaces, refinements and functions.

Spaces have at most 12 faces except the strip complex (15 faces), the
smallest planar complex here with a bounded two-dimensional cell.
"""

from __future__ import annotations

import math
from fractions import Fraction

from hypothesis import assume
from hypothesis import strategies as st

from polyma.complex import BalancedSpace, Complex, validate_complex
from polyma.geom import AffineForm, Polyhedron, primitive, rvec, vadd, vscale
from polyma.pafun import PAFunction, max_domains

small_int = st.integers(-3, 3)
small_q = st.fractions(min_value=-3, max_value=3, max_denominator=4)
pos_q = st.fractions(min_value=Fraction(1, 4), max_value=3, max_denominator=4)


def _weighted_rays(vectors):
    """Primitive directions and multiplicities of integer vectors (None when directions repeat)."""
    dirs, weights = [], []
    for v in vectors:
        if not any(v):
            return None
        g = math.gcd(*v)
        d = tuple(x // g for x in v)
        if d in dirs:
            return None
        dirs.append(d)
        weights.append(g)
    return dirs, weights


def _space_from_cells(n, cells, weights_by_cell=None, name=None) -> BalancedSpace:
    c = Complex.from_cells(n, cells, name=name)
    top = {}
    for f in c.faces_of_dim(c.dim):
        P = c.polyhedron(f.id)
        w = 1
        if weights_by_cell:
            for Q, wq in weights_by_cell:
                if Q.contains_polyhedron(P):
                    w = wq
                    break
        top[f.id] = Fraction(w)
    return BalancedSpace(c, top, c.dim)


def _int_vec(draw, lo=-3, hi=3):
    return (draw(st.integers(lo, hi)), draw(st.integers(lo, hi)))


@st.composite
def fan1(draw):
    """A balanced one-dimensional fan in the plane with 3 or 4 rays."""
    k = draw(st.integers(3, 4))
    vs = [_int_vec(draw) for _ in range(k - 1)]
    vs.append(tuple(-sum(v[i] for v in vs) for i in range(2)))
    wr = _weighted_rays(vs)
    assume(wr is not None)
    dirs, ws = wr
    apex = (draw(small_q), draw(small_q))
    cells = [Polyhedron([apex], [d]) for d in dirs]
    wc = [(Polyhedron([apex], [d]), w) for d, w in zip(dirs, ws)]
    s = _space_from_cells(2, cells, wc, name="fan1")
    return s


@st.composite
def caterpillar(draw, smooth=False):
    """Two trivalent vertices joined by an edge, optionally subdivided.

    With ``smooth`` every vertex is polyhedrally smooth and weights are 1.
    """
    d0 = _int_vec(draw, -2, 2)
    assume(any(d0))
    d = primitive(d0)
    if smooth:
        a1 = _unimodular_partner(draw, d)
        b1 = _unimodular_partner(draw, d)
        at_a = [d, a1, tuple(-x - y for x, y in zip(d, a1))]
        at_b = [tuple(-x for x in d), b1, tuple(x - y for x, y in zip(d, b1))]
    else:
        a1 = _int_vec(draw)
        b1 = _int_vec(draw)
        at_a = [d, a1, tuple(-x - y for x, y in zip(d, a1))]
        at_b = [tuple(-x for x in d), b1, tuple(x - y for x, y in zip(d, b1))]
    wa, wb = _weighted_rays(at_a[1:]) or (None, None), _weighted_rays(at_b[1:]) or (None, None)
    assume(wa[0] is not None and wb[0] is not None)
    assume(_weighted_rays(at_a) is not None and _weighted_rays(at_b) is not None)
    A = (draw(small_q), draw(small_q))
    t = draw(st.sampled_from([Fraction(1), Fraction(2), Fraction(1, 2), Fraction(3, 2)]))
    B = vadd(rvec(A), vscale(t, d))
    cuts = sorted(set(draw(st.lists(st.sampled_from([Fraction(1, 4), Fraction(1, 2), Fraction(2, 3)]),
                                    max_size=2))))
    pts = [rvec(A)] + [vadd(rvec(A), vscale(t * c, d)) for c in cuts] + [B]
    cells = [Polyhedron([p, q]) for p, q in zip(pts, pts[1:])]
    wc = []
    for base, (dirs, ws) in ((A, wa), (B, wb)):
        for dd, w in zip(dirs, ws):
            P = Polyhedron([base], [dd])
            cells.append(P)
            wc.append((P, w))
    try:
        s = _space_from_cells(2, cells, wc, name="caterpillar")
    except Exception:
        assume(False)
    assume(not validate_complex(s.complex))
    assume(not s.problems())
    return s


def _unimodular_partner(draw, d):
    """An integer vector ``a`` with ``det(d, a) = ±1``."""
    x, y = d
    # solve x*b - y*a = 1 by the extended Euclidean algorithm
    g, p, q = _xgcd(x, -y)
    assume(abs(g) == 1)
    # x*p + (-y)*q = g  ->  a = (q, p) * g satisfies det(d, a) = x*p*g - y*q*g = g^2 = 1
    base = (q * g, p * g)
    k = draw(st.integers(-2, 2))
    return (base[0] + k * x, base[1] + k * y)


def _xgcd(a, b):
    if b == 0:
        return (a, 1, 0)
    g, x, y = _xgcd(b, a % b)
    return (g, y, x - (a // b) * y)


@st.composite
def fan2(draw):
    """A complete fan in the plane with 3 to 5 rays at a rational apex (unit weights)."""
    k = draw(st.integers(3, 5))
    vs = set()
    for _ in range(k):
        v = _int_vec(draw, -2, 2)
        if any(v):
            vs.add(primitive(v))
    dirs = sorted(vs, key=lambda v: math.atan2(v[1], v[0]))
    assume(len(dirs) >= 3)
    for a, b in zip(dirs, dirs[1:] + dirs[:1]):
        assume(a[0] * b[1] - a[1] * b[0] > 0)
    apex = (draw(small_q), draw(small_q))
    cells = [Polyhedron([apex], [a, b]) for a, b in zip(dirs, dirs[1:] + dirs[:1])]
    return _space_from_cells(2, cells, name="fan2")


@st.composite
def strip(draw):
    """The plane cut by a vertical line and two horizontal lines (15 faces)."""
    x0, y0 = draw(small_q), draw(small_q)
    w = draw(st.sampled_from([Fraction(1), Fraction(2), Fraction(1, 2)]))
    A, B = (x0, y0), (x0, y0 + w)
    cells = []
    for sx in (1, -1):
        cells.append(Polyhedron([A], [(sx, 0), (0, -1)]))
        cells.append(Polyhedron([A, B], [(sx, 0)]))
        cells.append(Polyhedron([B], [(sx, 0), (0, 1)]))
    return _space_from_cells(2, cells, name="strip")


def strip_convex(c: Complex, a, b, lin=(0, 0)) -> PAFunction:
    """``a|x - x0| + b max(y0 - y, 0, y - y0 - w) + lin`` on a strip complex (convex for a, b >= 0)."""
    ys = sorted({p[1] for p in c.points})
    x0 = c.points[0][0]
    y0, y1 = ys[0], ys[-1]
    return PAFunction.from_ambient(
        c, lambda p: a * abs(p[0] - x0) + b * max(y0 - p[1], 0, p[1] - y1) + lin[0] * p[0] + lin[1] * p[1])


spaces1 = st.one_of(fan1(), caterpillar())
spaces2 = fan2()


# ---------------------------------------------------------------------------
# functions


@st.composite
def pa_function(draw, c: Complex, bounded: bool = False, values=small_q, slopes=small_int):
    """Random vertex values and random slopes along ray directions."""
    vals = {p: draw(values) for p in c.points}
    sl = {r: (0 if bounded else draw(slopes)) for r in c.rays}
    return PAFunction.from_data(c, lambda p: vals[rvec(p)], lambda m, r: sl[tuple(r)])


@st.composite
def max_of_forms(draw, n: int, k_min: int = 2, k_max: int = 4):
    """Forms whose maximum has pointed linearity domains."""
    k = draw(st.integers(max(k_min, n + 1), k_max))
    forms = [AffineForm(tuple(draw(small_int) for _ in range(n)), draw(small_q)) for _ in range(k)]
    from polyma.geom import rank

    diffs = [tuple(a - b for a, b in zip(f.linear, forms[0].linear)) for f in forms[1:]]
    assume(rank(diffs) == n)
    try:
        C = max_domains(forms)
    except Exception:
        assume(False)
    return forms, C


# ---------------------------------------------------------------------------
# refinements


def subdivide1(s: BalancedSpace, point) -> BalancedSpace:
    """Insert a vertex at ``point`` on an edge of a one-dimensional space."""
    c = s.complex
    x = rvec(point)
    cells, wc = [], []
    for m in c.maximal_faces:
        P = c.polyhedron(m)
        w = s.top_weight[m]
        if P.in_relint(x):
            if P.is_bounded:
                p, q = P.vertices
                parts = [Polyhedron([p, x]), Polyhedron([x, q])]
            else:
                (p,) = P.vertices
                parts = [Polyhedron([p, x]), Polyhedron([x], P.rays)]
        else:
            parts = [P]
        for Q in parts:
            cells.append(Q)
            wc.append((Q, w))
    return _space_from_cells(c.ambient_dim, cells, wc, name=c.name)


@st.composite
def refinement1(draw, s: BalancedSpace):
    c = s.complex
    m = draw(st.sampled_from(sorted(c.maximal_faces)))
    P = c.polyhedron(m)
    t = draw(st.sampled_from([Fraction(1, 3), Fraction(1, 2), Fraction(3, 4)]))
    if P.is_bounded:
        p, q = P.vertices
        x = vadd(p, vscale(t, tuple(b - a for a, b in zip(p, q))))
    else:
        x = vadd(P.vertices[0], vscale(4 * t, rvec(P.rays[0])))
    return subdivide1(s, x)


def add_ray2(s: BalancedSpace, m: int) -> BalancedSpace:
    """Split the cone ``m`` of a planar fan along the sum of its rays."""
    c = s.complex
    cells = []
    for f in c.maximal_faces:
        P = c.polyhedron(f)
        if f == m:
            r1, r2 = P.rays
            mid = primitive(vadd(r1, r2))
            cells += [Polyhedron(P.vertices, [r1, mid]), Polyhedron(P.vertices, [mid, r2])]
        else:
            cells.append(P)
    return _space_from_cells(2, cells, name=c.name)


@st.composite
def refinement2(draw, s: BalancedSpace):
    m = draw(st.sampled_from(sorted(s.complex.maximal_faces)))
    return add_ray2(s, m)
