"""The one-dimensional theory: Laplacian, Monge-Ampère solver, envelope and smoothness.

Functions here live on a one-dimensional complex (a metric graph with
unbounded legs).  :class:`PQFunction` is quadratic on bounded edges and affine
on unbounded ones.  Bounded edges are oriented from the endpoint with the lower
point id to the higher one, and positions along an edge are measured in
lattice length.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .complex import BalancedSpace, Complex
from .errors import (
    BadParameter,
    DimensionNotOne,
    Disconnected,
    Infeasible,
    InvalidFunction,
    MassMismatch,
    NotACompetitor,
    NotARefinement,
    NotBoundedPerturbation,
    NotPositiveAtInfinity,
)
from .geom import AffineForm, lp_solve, rank, rvec, segment_length, snf, solve_linear, to_rational
from .pafun import (
    AtomicMeasure,
    Convex,
    PAFunction,
    Witness,
    align,
    growth_check,
    is_papc,
    local_cycle_rays,
    ma_poly,
    positive_at_infinity,
    rebase,
)


def _require_dim1(c: Complex) -> None:
    if c.dim != 1:
        raise DimensionNotOne(f"complex has dimension {c.dim}")


def _endpoints(c: Complex, eid: int) -> tuple[int, int]:
    a, b = sorted(c.face(eid).vertices)
    return a, b


def _length(c: Complex, eid: int) -> Fraction:
    a, b = _endpoints(c, eid)
    return segment_length(c.points[a], c.points[b])


# ---------------------------------------------------------------------------
# measures


class Measure1D:
    """Atoms at vertices plus a constant density (per lattice length) on bounded edges."""

    __slots__ = ("atoms", "densities")

    def __init__(self, atoms: dict | None = None, densities: dict | None = None):
        self.atoms = AtomicMeasure(atoms).atoms
        self.densities = {int(e): to_rational(v) for e, v in sorted((densities or {}).items())
                          if to_rational(v) != 0}

    def __repr__(self):
        return f"Measure1D(atoms={self.atoms}, densities={self.densities})"

    def __eq__(self, other):
        if not isinstance(other, Measure1D):
            return NotImplemented
        return self.atoms == other.atoms and self.densities == other.densities

    __hash__ = None

    def total_mass(self, c: Complex) -> Fraction:
        return sum(self.atoms.values(), Fraction(0)) + sum(
            (v * _length(c, e) for e, v in self.densities.items()), Fraction(0))

    def is_nonnegative(self) -> bool:
        return all(m >= 0 for m in self.atoms.values()) and all(v >= 0 for v in self.densities.values())

    @property
    def atomic(self) -> AtomicMeasure:
        return AtomicMeasure(self.atoms)

    @classmethod
    def from_atomic(cls, mu: AtomicMeasure) -> "Measure1D":
        return cls(mu.atoms, {})

    def integrate(self, f, c: Complex) -> Fraction:
        """Exact integral of a PA or PQ function on ``c`` against this measure."""
        f = _as_pq(f)
        pt = {p: i for i, p in enumerate(c.points)}
        tot = sum((m * f.values[pt[p]] for p, m in self.atoms.items()), Fraction(0))
        for e, rho in self.densities.items():
            v, _ = _endpoints(c, e)
            L = _length(c, e)
            val, a, q = f.coefficients(e, v)
            tot += rho * (val * L + a * L * L / 2 + q * L * L * L / 3)
        return tot


# ---------------------------------------------------------------------------
# piecewise quadratic functions


class PQFunction:
    """Quadratic on bounded edges, affine on unbounded edges.

    ``values`` maps point ids to values, ``edges`` maps a bounded edge to
    ``(slope, quad)`` read from its lower endpoint so that
    ``f = value + slope t + quad t^2`` for ``t`` in ``[0, length]``, and
    ``rays`` maps an unbounded edge to its slope along the primitive ray.
    """

    __slots__ = ("carrier", "values", "edges", "rays")

    def __init__(self, carrier: Complex, values: dict, edges: dict, rays: dict):
        _require_dim1(carrier)
        self.carrier = carrier
        self.values = {int(k): to_rational(v) for k, v in values.items()}
        self.edges = {int(k): (to_rational(a), to_rational(q)) for k, (a, q) in edges.items()}
        self.rays = {int(k): to_rational(v) for k, v in rays.items()}

    def __repr__(self):
        return f"PQFunction(values={self.values}, edges={self.edges}, rays={self.rays})"

    def validate(self) -> None:
        c = self.carrier
        if set(self.values) != set(c.vertex_face):
            raise InvalidFunction("values must be given at every vertex")
        for e in c.faces_of_dim(1):
            if e.is_bounded:
                if e.id not in self.edges:
                    raise InvalidFunction(f"missing data on edge {e.id}")
                v, w = _endpoints(c, e.id)
                a, q = self.edges[e.id]
                L = _length(c, e.id)
                if self.values[v] + a * L + q * L * L != self.values[w]:
                    raise InvalidFunction(f"discontinuity on edge {e.id}")
            elif e.id not in self.rays:
                raise InvalidFunction(f"missing slope on unbounded edge {e.id}")

    def coefficients(self, eid: int, start: int) -> tuple[Fraction, Fraction, Fraction]:
        """``(value, slope, quad)`` on a bounded edge parametrized from ``start``."""
        v, w = _endpoints(self.carrier, eid)
        a, q = self.edges[eid]
        if start == v:
            return self.values[v], a, q
        if start != w:
            raise BadParameter(f"point {start} is not an endpoint of edge {eid}")
        L = _length(self.carrier, eid)
        return self.values[w], -(a + 2 * q * L), q

    def outgoing_slope(self, eid: int, pid: int) -> Fraction:
        if eid in self.rays:
            return self.rays[eid]
        return self.coefficients(eid, pid)[1]

    def __call__(self, x: Sequence) -> Fraction:
        c = self.carrier
        x = rvec(x)
        fid = c.locate(x)
        f = c.face(fid)
        if f.dim == 0:
            return self.values[next(iter(f.vertices))]
        if f.is_bounded:
            v, _ = _endpoints(c, fid)
            t = segment_length(c.points[v], x)
            val, a, q = self.coefficients(fid, v)
            return val + a * t + q * t * t
        (v,) = f.vertices
        return self.values[v] + self.rays[fid] * segment_length(c.points[v], x)

    def is_affine(self) -> bool:
        return all(q == 0 for _, q in self.edges.values())

    def to_pa(self) -> PAFunction:
        if not self.is_affine():
            raise InvalidFunction("function is not piecewise affine")
        c = self.carrier
        pt = {p: i for i, p in enumerate(c.points)}
        rslope = {}
        for eid, s in self.rays.items():
            rslope[eid] = s
        return PAFunction.from_data(c, lambda p: self.values[pt[rvec(p)]], lambda m, r: rslope[m])

    @classmethod
    def from_pa(cls, f: PAFunction) -> "PQFunction":
        c = f.carrier
        _require_dim1(c)
        values = {p: f.value_at_vertex(p) for p in c.vertex_face}
        edges, rays = {}, {}
        for e in c.faces_of_dim(1):
            if e.is_bounded:
                v, w = _endpoints(c, e.id)
                edges[e.id] = ((values[w] - values[v]) / _length(c, e.id), Fraction(0))
            else:
                (r,) = c.face_rays(e.id)
                rays[e.id] = f.form(e.id).slope(r)
        return cls(c, values, edges, rays)

    def equals(self, other: "PQFunction") -> bool:
        return (self.carrier is other.carrier and self.values == other.values
                and self.edges == other.edges and self.rays == other.rays)

    def samples(self, per_edge: int = 8, ray_length=1) -> list[tuple]:
        """Points ``(edge id, point, value)`` along every edge, for plotting."""
        c = self.carrier
        out = []
        for e in c.faces_of_dim(1):
            if e.is_bounded:
                v, w = _endpoints(c, e.id)
                P, Q = c.points[v], c.points[w]
                for i in range(per_edge + 1):
                    t = Fraction(i, per_edge)
                    x = tuple(p + t * (q - p) for p, q in zip(P, Q))
                    out.append((e.id, x, self(x)))
            else:
                (v,) = e.vertices
                (r,) = c.face_rays(e.id)
                for i in range(per_edge + 1):
                    t = Fraction(i * to_rational(ray_length), per_edge)
                    x = tuple(p + t * q for p, q in zip(c.points[v], r))
                    out.append((e.id, x, self(x)))
        return out


def _as_pq(f) -> PQFunction:
    return f if isinstance(f, PQFunction) else PQFunction.from_pa(f)


# ---------------------------------------------------------------------------
# Laplacian


def laplacian(f, s: BalancedSpace) -> Measure1D:
    """Edge densities ``[X](e) 2 quad`` and vertex atoms ``sum_e [X](e) outgoing slope``."""
    _require_dim1(s.complex)
    if isinstance(f, PAFunction):
        f, X = align(f, space=s)
        f = PQFunction.from_pa(f)
        w = X.values
    else:
        if f.carrier is not s.complex:
            raise NotARefinement("a piecewise quadratic function must live on the space's complex")
        w = s.top_weight
    c = f.carrier
    dens = {}
    atoms = {}
    for e in c.faces_of_dim(1):
        we = w.get(e.id, Fraction(0))
        if not we:
            continue
        if e.is_bounded:
            dens[e.id] = we * 2 * f.edges[e.id][1]
        for v in e.vertices:
            atoms[c.points[v]] = atoms.get(c.points[v], Fraction(0)) + we * f.outgoing_slope(e.id, v)
    return Measure1D(atoms, dens)


# ---------------------------------------------------------------------------
# convexity on slope data


def _pq_convexity(f: PQFunction):
    c = f.carrier
    for eid, (_, q) in sorted(f.edges.items()):
        if q < 0:
            return Witness(eid, "negative second derivative on an edge")
    for pid, vf in sorted(c.vertex_face.items()):
        for cyc in local_cycle_rays(c, vf):
            p = sum((w * f.outgoing_slope(e, pid) for e, w in cyc.items()), Fraction(0))
            if p < 0:
                return Witness(vf, "local cycle with negative pairing", dict(cyc), p)
    return Convex()


def is_pc(f) -> Convex | Witness:
    """Convexity of a piecewise quadratic function on a one-dimensional carrier."""
    return _pq_convexity(_as_pq(f))


def _components(c: Complex) -> int:
    adj: dict = {p: set() for p in c.vertex_face}
    for e in c.bounded_edges():
        a, b = _endpoints(c, e)
        adj[a].add(b)
        adj[b].add(a)
    seen, comps = set(), 0
    for p in adj:
        if p in seen:
            continue
        comps += 1
        queue = deque([p])
        seen.add(p)
        while queue:
            q = queue.popleft()
            for r in adj[q] - seen:
                seen.add(r)
                queue.append(r)
    return comps


# ---------------------------------------------------------------------------
# Monge-Ampère solver


def solve_ma1(s: BalancedSpace, gamma: PAFunction, mu: Measure1D, basepoint: Sequence):
    """Solve ``laplacian(phi) = mu`` with the slopes of ``gamma`` at infinity.

    Returns ``(phi, pc_status)`` with ``phi(basepoint) = 0``.
    """
    c = s.complex
    _require_dim1(c)
    try:
        g = rebase(gamma, c)
    except NotARefinement as exc:
        raise NotARefinement("gamma must be carried by a coarsening of the space's complex") from exc
    if _components(c) != 1:
        raise Disconnected("the complex is not connected")
    if not positive_at_infinity(g):
        raise NotPositiveAtInfinity("gamma is not positive at infinity")
    pid_of = {p: i for i, p in enumerate(c.points)}
    for p in mu.atoms:
        if p not in pid_of or pid_of[p] not in c.vertex_face:
            raise BadParameter(f"atom at {tuple(str(x) for x in p)} is not a vertex of the complex")
    bounded = set(c.bounded_edges())
    for e in mu.densities:
        if e not in bounded:
            raise BadParameter(f"density given on face {e}, which is not a bounded edge")
    deg = ma_poly([g], s).total
    if mu.total_mass(c) != deg:
        raise MassMismatch(f"total mass {mu.total_mass(c)} differs from deg(gamma) = {deg}")
    w = s.top_weight
    verts = sorted(c.vertex_face)
    idx = {p: i for i, p in enumerate(verts)}
    n = len(verts)
    A = [[Fraction(0)] * n for _ in range(n)]
    b = [mu.atoms.get(c.points[p], Fraction(0)) for p in verts]
    quad, ray_slopes = {}, {}
    for e in c.faces_of_dim(1):
        we = w.get(e.id, Fraction(0))
        if e.is_bounded:
            v, u = _endpoints(c, e.id)
            L = _length(c, e.id)
            dens = mu.densities.get(e.id, Fraction(0))
            if dens and not we:
                raise BadParameter(f"density on edge {e.id} of weight zero")
            quad[e.id] = dens / (2 * we) if we else Fraction(0)
            for x, y in ((v, u), (u, v)):
                A[idx[x]][idx[x]] -= we / L
                A[idx[x]][idx[y]] += we / L
                b[idx[x]] += dens * L / 2
        else:
            (v,) = e.vertices
            (r,) = c.face_rays(e.id)
            sl = g.form(e.id).slope(r)
            ray_slopes[e.id] = sl
            b[idx[v]] -= we * sl
    # pin the first vertex to 0, then shift so that phi(basepoint) = 0
    rows = [row[1:] for row in A]
    sol = solve_linear(rows, b)
    if sol is None:
        raise Infeasible("the Laplacian system has no solution")
    vals = {verts[0]: Fraction(0)}
    vals.update({verts[i + 1]: sol[i] for i in range(n - 1)})
    edges = {}
    for eid, q in quad.items():
        v, u = _endpoints(c, eid)
        L = _length(c, eid)
        edges[eid] = ((vals[u] - vals[v]) / L - q * L, q)
    phi = PQFunction(c, vals, edges, ray_slopes)
    shift = phi(basepoint)
    phi = PQFunction(c, {p: x - shift for p, x in vals.items()}, edges, ray_slopes)
    return phi, _pq_convexity(phi)


# ---------------------------------------------------------------------------
# envelope


def envelope1(s: BalancedSpace, gamma: PAFunction, u: PAFunction) -> PAFunction:
    """The largest convex function below ``gamma + u`` with the growth of ``gamma``.

    Solved as one linear program in the vertex values and the slopes on
    unbounded edges, maximizing the sum of vertex values.
    """
    _require_dim1(s.complex)
    g, uu = align(gamma, u, space=s)[:2]
    if not uu.is_bounded:
        raise NotBoundedPerturbation("u must have zero slope on every unbounded face")
    c = g.carrier
    obst = g + uu
    verts = sorted(c.vertex_face)
    unb = [e.id for e in c.faces_of_dim(1) if not e.is_bounded]
    var = {("x", p): i for i, p in enumerate(verts)}
    for j, e in enumerate(unb):
        var[("s", e)] = len(verts) + j
    nv = len(var)

    def form(coeffs: dict, const=0) -> AffineForm:
        lin = [Fraction(0)] * nv
        for k, a in coeffs.items():
            lin[var[k]] += a
        return AffineForm(tuple(lin), const)

    gslope = {}
    for e in unb:
        (r,) = c.face_rays(e)
        gslope[e] = g.form(e).slope(r)
    cons = []
    for p in verts:
        cons.append((form({("x", p): 1}, -obst.value_at_vertex(p)), "<="))
    for e in unb:
        cons.append((form({("s", e): 1}, -gslope[e]), "<="))

    def outgoing(e: int, p: int) -> dict:
        if e in gslope:
            return {("s", e): Fraction(1)}
        a, b = _endpoints(c, e)
        other = b if p == a else a
        L = _length(c, e)
        return {("x", other): 1 / L, ("x", p): -1 / L}

    for p in verts:
        vf = c.vertex_face[p]
        for cyc in local_cycle_rays(c, vf):
            tot: dict = {}
            for e, w in cyc.items():
                for k, a in outgoing(e, p).items():
                    tot[k] = tot.get(k, Fraction(0)) + w * a
            cons.append((form(tot), ">="))
    res = lp_solve(form({("x", p): 1 for p in verts}), cons, "max")
    if res.status != "optimal":
        raise Infeasible(f"envelope program is {res.status}")
    vals = {c.points[p]: res.point[var[("x", p)]] for p in verts}
    return PAFunction.from_data(c, lambda q: vals[rvec(q)], lambda m, r: gslope[m])


# ---------------------------------------------------------------------------
# smoothness


@dataclass(frozen=True)
class Smooth:
    def __bool__(self):
        return True

    def __str__(self):
        return "Smooth"


@dataclass(frozen=True)
class Singular:
    reason: str

    def __bool__(self):
        return False

    def __str__(self):
        return f"Singular({self.reason})"


def is_poly_smooth(s: BalancedSpace | Complex, pi: Complex | None = None) -> dict:
    """Per point id: :class:`Smooth` or :class:`Singular` with the failing condition."""
    c = pi if pi is not None else (s.complex if isinstance(s, BalancedSpace) else s)
    _require_dim1(c)
    out = {}
    for pid, vf in sorted(c.vertex_face.items()):
        dirs = [c.normal(e, vf) for e in sorted(c.cofacets(vf))]
        val = len(dirs)
        r = rank(dirs) if dirs else 0
        if r != val - 1:
            out[pid] = Singular(f"rank {r} differs from valence {val} minus one")
            continue
        divs = [d for d in snf([list(d) for d in dirs]) if d] if dirs else []
        if any(d != 1 for d in divs):
            out[pid] = Singular(f"span is not saturated (elementary divisors {divs})")
        else:
            out[pid] = Smooth()
    return out


# ---------------------------------------------------------------------------
# orthogonality


def ortho_check(s: BalancedSpace, gamma: PAFunction, u: PAFunction, P: PAFunction) -> tuple[Fraction, bool]:
    """``∫ (P - gamma - u) MA(P)`` after checking that ``P`` competes for the envelope.

    Works in any dimension.  Raises :class:`NotACompetitor` naming the failed
    condition when ``P`` is not convex, not below ``gamma + u`` or not of the
    growth of ``gamma``.
    """
    g, uu, PP = align(gamma, u, P, space=s)[:3]
    c = g.carrier
    if not is_papc(PP, "dual_cycles"):
        raise NotACompetitor("P is not convex")
    if not growth_check(PP, g):
        raise NotACompetitor("P does not have the growth of gamma")
    diff = PP - g - uu
    for p in c.vertex_face:
        if diff.value_at_vertex(p) > 0:
            raise NotACompetitor(f"P exceeds gamma + u at {tuple(str(x) for x in c.points[p])}")
    for m in c.maximal_faces:
        for r in c.face_rays(m):
            if diff.form(m).slope(r) > 0:
                raise NotACompetitor(f"P eventually exceeds gamma + u on face {m}")
    mu = ma_poly([PP] * s.d, s)
    return mu.integrate(diff), True


__all__ = [
    "Measure1D",
    "PQFunction",
    "Singular",
    "Smooth",
    "envelope1",
    "is_pc",
    "is_poly_smooth",
    "laplacian",
    "ortho_check",
    "solve_ma1",
]
