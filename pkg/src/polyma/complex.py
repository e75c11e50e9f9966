"""Rational polyhedral complexes stored by generator subsets.

A :class:`Complex` owns a pool of points and a pool of primitive rays; each face
lists the ids of the points and rays that generate it.  Faces are pointed
polyhedra, so the irredundant generators of a face determine it uniquely and
``tau`` is a face of ``sigma`` exactly when its generator sets are contained in
those of ``sigma``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    InvalidComplex,
    NotSimplicial,
    PointOutsideSupport,
    SupportsDiffer,
)
from .geom import (
    EmptyPolyhedron,
    Polyhedron,
    is_zero,
    ivec,
    normal_vector,
    primitive,
    rank,
    rvec,
    solve_linear,
    to_rational,
    vadd,
    vscale,
    vsub,
)


@dataclass(frozen=True)
class Face:
    id: int
    vertices: frozenset
    rays: frozenset
    dim: int

    @property
    def is_bounded(self) -> bool:
        return not self.rays


@dataclass(frozen=True)
class Violation:
    kind: str
    faces: tuple
    message: str

    def __str__(self):
        return f"{self.kind} {list(self.faces)}: {self.message}"


class Complex:
    """A finite polyhedral complex in ``Q^n``.

    Instances are treated as immutable; caches are filled lazily and identity
    is object identity.
    """

    def __init__(self, ambient_dim: int, points: Sequence[Sequence], rays: Sequence[Sequence],
                 faces: Iterable[tuple], name: str | None = None):
        self.ambient_dim = int(ambient_dim)
        self.points = tuple(rvec(p) for p in points)
        self.rays = tuple(ivec(r) for r in rays)
        self.name = name
        for p in self.points:
            if len(p) != self.ambient_dim:
                raise InvalidComplex("point of wrong length")
        for r in self.rays:
            if len(r) != self.ambient_dim:
                raise InvalidComplex("ray of wrong length")
            if is_zero(r):
                raise InvalidComplex("zero ray")
        built = []
        seen_ids = set()
        for fid, vids, rids in faces:
            fid = int(fid)
            if fid in seen_ids:
                raise InvalidComplex(f"duplicate face id {fid}")
            seen_ids.add(fid)
            vids = frozenset(int(v) for v in vids)
            rids = frozenset(int(r) for r in rids)
            if not vids:
                raise InvalidComplex(f"face {fid} has no vertex")
            if any(v < 0 or v >= len(self.points) for v in vids) or any(
                    r < 0 or r >= len(self.rays) for r in rids):
                raise InvalidComplex(f"face {fid} refers to an unknown generator")
            built.append(Face(fid, vids, rids, self._dim_of(vids, rids)))
        built.sort(key=lambda f: f.id)
        self.faces = tuple(built)
        self._by_id = {f.id: f for f in self.faces}
        self._poly: dict = {}
        self._normals: dict = {}
        self._cache: dict = {}

    # -- construction -------------------------------------------------------

    @classmethod
    def from_cells(cls, ambient_dim: int, cells: Iterable, name: str | None = None) -> "Complex":
        """Close a collection of cells under taking faces and number the result.

        ``cells`` holds :class:`Polyhedron` objects or ``(vertices, rays)`` pairs.
        Face ids are assigned by dimension, then by generator ids, with points
        and rays of the pools sorted lexicographically.
        """
        facesets = set()
        for cell in cells:
            P = cell if isinstance(cell, Polyhedron) else Polyhedron(cell[0], cell[1])
            P = P.irredundant()
            if not P.is_pointed:
                raise InvalidComplex("cells must be pointed polyhedra")
            for vi, ri in P.face_index_sets():
                facesets.add((frozenset(P.vertices[i] for i in vi), frozenset(P.rays[j] for j in ri)))
        points = sorted(set(itertools.chain.from_iterable(f[0] for f in facesets)))
        rays = sorted(set(itertools.chain.from_iterable(f[1] for f in facesets)))
        pid = {p: i for i, p in enumerate(points)}
        rid = {r: i for i, r in enumerate(rays)}
        tmp = cls(ambient_dim, points, rays, [], name=name)
        keyed = []
        for V, R in facesets:
            vids = frozenset(pid[p] for p in V)
            rids = frozenset(rid[r] for r in R)
            keyed.append((tmp._dim_of(vids, rids), sorted(vids), sorted(rids), vids, rids))
        keyed.sort(key=lambda t: (t[0], t[1], t[2]))
        faces = [(i, t[3], t[4]) for i, t in enumerate(keyed)]
        return cls(ambient_dim, points, rays, faces, name=name)

    def _dim_of(self, vids, rids) -> int:
        vs = [self.points[i] for i in sorted(vids)]
        dirs = [vsub(v, vs[0]) for v in vs[1:]] + [rvec(self.rays[j]) for j in sorted(rids)]
        return rank(dirs)

    # -- basic access -------------------------------------------------------

    def __repr__(self):
        return (f"Complex(dim={self.dim}, ambient_dim={self.ambient_dim}, "
                f"points={len(self.points)}, rays={len(self.rays)}, faces={len(self.faces)})")

    def face(self, fid: int) -> Face:
        return self._by_id[fid]

    @property
    def ids(self) -> list:
        return [f.id for f in self.faces]

    @property
    def dim(self) -> int:
        return max((f.dim for f in self.faces), default=-1)

    def faces_of_dim(self, k: int) -> list[Face]:
        return [f for f in self.faces if f.dim == k]

    def polyhedron(self, fid: int) -> Polyhedron:
        P = self._poly.get(fid)
        if P is None:
            f = self._by_id[fid]
            P = Polyhedron([self.points[i] for i in sorted(f.vertices)],
                           [self.rays[j] for j in sorted(f.rays)])
            self._poly[fid] = P
        return P

    def face_points(self, fid: int) -> list:
        return [self.points[i] for i in sorted(self._by_id[fid].vertices)]

    def face_rays(self, fid: int) -> list:
        return [self.rays[j] for j in sorted(self._by_id[fid].rays)]

    def is_face_of(self, tau: int, sigma: int) -> bool:
        """``tau ⪯ sigma`` (reflexive)."""
        t, s = self._by_id[tau], self._by_id[sigma]
        return t.vertices <= s.vertices and t.rays <= s.rays

    def _incidence(self):
        if "up" not in self._cache:
            up = {f.id: [] for f in self.faces}
            down = {f.id: [] for f in self.faces}
            for t in self.faces:
                for s in self.faces:
                    if t.id != s.id and t.dim < s.dim and t.vertices <= s.vertices and t.rays <= s.rays:
                        up[t.id].append(s.id)
                        down[s.id].append(t.id)
            self._cache["up"] = up
            self._cache["down"] = down
        return self._cache["up"], self._cache["down"]

    def cofaces(self, tau: int) -> list[int]:
        """Faces strictly containing ``tau``."""
        return self._incidence()[0][tau]

    def subfaces(self, sigma: int) -> list[int]:
        """Faces strictly contained in ``sigma``."""
        return self._incidence()[1][sigma]

    def cofacets(self, tau: int) -> list[int]:
        d = self._by_id[tau].dim
        return [s for s in self.cofaces(tau) if self._by_id[s].dim == d + 1]

    def facets(self, sigma: int) -> list[int]:
        d = self._by_id[sigma].dim
        return [t for t in self.subfaces(sigma) if self._by_id[t].dim == d - 1]

    @property
    def maximal_faces(self) -> list[int]:
        up, _ = self._incidence()
        return [f.id for f in self.faces if not up[f.id]]

    @property
    def is_pure(self) -> bool:
        d = self.dim
        return all(self._by_id[m].dim == d for m in self.maximal_faces)

    @property
    def vertex_face(self) -> dict:
        """Map from point id to the id of the 0-dimensional face at that point."""
        if "vface" not in self._cache:
            self._cache["vface"] = {next(iter(f.vertices)): f.id for f in self.faces if f.dim == 0}
        return self._cache["vface"]

    def normal(self, sigma: int, tau: int) -> tuple:
        key = (sigma, tau)
        n = self._normals.get(key)
        if n is None:
            n = normal_vector(self.polyhedron(sigma), self.polyhedron(tau))
            self._normals[key] = n
        return n

    def locate(self, x: Sequence) -> int:
        """Id of the unique face whose relative interior contains ``x``."""
        x = rvec(x)
        best = None
        for f in self.faces:
            if best is not None and f.dim >= best.dim:
                continue
            if self.polyhedron(f.id).contains(x):
                best = f
        if best is None:
            raise PointOutsideSupport(f"{tuple(str(c) for c in x)} is not in the support")
        return best.id

    def contains_point(self, x: Sequence) -> bool:
        try:
            self.locate(x)
            return True
        except PointOutsideSupport:
            return False

    def face_key(self, fid: int):
        """Geometric identity of a face: its generator point set and ray set."""
        f = self._by_id[fid]
        return (frozenset(self.points[i] for i in f.vertices), frozenset(self.rays[j] for j in f.rays))

    def same_as(self, other: "Complex") -> bool:
        """Equal face sets, ignoring ids."""
        return {self.face_key(f.id) for f in self.faces} == {other.face_key(f.id) for f in other.faces}

    def face_by_key(self, key):
        if "bykey" not in self._cache:
            self._cache["bykey"] = {self.face_key(f.id): f.id for f in self.faces}
        return self._cache["bykey"].get(key)

    @property
    def is_simplicial(self) -> bool:
        return all(len(f.vertices) + len(f.rays) - 1 == f.dim for f in self.faces)

    def bounded_edges(self) -> list[int]:
        return [f.id for f in self.faces if f.dim == 1 and f.is_bounded]

    def unbounded_faces(self) -> list[int]:
        return [f.id for f in self.faces if not f.is_bounded]

    def carrier_of(self, P: Polyhedron) -> int:
        """Smallest face containing the polyhedron ``P`` (by locating a relative interior point)."""
        return self.locate(P.relint_point)


@dataclass
class BalancedSpace:
    """A pure complex with a strictly positive balanced top weight."""

    complex: Complex
    top_weight: dict
    d: int = field(default=-1)

    def __post_init__(self):
        self.top_weight = {int(k): to_rational(v) for k, v in self.top_weight.items()}
        if self.d < 0:
            self.d = self.complex.dim

    @classmethod
    def unit(cls, c: Complex) -> "BalancedSpace":
        return cls(c, {f.id: Fraction(1) for f in c.faces_of_dim(c.dim)}, c.dim)

    def problems(self) -> list[str]:
        """Reasons the data fail to be a balanced space (empty when valid)."""
        from .cycles import Weight, check_balanced

        out = [str(v) for v in validate_complex(self.complex)]
        if out:
            return out
        c = self.complex
        if not c.is_pure or c.dim != self.d:
            out.append("complex is not pure of the stated dimension")
        for f in c.faces_of_dim(self.d):
            if self.top_weight.get(f.id, 0) <= 0:
                out.append(f"top weight of face {f.id} is not positive")
        for k in self.top_weight:
            if k not in c._by_id or c.face(k).dim != self.d:
                out.append(f"weight on face {k} which is not a top face")
        if not out:
            for tau, s in check_balanced(c, Weight(c, self.d, self.top_weight)):
                out.append(f"balancing fails at face {tau}: defect {tuple(str(x) for x in s)}")
        return out

    def validate(self) -> "BalancedSpace":
        probs = self.problems()
        if probs:
            raise InvalidComplex("; ".join(probs))
        return self

    @property
    def weight(self):
        from .cycles import Weight

        return Weight(self.complex, self.d, dict(self.top_weight))


@dataclass(frozen=True)
class StarFan:
    """The cones ``C_{sigma/tau}`` at a point ``x`` in the relative interior of ``tau``."""

    base_point: tuple
    base_face: int
    cones: tuple  # of (Polyhedron, origin face id)
    weights: dict

    def cone_of(self, origin: int) -> Polyhedron:
        for C, o in self.cones:
            if o == origin:
                return C
        raise KeyError(origin)


# ---------------------------------------------------------------------------
# validation


def validate_complex(c: Complex) -> list[Violation]:
    """Face-closure and intersection checks.  An empty list means valid."""
    out: list[Violation] = []
    keys = {}
    for f in c.faces:
        P = c.polyhedron(f.id)
        try:
            irr = P.irredundant()
        except EmptyPolyhedron:  # pragma: no cover - generators are never empty
            out.append(Violation("Empty", (f.id,), "face is empty"))
            continue
        if not irr.is_pointed:
            out.append(Violation("NotPointed", (f.id,), "face contains a line"))
            continue
        if set(irr.vertices) != set(P.vertices) or set(irr.rays) != set(P.rays):
            out.append(Violation("RedundantGenerators", (f.id,),
                                 "listed generators are not the vertices and extreme rays"))
            continue
        key = c.face_key(f.id)
        if key in keys:
            out.append(Violation("Duplicate", (keys[key], f.id), "the same face is listed twice"))
        keys[key] = f.id
    if out:
        return out
    for f in c.faces:
        P = c.polyhedron(f.id)
        for vi, ri in P.face_index_sets():
            k = (frozenset(P.vertices[i] for i in vi), frozenset(P.rays[j] for j in ri))
            if k not in keys:
                out.append(Violation("MissingFace", (f.id,),
                                     f"a face with {len(vi)} vertices and {len(ri)} rays is not listed"))
    if out:
        return out
    maxi = c.maximal_faces
    for a, b in itertools.combinations(maxi, 2):
        I = c.polyhedron(a).intersection(c.polyhedron(b))
        if I is None:
            continue
        k = (frozenset(I.vertices), frozenset(I.rays))
        g = keys.get(k)
        if g is None or not (c.is_face_of(g, a) and c.is_face_of(g, b)):
            out.append(Violation("BadIntersection", (a, b), "intersection is not a common face"))
    return out


def is_valid(c: Complex) -> bool:
    return not validate_complex(c)


# ---------------------------------------------------------------------------
# refinements


def _covers(sigma: Polyhedron, pieces: list[Polyhedron]) -> bool:
    """Whether full-dimensional ``pieces`` (which meet face to face) cover ``sigma``."""
    k = sigma.dim
    full = [p for p in pieces if p.dim == k]
    if not full:
        return False
    if k == 0:
        return True
    ineqs = sigma.hrep.inequalities
    count: dict = {}
    boundary = set()
    for P in full:
        for f in P.hrep.inequalities:
            V = frozenset(v for v in P.vertices if f(v) == 0)
            R = frozenset(r for r in P.rays if f.slope(r) == 0)
            key = (V, R)
            count[key] = count.get(key, 0) + 1
            if any(all(g(v) == 0 for v in V) and all(g.slope(r) == 0 for r in R) for g in ineqs):
                boundary.add(key)
    return all(n >= 2 or key in boundary for key, n in count.items())


def common_refinement(a: Complex, b: Complex) -> Complex:
    """All nonempty intersections of faces of ``a`` and ``b``, closed under faces."""
    if a.ambient_dim != b.ambient_dim:
        raise SupportsDiffer("ambient dimensions differ")
    pieces_a = {m: [] for m in a.maximal_faces}
    pieces_b = {m: [] for m in b.maximal_faces}
    cells = []
    for s in a.maximal_faces:
        Ps = a.polyhedron(s)
        for t in b.maximal_faces:
            I = Ps.intersection(b.polyhedron(t))
            if I is None:
                continue
            cells.append(I)
            pieces_a[s].append(I)
            pieces_b[t].append(I)
    for cpx, pieces in ((a, pieces_a), (b, pieces_b)):
        for m, ps in pieces.items():
            if not _covers(cpx.polyhedron(m), ps):
                raise SupportsDiffer(f"face {m} is not covered by the other complex")
    return Complex.from_cells(a.ambient_dim, cells)


def is_refinement(fine: Complex, coarse: Complex) -> bool:
    """Equal supports, and every face of ``fine`` lies in a face of ``coarse``.

    It suffices to test maximal faces of ``fine``: the pieces covering a
    maximal face of ``coarse`` are maximal in ``fine`` whenever ``fine``
    refines ``coarse``.
    """
    if fine is coarse:
        return True
    if fine.ambient_dim != coarse.ambient_dim:
        return False
    inside: dict = {m: [] for m in coarse.maximal_faces}
    cmax = [(m, coarse.polyhedron(m)) for m in coarse.maximal_faces]
    for f in fine.maximal_faces:
        P = fine.polyhedron(f)
        hosts = [m for m, Q in cmax if Q.contains_polyhedron(P)]
        if not hosts:
            return False
        for m in hosts:
            if P.dim == coarse.face(m).dim:
                inside[m].append(P)
    return all(_covers(coarse.polyhedron(m), ps) for m, ps in inside.items())


def carrier_map(fine: Complex, coarse: Complex) -> dict:
    """For each face of ``fine`` the smallest face of ``coarse`` containing it."""
    key = ("carrier", id(coarse))
    cached = fine._cache.get(key)
    if cached is not None and cached[0] is coarse:
        return cached[1]
    out = {}
    for f in fine.faces:
        out[f.id] = coarse.carrier_of(fine.polyhedron(f.id))
    fine._cache[key] = (coarse, out)
    return out


def simplicial_refinement(c: Complex) -> Complex:
    """Pulling refinement with generators ordered globally (points, then rays, lexicographically)."""
    if c.is_simplicial:
        return c
    n = c.ambient_dim
    order_pts = sorted(range(len(c.points)), key=lambda i: c.points[i])
    order_rays = sorted(range(len(c.rays)), key=lambda j: c.rays[j])
    rank_of = {("v", i): k for k, i in enumerate(order_pts)}
    rank_of.update({("r", j): len(order_pts) + k for k, j in enumerate(order_rays)})
    cells = []
    for m in c.maximal_faces:
        f = c.face(m)
        gens = [("v", i) for i in sorted(f.vertices)] + [("r", j) for j in sorted(f.rays)]
        vecs = [c.points[i] + (Fraction(1),) if t == "v" else rvec(c.rays[i]) + (Fraction(0),)
                for t, i in gens]
        from .geom import pulling_triangulation

        order = sorted(range(len(gens)), key=lambda k: rank_of[gens[k]])
        for S in pulling_triangulation(vecs, order):
            V = [c.points[gens[k][1]] for k in S if gens[k][0] == "v"]
            R = [c.rays[gens[k][1]] for k in S if gens[k][0] == "r"]
            cells.append(Polyhedron(V, R))
    return Complex.from_cells(n, cells)


# ---------------------------------------------------------------------------
# local structure


def _complex_of(s):
    return s.complex if isinstance(s, BalancedSpace) else s


def star(s, x: Sequence) -> StarFan:
    """Star of the complex at ``x``: one cone ``C_{sigma/tau}`` per face ``sigma ⪰ tau``."""
    c = _complex_of(s)
    x = rvec(x)
    tau = c.locate(x)
    Nt = c.polyhedron(tau).lattice
    lin = []
    for b in Nt.basis:
        lin.append(b)
        lin.append(tuple(-v for v in b))
    cones = []
    weights = {}
    top = s.top_weight if isinstance(s, BalancedSpace) else {}
    origin = (Fraction(0),) * c.ambient_dim
    for sigma in [tau] + sorted(c.cofaces(tau)):
        rays = [primitive(vsub(v, x)) for v in c.face_points(sigma) if vsub(v, x) != origin]
        rays += list(c.face_rays(sigma)) + lin
        C = Polyhedron([origin], rays).irredundant()
        cones.append((C, sigma))
        if sigma in top:
            weights[sigma] = top[sigma]
    return StarFan(x, tau, tuple(cones), weights)


def skeleton(c: Complex) -> Complex:
    """The subcomplex of bounded faces (ids preserved)."""
    return Complex(c.ambient_dim, c.points, c.rays,
                   [(f.id, f.vertices, ()) for f in c.faces if f.is_bounded])


def retract(c: Complex, x: Sequence) -> tuple:
    """Drop the ray part of ``x`` in the simplicial face containing it."""
    if not c.is_simplicial:
        raise NotSimplicial("retraction needs a simplicial complex")
    x = rvec(x)
    tau = c.locate(x)
    P = c.face_points(tau)
    R = c.face_rays(tau)
    n = c.ambient_dim
    A = [[p[i] for p in P] + [Fraction(r[i]) for r in R] for i in range(n)]
    A.append([Fraction(1)] * len(P) + [Fraction(0)] * len(R))
    sol = solve_linear(A, list(x) + [Fraction(1)])
    assert sol is not None
    out = (Fraction(0),) * n
    for th, p in zip(sol, P):
        out = vadd(out, vscale(th, p))
    return out


def recession_fan(c: Complex):
    """``(cones, is_fan)``: the distinct recession cones and whether they form a fan."""
    origin = (Fraction(0),) * c.ambient_dim
    sets = sorted({f.rays for f in c.faces}, key=lambda s: (len(s), sorted(s)))
    cones = [Polyhedron([origin], [c.rays[j] for j in sorted(rs)]) for rs in sets]
    fan = Complex(c.ambient_dim, [origin], c.rays,
                  [(i, (0,), rs) for i, rs in enumerate(sets)])
    return cones, not validate_complex(fan)
