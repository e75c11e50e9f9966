"""Piecewise affine functions, intersection products and Monge-Ampère measures.

A :class:`PAFunction` stores one ambient affine form per face of its carrier.
Forms on lower dimensional faces may be omitted; they are then taken from a
face containing them.  Integration against atomic measures, the energy
functional and the two convexity tests are built on the intersection product
:func:`intersect`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .complex import BalancedSpace, Complex, Violation, carrier_map, common_refinement, is_refinement, star
from .cycles import Weight, pullback
from .errors import (
    CarrierMismatch,
    InvalidComplex,
    InvalidFunction,
    NotARefinement,
    NotSimplicial,
    NotTopFace,
    PointOutsideSupport,
    UnboundedDifference,
    UnboundedIntegrand,
    WrongArity,
)
from .geom import (
    AffineForm,
    HRep,
    Polyhedron,
    _h_to_v_full,
    annihilator,
    clear_denominators,
    cone_dd,
    dot,
    lattice_volume,
    lp_solve,
    rvec,
    segment_length,
    solve_linear,
    to_rational,
    vadd,
    vscale,
    vsub,
)
from .errors import EmptyPolyhedron


# ---------------------------------------------------------------------------
# measures


class AtomicMeasure:
    """A finite signed combination of Dirac masses at rational points."""

    __slots__ = ("atoms",)

    def __init__(self, atoms: dict | None = None):
        out = {}
        for p, m in (atoms or {}).items():
            p, m = rvec(p), to_rational(m)
            out[p] = out.get(p, Fraction(0)) + m
        self.atoms = {p: m for p, m in sorted(out.items()) if m != 0}

    def __repr__(self):
        body = ", ".join(f"({','.join(str(c) for c in p)}): {m}" for p, m in self.atoms.items())
        return f"AtomicMeasure({{{body}}})"

    def __eq__(self, other):
        if not isinstance(other, AtomicMeasure):
            return NotImplemented
        return self.atoms == other.atoms

    __hash__ = None

    def __getitem__(self, p) -> Fraction:
        return self.atoms.get(rvec(p), Fraction(0))

    def __add__(self, other: "AtomicMeasure") -> "AtomicMeasure":
        out = dict(self.atoms)
        for p, m in other.atoms.items():
            out[p] = out.get(p, Fraction(0)) + m
        return AtomicMeasure(out)

    def __mul__(self, c) -> "AtomicMeasure":
        c = to_rational(c)
        return AtomicMeasure({p: c * m for p, m in self.atoms.items()})

    __rmul__ = __mul__

    def __sub__(self, other):
        return self + other * -1

    @property
    def total(self) -> Fraction:
        return sum(self.atoms.values(), Fraction(0))

    def integrate(self, f: Callable) -> Fraction:
        return sum((f(p) * m for p, m in self.atoms.items()), Fraction(0))

    def restrict(self, pred: Callable) -> "AtomicMeasure":
        return AtomicMeasure({p: m for p, m in self.atoms.items() if pred(p)})

    def is_nonnegative(self) -> bool:
        return all(m >= 0 for m in self.atoms.values())


# ---------------------------------------------------------------------------
# piecewise affine functions


class PAFunction:
    """A continuous function that is affine on every face of ``carrier``."""

    __slots__ = ("carrier", "forms", "_full")

    def __init__(self, carrier: Complex, forms: dict):
        self.carrier = carrier
        self.forms = {int(k): v for k, v in forms.items()}
        self._full: dict = {}

    def __repr__(self):
        return f"PAFunction(carrier={self.carrier!r}, explicit_forms={len(self.forms)})"

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_data(cls, carrier: Complex, value_at: Callable, slope_at: Callable) -> "PAFunction":
        """Build from values at points and slopes along rays.

        ``value_at(point)`` gives the value at a vertex and
        ``slope_at(face_id, ray)`` the slope along a ray of a maximal face.
        """
        n = carrier.ambient_dim
        forms = {}
        for m in carrier.maximal_faces:
            rows, rhs = [], []
            for v in carrier.face_points(m):
                rows.append(list(v) + [Fraction(1)])
                rhs.append(to_rational(value_at(v)))
            for r in carrier.face_rays(m):
                rows.append([Fraction(x) for x in r] + [Fraction(0)])
                rhs.append(to_rational(slope_at(m, r)))
            sol = solve_linear(rows, rhs)
            if sol is None:
                raise InvalidFunction(f"data is not affine on face {m}")
            forms[m] = AffineForm(sol[:n], sol[n])
        return cls(carrier, forms)

    @classmethod
    def from_ambient(cls, carrier: Complex, fn: Callable) -> "PAFunction":
        """Restrict an ambient function that is affine on every face of ``carrier``."""

        def slope(m, r):
            v0 = carrier.face_points(m)[0]
            return to_rational(fn(vadd(v0, r))) - to_rational(fn(v0))

        f = cls.from_data(carrier, fn, slope)
        for m in carrier.maximal_faces:
            F = f.form(m)
            P = carrier.polyhedron(m)
            probes = [P.relint_point] + [vadd(v, r) for v in P.vertices for r in P.rays]
            for x in probes:
                if F(x) != to_rational(fn(x)):
                    raise InvalidFunction(f"function is not affine on face {m}")
        return f

    @classmethod
    def from_max(cls, carrier: Complex, forms: Sequence[AffineForm]) -> "PAFunction":
        forms = list(forms)
        return cls.from_ambient(carrier, lambda x: max(f(x) for f in forms))

    @classmethod
    def affine(cls, carrier: Complex, form: AffineForm) -> "PAFunction":
        return cls(carrier, {m: form for m in carrier.maximal_faces})

    @classmethod
    def constant(cls, carrier: Complex, c=0) -> "PAFunction":
        return cls.affine(carrier, AffineForm.const(carrier.ambient_dim, c))

    # -- access --------------------------------------------------------------

    def form(self, fid: int) -> AffineForm:
        F = self.forms.get(fid)
        if F is not None:
            return F
        F = self._full.get(fid)
        if F is None:
            for s in sorted(self.carrier.cofaces(fid)):
                if s in self.forms:
                    F = self.forms[s]
                    break
            if F is None:
                raise InvalidFunction(f"no form available on face {fid}")
            self._full[fid] = F
        return F

    def __call__(self, x: Sequence) -> Fraction:
        x = rvec(x)
        return self.form(self.carrier.locate(x))(x)

    def value_at_vertex(self, pid: int) -> Fraction:
        p = self.carrier.points[pid]
        return self.form(self.carrier.vertex_face[pid])(p)

    def slope(self, fid: int, direction: Sequence) -> Fraction:
        return self.form(fid).slope(direction)

    def vertex_values(self) -> dict:
        return {self.carrier.points[p]: self.value_at_vertex(p) for p in self.carrier.vertex_face}

    @property
    def is_bounded(self) -> bool:
        """Zero slope along every ray of every unbounded face."""
        c = self.carrier
        return all(self.form(m).slope(r) == 0 for m in c.maximal_faces for r in c.face_rays(m))

    # -- arithmetic (carriers are aligned through a common refinement) -------

    def _binary(self, other, op):
        if isinstance(other, PAFunction):
            f, g = align(self, other)
            c = f.carrier
            return PAFunction(c, {m: op(f.form(m), g.form(m)) for m in c.maximal_faces})
        k = to_rational(other)
        return PAFunction(self.carrier, {m: op(self.form(m), k) for m in self.carrier.maximal_faces})

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return self * -1

    def __mul__(self, c):
        c = to_rational(c)
        return PAFunction(self.carrier, {m: self.form(m) * c for m in self.carrier.maximal_faces})

    __rmul__ = __mul__

    def equals(self, other: "PAFunction") -> bool:
        """Pointwise equality (checked face by face on a common carrier)."""
        f, g = align(self, other)
        c = f.carrier
        for m in c.maximal_faces:
            F, G = f.form(m), g.form(m)
            if any(F(v) != G(v) for v in c.face_points(m)):
                return False
            if any(F.slope(r) != G.slope(r) for r in c.face_rays(m)):
                return False
        return True


def _agree_on(c: Complex, fid: int, F: AffineForm, G: AffineForm) -> bool:
    return all(F(v) == G(v) for v in c.face_points(fid)) and all(
        F.slope(r) == G.slope(r) for r in c.face_rays(fid))


def validate_pa(f: PAFunction) -> list[Violation]:
    """Continuity and integrality checks; the empty list means valid."""
    c = f.carrier
    out = []
    for fid in f.forms:
        if fid not in c._by_id:
            out.append(Violation("UnknownFace", (fid,), "form given on a face that does not exist"))
        elif f.forms[fid].dim != c.ambient_dim:
            out.append(Violation("Dimension", (fid,), "form has the wrong number of coordinates"))
    if out:
        return out
    for m in c.maximal_faces:
        if m not in f.forms:
            out.append(Violation("Missing", (m,), "no form on a maximal face"))
    if out:
        return out
    for t in c.faces:
        owners = [s for s in [t.id] + sorted(c.cofaces(t.id)) if s in f.forms]
        if not owners:
            continue
        ref = f.forms[owners[0]]
        for s in owners[1:]:
            if not _agree_on(c, t.id, ref, f.forms[s]):
                out.append(Violation("Continuity", (owners[0], s),
                                     f"representatives disagree on face {t.id}"))
    for fid, F in sorted(f.forms.items()):
        for b in c.polyhedron(fid).lattice.basis:
            if F.slope(b).denominator != 1:
                out.append(Violation("Integrality", (fid,), "linear part is not integral on the face lattice"))
                break
    return out


# ---------------------------------------------------------------------------
# carriers


_REFINE_CACHE: list = []


def _refine(a: Complex, b: Complex) -> Complex:
    if a is b:
        return a
    for x, y, r in _REFINE_CACHE:
        if (x is a and y is b) or (x is b and y is a):
            return r
    if is_refinement(a, b):
        r = a
    elif is_refinement(b, a):
        r = b
    else:
        r = common_refinement(a, b)
    _REFINE_CACHE.append((a, b, r))
    if len(_REFINE_CACHE) > 64:
        del _REFINE_CACHE[0]
    return r


def common_carrier(*complexes: Complex) -> Complex:
    out = complexes[0]
    for c in complexes[1:]:
        if c is not out:
            out = _refine(out, c)
    return out


def rebase(f: PAFunction, fine: Complex) -> PAFunction:
    """The same function with representatives copied onto the faces of ``fine``."""
    if fine is f.carrier:
        return f
    try:
        cmap = carrier_map(fine, f.carrier)
    except PointOutsideSupport as exc:
        raise NotARefinement(str(exc)) from exc
    forms = {}
    for m in fine.maximal_faces:
        g = cmap[m]
        if not f.carrier.polyhedron(g).contains_polyhedron(fine.polyhedron(m)):
            raise NotARefinement(f"face {m} is not contained in a face of the carrier")
        forms[m] = f.form(g)
    return PAFunction(fine, forms)


def align(*fs: PAFunction, space: BalancedSpace | None = None):
    """Rebase functions (and optionally the top weight of ``space``) onto one carrier.

    Returns the rebased functions, followed by the pulled back top weight when
    ``space`` is given.
    """
    cs = [f.carrier for f in fs] + ([space.complex] if space is not None else [])
    C = common_carrier(*cs)
    out = [rebase(f, C) for f in fs]
    if space is not None:
        out.append(pullback(space.weight, C, check=False))
    return tuple(out) if len(out) != 1 else out[0]


def eval_pa(f: PAFunction, x: Sequence) -> Fraction:
    return f(x)


# ---------------------------------------------------------------------------
# localization


@dataclass(frozen=True)
class LocalFunction:
    """A conical piecewise linear function on a star fan (one form per cone)."""

    fan: object
    forms: dict

    def __call__(self, v: Sequence) -> Fraction:
        v = rvec(v)
        best = None
        for C, o in self.fan.cones:
            if C.contains(v) and (best is None or C.dim < best[0].dim):
                best = (C, o)
        if best is None:
            raise PointOutsideSupport("direction is not in the star")
        return self.forms[best[1]](v)

    def slope(self, origin: int, v: Sequence) -> Fraction:
        return self.forms[origin].slope(v)


def _tau_linear(f: PAFunction, tau: int) -> tuple:
    c = f.carrier
    if c.face(tau).dim == 0:
        return (Fraction(0),) * c.ambient_dim
    return f.form(tau).linear


def localize_pa(f: PAFunction, x: Sequence) -> LocalFunction:
    """The conical function ``f_x``: on ``C_{sigma/tau}`` the linear part of ``f_sigma`` minus that of ``f_tau``."""
    fan = star(f.carrier, x)
    lt = _tau_linear(f, fan.base_face)
    if f.carrier.face(fan.base_face).dim == 0:
        # at a vertex the local function is defined up to a linear function;
        # remove the linear part when one linear function fits the whole star
        rows, rhs = [], []
        for C, o in fan.cones:
            for r in C.rays:
                rows.append(rvec(r))
                rhs.append(f.form(o).slope(r))
        sol = solve_linear(rows, rhs) if rows else None
        if sol is not None:
            lt = sol
    forms = {o: AffineForm(vsub(f.form(o).linear, lt), 0) for C, o in fan.cones}
    return LocalFunction(fan, forms)


# ---------------------------------------------------------------------------
# intersection product and Monge-Ampère measures


def intersect(f: PAFunction, c: Weight, s: BalancedSpace | None = None) -> Weight:
    """The (k-1)-weight ``f . c`` on the common carrier of ``f`` and ``c``."""
    cx = f.carrier
    if c.complex is not cx:
        raise CarrierMismatch("function and cycle live on different complexes")
    if c.k < 1:
        raise WrongArity("cannot intersect a 0-cycle")
    out = {}
    for tau in cx.faces_of_dim(c.k - 1):
        total = Fraction(0)
        ssum = (Fraction(0),) * cx.ambient_dim
        any_w = False
        for sigma in cx.cofacets(tau.id):
            w = c[sigma]
            if not w:
                continue
            any_w = True
            n = cx.normal(sigma, tau.id)
            total += w * f.form(sigma).slope(n)
            ssum = vadd(ssum, vscale(w, n))
        if not any_w:
            continue
        total -= dot(_tau_linear(f, tau.id), ssum)
        if total:
            out[tau.id] = total
    return Weight(cx, c.k - 1, out)


def _atoms(w: Weight) -> AtomicMeasure:
    c = w.complex
    return AtomicMeasure({c.points[next(iter(c.face(fid).vertices))]: m for fid, m in w.values.items()})


def ma_poly(fs: Sequence[PAFunction], s: BalancedSpace) -> AtomicMeasure:
    """Mixed polyhedral Monge-Ampère measure ``f_1 . (f_2 . ( ... f_d . [X]))``."""
    fs = list(fs)
    if len(fs) != s.d:
        raise WrongArity(f"expected {s.d} functions, got {len(fs)}")
    *gs, X = align(*fs, space=s) if fs else (s.weight,)
    c = X
    for g in reversed(gs):
        c = intersect(g, c)
    return _atoms(c)


def mixed_ma(fs: Sequence[PAFunction], s: BalancedSpace) -> AtomicMeasure:
    return ma_poly(fs, s)


def degree_pa(f: PAFunction, s: BalancedSpace) -> Fraction:
    return ma_poly([f] * s.d, s).total


def ma_bilinear(f: PAFunction, g: PAFunction, rest: Sequence[PAFunction], s: BalancedSpace) -> Fraction:
    """``∫ f MA(g, rest)`` through the edge formula on bounded edges.

    Needs ``f`` or ``g`` bounded.  When only ``f`` is bounded the unbounded edges
    contribute ``f(v) a_rho slope_g``; when ``g`` is bounded those terms vanish
    and the result is symmetric in ``f`` and ``g``.
    """
    rest = list(rest)
    if len(rest) != s.d - 1:
        raise WrongArity(f"expected {s.d - 1} background functions")
    *al, X = align(f, g, *rest, space=s)
    f2, g2, rs = al[0], al[1], al[2:]
    fb, gb = f2.is_bounded, g2.is_bounded
    if not (fb or gb):
        raise UnboundedIntegrand("neither integrand is bounded")
    a = X
    for r in reversed(rs):
        a = intersect(r, a)
    C = f2.carrier
    total = Fraction(0)
    for e in C.faces_of_dim(1):
        w = a[e.id]
        if not w:
            continue
        if e.is_bounded:
            p, q = C.face_points(e.id)
            lam = segment_length(p, q)
            total += w / lam * (f2(p) - f2(q)) * (g2(q) - g2(p))
        elif not gb:
            (p,) = C.face_points(e.id)
            (r,) = C.face_rays(e.id)
            total += f2(p) * w * g2.form(e.id).slope(r)
    return total


def integrate(u: PAFunction, mu: AtomicMeasure) -> Fraction:
    return mu.integrate(u)


# ---------------------------------------------------------------------------
# convexity


@dataclass(frozen=True)
class Witness:
    """Certificate of non-convexity at ``face``."""

    face: int
    reason: str
    cycle: dict = field(default_factory=dict)
    pairing: Fraction | None = None

    def __bool__(self):
        return False


@dataclass(frozen=True)
class Convex:
    def __bool__(self):
        return True


def local_cycle_rays(c: Complex, tau: int) -> list[dict]:
    """Extreme rays of the cone of nonnegative local cycles at ``tau``.

    The cone consists of weights ``c >= 0`` on the faces covering ``tau`` whose
    weighted normal vectors sum into ``N_tau``.
    """
    key = ("lcr", tau)
    if key in c._cache:
        return c._cache[key]
    sig = sorted(c.cofacets(tau))
    out = []
    if sig:
        n = c.ambient_dim
        normals = [c.normal(s, tau) for s in sig]
        A = annihilator([rvec(b) for b in c.polyhedron(tau).lattice.basis], n)
        m = len(sig)
        cons = []
        for i in range(m):
            cons.append(tuple(Fraction(int(i == j)) for j in range(m)))
        for a in A:
            row = tuple(dot(a, nv) for nv in normals)
            cons.append(row)
            cons.append(tuple(-x for x in row))
        rays, lines = cone_dd(cons, m)
        assert not lines
        for r in rays:
            ri = clear_denominators(r)
            out.append({s: Fraction(x) for s, x in zip(sig, ri) if x})
    c._cache[key] = out
    return out


def local_pairing(f: PAFunction, tau: int, cyc: dict) -> Fraction:
    c = f.carrier
    lt = _tau_linear(f, tau)
    total = Fraction(0)
    for s, w in cyc.items():
        n = c.normal(s, tau)
        total += w * (f.form(s).slope(n) - dot(lt, n))
    return total


def _dual_cycles(f: PAFunction, strict: bool):
    c = f.carrier
    for t in c.faces:
        for cyc in local_cycle_rays(c, t.id):
            p = local_pairing(f, t.id, cyc)
            if p < 0 or (strict and p == 0):
                return Witness(t.id, "local cycle with negative pairing" if p < 0 else
                               "local cycle with zero pairing", dict(cyc), p)
    return Convex()


def _support_lp(f: PAFunction):
    c = f.carrier
    if not c.is_simplicial:
        raise NotSimplicial("the supporting-function test needs a simplicial carrier")
    n = c.ambient_dim
    zero = AffineForm((0,) * (n + 1), 0)
    for t in c.faces:
        cof = c.cofaces(t.id)
        if not cof:
            continue
        cons = []
        F = f.form(t.id)
        for v in c.face_points(t.id):
            cons.append((AffineForm(tuple(v) + (1,), -F(v)), "="))
        for r in c.face_rays(t.id):
            cons.append((AffineForm(tuple(r) + (0,), -F.slope(r)), "="))
        tv = set(c.face(t.id).vertices)
        tr = set(c.face(t.id).rays)
        seen = set()
        for s in cof:
            G = f.form(s)
            for pid in c.face(s).vertices - tv:
                if ("v", pid) in seen:
                    continue
                seen.add(("v", pid))
                v = c.points[pid]
                cons.append((AffineForm(tuple(v) + (1,), -G(v)), "<="))
            for rid in c.face(s).rays - tr:
                r = c.rays[rid]
                cons.append((AffineForm(tuple(r) + (0,), -G.slope(r)), "<="))
        res = lp_solve(zero, cons, "max")
        if res.status == "infeasible":
            return Witness(t.id, "no supporting affine function")
    return Convex()


def is_papc(f: PAFunction, method: str = "dual_cycles"):
    """Convexity of ``f`` on its carrier: :class:`Convex` or a :class:`Witness`."""
    if method == "dual_cycles":
        return _dual_cycles(f, strict=False)
    if method == "support_lp":
        return _support_lp(f)
    raise ValueError(f"unknown method {method!r}")


def is_strictly_convex(f: PAFunction, pi: Complex | None = None) -> bool:
    if pi is not None and pi is not f.carrier:
        f = rebase(f, pi)
    return bool(_dual_cycles(f, strict=True))


# ---------------------------------------------------------------------------
# real Monge-Ampère of a maximum of affine forms


def max_domains(forms: Sequence[AffineForm]) -> Complex:
    """The complex of linearity domains of ``max(forms)``.

    Raises :class:`InvalidComplex` when the domains are not pointed, which
    happens when the differences of the linear parts do not span the space.
    """
    forms = list(forms)
    n = forms[0].dim
    cells = []
    for i, fi in enumerate(forms):
        h = HRep(tuple(fi - fj for j, fj in enumerate(forms) if j != i), ())
        try:
            V, R, L = _h_to_v_full(h, n)
        except EmptyPolyhedron:
            continue
        if L:
            raise InvalidComplex("linearity domains contain lines")
        P = Polyhedron(V, R)
        if P.dim == n:
            cells.append(P)
    return Complex.from_cells(n, cells)


def real_ma(forms: Sequence[AffineForm]) -> AtomicMeasure:
    """Real Monge-Ampère measure of ``max(forms)`` (lattice-normalized volumes)."""
    forms = list(forms)
    n = forms[0].dim
    verts = set()
    for i, fi in enumerate(forms):
        h = HRep(tuple(fi - fj for j, fj in enumerate(forms) if j != i), ())
        try:
            V, _, L = _h_to_v_full(h, n)
        except EmptyPolyhedron:
            continue
        if L:
            continue
        verts.update(V)
    atoms = {}
    for x in sorted(verts):
        top = max(f(x) for f in forms)
        grads = sorted({f.linear for f in forms if f(x) == top})
        vol = lattice_volume(grads) if len(grads) > n else Fraction(0)
        if vol:
            atoms[x] = vol
    return AtomicMeasure(atoms)


@dataclass(frozen=True)
class MAComparison:
    equal: bool
    polyhedral: AtomicMeasure
    real: AtomicMeasure

    def __bool__(self):
        return self.equal


def compare_real_ma(f: PAFunction, sigma: int, s: BalancedSpace, weight=None) -> MAComparison:
    """Compare ``MA_poly(f)`` on ``relint(sigma)`` with ``[X](sigma) d! MA_R``.

    ``weight`` overrides the multiplicity used on the real side.
    """
    X = s.complex
    if sigma not in X._by_id or X.face(sigma).dim != s.d:
        raise NotTopFace(f"face {sigma} is not top dimensional")
    d = s.d
    S = X.polyhedron(sigma)
    f2 = align(f, space=s)[0] if f.carrier is not X else f
    mu = ma_poly([f2] * d, s).restrict(S.in_relint)
    w = to_rational(weight) if weight is not None else s.top_weight[sigma]
    C = f2.carrier
    basis = [rvec(b) for b in S.lattice.basis]
    real = {}
    for pid, vf in sorted(C.vertex_face.items()):
        x = C.points[pid]
        if not S.in_relint(x):
            continue
        grads = {tuple(f2.form(t).slope(b) for b in basis) for t in C.cofaces(vf) if C.face(t).dim == d}
        vol = lattice_volume(sorted(grads)) if len(grads) > d else Fraction(0)
        if vol:
            real[x] = w * math.factorial(d) * vol
    real_m = AtomicMeasure(real)
    return MAComparison(mu == real_m, mu, real_m)


# ---------------------------------------------------------------------------
# growth, energy


@dataclass(frozen=True)
class Growth:
    bounded: bool
    sup: Fraction | None = None
    inf: Fraction | None = None
    face: int | None = None

    def __bool__(self):
        return self.bounded


def growth_check(f: PAFunction, gamma: PAFunction) -> Growth:
    """Whether ``f - gamma`` is bounded, with its extreme values."""
    u = f - gamma
    c = u.carrier
    for m in c.maximal_faces:
        for r in c.face_rays(m):
            if u.form(m).slope(r) != 0:
                return Growth(False, face=m)
    vals = [u.value_at_vertex(p) for p in c.vertex_face]
    return Growth(True, max(vals), min(vals))


def positive_at_infinity(gamma: PAFunction) -> bool:
    c = gamma.carrier
    return all(gamma.form(m).slope(r) > 0 for m in c.maximal_faces for r in c.face_rays(m))


def _energy_aligned(f: PAFunction, g: PAFunction, X: Weight, d: int) -> Fraction:
    u = f - g
    if not u.is_bounded:
        raise UnboundedDifference("f - gamma is unbounded")
    total = Fraction(0)
    for j in range(d + 1):
        c = X
        for h in [g] * (d - j) + [f] * j:
            c = intersect(h, c)
        total += _atoms(c).integrate(u)
    return total / (d + 1)


def energy(f: PAFunction, gamma: PAFunction, s: BalancedSpace) -> Fraction:
    """``E(f) = 1/(d+1) sum_j ∫ (f - gamma) MA(f^j, gamma^(d-j))``."""
    f2, g2, X = align(f, gamma, space=s)
    return _energy_aligned(f2, g2, X, s.d)


def _lagrange_derivative(nodes, values, t):
    """Derivative at ``t`` of the interpolating polynomial (exact)."""
    k = len(nodes)
    total = Fraction(0)
    for i in range(k):
        denom = Fraction(1)
        for j in range(k):
            if j != i:
                denom *= nodes[i] - nodes[j]
        # derivative of prod_{j != i} (t - x_j)
        der = Fraction(0)
        for m in range(k):
            if m == i:
                continue
            prod = Fraction(1)
            for j in range(k):
                if j != i and j != m:
                    prod *= t - nodes[j]
            der += prod
        total += values[i] * der / denom
    return total


@dataclass
class EnergyReport:
    derivative_ok: bool
    derivative: list  # (t, polynomial derivative, integral)
    difference_ok: bool
    difference: tuple  # (E(phi) - E(psi), formula)
    translation_ok: bool
    translation: tuple  # (E(phi + 1) - E(phi), deg gamma)

    @property
    def ok(self) -> bool:
        return self.derivative_ok and self.difference_ok and self.translation_ok


def energy_identities_check(phi: PAFunction, psi: PAFunction, gamma: PAFunction, s: BalancedSpace,
                            samples: Sequence = (Fraction(0), Fraction(1, 4), Fraction(1, 2),
                                                 Fraction(3, 4), Fraction(1))) -> EnergyReport:
    """Check the derivative, difference and translation identities of the energy exactly."""
    phi2, psi2, g2, X = align(phi, psi, gamma, space=s)
    d = s.d
    for h in (phi2, psi2):
        if not (h - g2).is_bounded:
            raise UnboundedDifference("function does not have the growth of gamma")

    def path(t):
        return phi2 * (1 - t) + psi2 * t

    nodes = [Fraction(i, d + 1) for i in range(d + 2)]
    vals = [_energy_aligned(path(t), g2, X, d) for t in nodes]
    deriv = []
    ok = True
    for t in samples:
        t = to_rational(t)
        lhs = _lagrange_derivative(nodes, vals, t)
        pt = path(t)
        c = X
        for _ in range(d):
            c = intersect(pt, c)
        rhs = _atoms(c).integrate(psi2 - phi2)
        deriv.append((t, lhs, rhs))
        ok = ok and lhs == rhs
    e_phi = _energy_aligned(phi2, g2, X, d)
    e_psi = _energy_aligned(psi2, g2, X, d)
    diff = phi2 - psi2
    rhs = Fraction(0)
    for j in range(d + 1):
        c = X
        for h in [psi2] * (d - j) + [phi2] * j:
            c = intersect(h, c)
        rhs += _atoms(c).integrate(diff)
    rhs /= d + 1
    c = X
    for _ in range(d):
        c = intersect(g2, c)
    deg = _atoms(c).total
    trans = (_energy_aligned(phi2 + 1, g2, X, d) - e_phi, deg)
    return EnergyReport(ok, deriv, e_phi - e_psi == rhs, (e_phi - e_psi, rhs), trans[0] == trans[1], trans)
