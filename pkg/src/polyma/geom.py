"""Exact rational linear algebra, lattices, linear programming and polyhedra.

Everything here works over :class:`fractions.Fraction` and Python integers.
Vectors are plain tuples.  Rational vectors hold ``Fraction`` entries and
integer vectors hold ``int`` entries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    DegenerateDimension,
    DimensionMismatch,
    EmptyPolyhedron,
    NotABoundedEdge,
    NotAFacet,
    ZeroVector,
)

RatVector = tuple  # tuple[Fraction, ...]
IntVector = tuple  # tuple[int, ...]


# ---------------------------------------------------------------------------
# small vector helpers


def to_rational(x) -> Fraction:
    """Parse an int, Fraction or string such as ``"3/4"`` into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass a Fraction or a 'p/q' string")
    return Fraction(x)


def rvec(v: Iterable) -> RatVector:
    return tuple(to_rational(x) for x in v)


def ivec(v: Iterable) -> IntVector:
    out = []
    for x in v:
        q = to_rational(x)
        if q.denominator != 1:
            raise ValueError(f"non-integral coordinate {q}")
        out.append(int(q))
    return tuple(out)


def dot(a: Sequence, b: Sequence):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def vsub(a: Sequence, b: Sequence) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def vadd(a: Sequence, b: Sequence) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def vscale(c, a: Sequence) -> tuple:
    return tuple(c * x for x in a)


def is_zero(v: Sequence) -> bool:
    return all(x == 0 for x in v)


def _lcm(values: Iterable[int]) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out


def clear_denominators(v: Sequence) -> IntVector:
    """Positive multiple of ``v`` with coprime integer entries (zero stays zero)."""
    q = rvec(v)
    m = _lcm(x.denominator for x in q)
    ints = [int(x * m) for x in q]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def primitive(v: Sequence) -> IntVector:
    """The primitive integer vector on the ray spanned by ``v``."""
    q = rvec(v)
    if is_zero(q):
        raise ZeroVector("cannot primitivize the zero vector")
    return clear_denominators(q)


# ---------------------------------------------------------------------------
# rational row reduction


def rref(rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form over Q.  Returns ``(R, pivots)`` with zero rows dropped."""
    M = [list(rvec(r)) for r in rows]
    if ncols is None:
        ncols = len(M[0]) if M else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        p = M[r][c]
        M[r] = [x / p for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return [tuple(row) for row in M[:r]], pivots


def rank(rows: Sequence[Sequence]) -> int:
    rows = list(rows)
    if not rows:
        return 0
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[RatVector]:
    """Basis of ``{x : row . x = 0 for every row}``."""
    rows = [r for r in rows]
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    R, piv = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(R, piv):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def solve_linear(A: Sequence[Sequence], b: Sequence):
    """One rational solution of ``A x = b`` (free variables set to 0), or ``None``."""
    if not A:
        return () if all(to_rational(x) == 0 for x in b) else None
    n = len(A[0])
    aug = [list(rvec(row)) + [to_rational(bi)] for row, bi in zip(A, b)]
    R, piv = rref(aug, n + 1)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for row, p in zip(R, piv):
        x[p] = row[n]
    return tuple(x)


def determinant(rows: Sequence[Sequence]) -> Fraction:
    M = [list(rvec(r)) for r in rows]
    n = len(M)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        p = M[c][c]
        det *= p
        for i in range(c + 1, n):
            if M[i][c] != 0:
                f = M[i][c] / p
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return det


def span_basis(vectors: Sequence[Sequence]) -> list[RatVector]:
    """A basis (rref rows) of the rational span of ``vectors``."""
    vectors = [v for v in vectors]
    if not vectors:
        return []
    return rref(vectors)[0]


def annihilator(vectors: Sequence[Sequence], n: int) -> list[RatVector]:
    """Basis of the covectors vanishing on all ``vectors``."""
    return nullspace(list(vectors), n)


# ---------------------------------------------------------------------------
# integer normal forms


def _hnf_with_transform(rows: Sequence[Sequence[int]], ncols: int):
    H = [list(ivec(r)) for r in rows]
    m = len(H)
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    r = 0
    for c in range(ncols):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if H[i][c] != 0]
            if not nz:
                break
            best = min(nz, key=lambda i: abs(H[i][c]))
            H[r], H[best] = H[best], H[r]
            U[r], U[best] = U[best], U[r]
            done = True
            for i in range(r + 1, m):
                if H[i][c] != 0:
                    q = H[i][c] // H[r][c]
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[r])]
                    if H[i][c] != 0:
                        done = False
            if done:
                break
        if all(H[i][c] == 0 for i in range(r, m)):
            continue
        if H[r][c] < 0:
            H[r] = [-a for a in H[r]]
            U[r] = [-a for a in U[r]]
        for i in range(r):
            q = H[i][c] // H[r][c]
            if q:
                H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                U[i] = [a - q * b for a, b in zip(U[i], U[r])]
        r += 1
    return H, U, r


def hnf(rows: Sequence[Sequence[int]]) -> tuple[list[IntVector], int]:
    """Row-style Hermite normal form.  Returns ``(H, rank)`` with zero rows dropped.

    >>> hnf([(1, 1), (1, -1)])
    ([(1, 1), (0, 2)], 2)
    """
    rows = list(rows)
    if not rows:
        return [], 0
    ncols = len(rows[0])
    H, _, r = _hnf_with_transform(rows, ncols)
    return [tuple(h) for h in H[:r]], r


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[IntVector]:
    """A Z-basis of ``{x in Z^n : A x = 0}``."""
    rows = [ivec(r) for r in rows]
    if not rows:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    At = [[rows[i][j] for i in range(len(rows))] for j in range(ncols)]
    _, U, r = _hnf_with_transform(At, len(rows))
    return [tuple(u) for u in U[r:]]


def snf(rows: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero elementary divisors (Smith normal form diagonal) in divisibility order."""
    M = [list(ivec(r)) for r in rows]
    if not M:
        return []
    m, n = len(M), len(M[0])
    divisors = []
    t = 0
    while t < min(m, n):
        nz = [(abs(M[i][j]), i, j) for i in range(t, m) for j in range(t, n) if M[i][j] != 0]
        if not nz:
            break
        _, i0, j0 = min(nz)
        M[t], M[i0] = M[i0], M[t]
        for row in M:
            row[t], row[j0] = row[j0], row[t]
        while True:
            changed = False
            p = M[t][t]
            for i in range(t + 1, m):
                if M[i][t] != 0:
                    q = M[i][t] // p
                    M[i] = [a - q * b for a, b in zip(M[i], M[t])]
                    if M[i][t] != 0:
                        changed = True
            for j in range(t + 1, n):
                if M[t][j] != 0:
                    q = M[t][j] // p
                    for row in M:
                        row[j] -= q * row[t]
                    if M[t][j] != 0:
                        changed = True
            if changed:
                nz = [(abs(M[i][j]), i, j) for i in range(t, m) for j in range(t, n)
                      if M[i][j] != 0 and (i == t or j == t)]
                _, i0, j0 = min(nz)
                M[t], M[i0] = M[i0], M[t]
                for row in M:
                    row[t], row[j0] = row[j0], row[t]
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if M[i][j] % p != 0), None)
            if bad is None:
                break
            M[t] = [a + b for a, b in zip(M[t], M[bad[0]])]
        divisors.append(abs(M[t][t]))
        t += 1
    return divisors


# ---------------------------------------------------------------------------
# lattices


@dataclass(frozen=True)
class Lattice:
    """A sublattice of Z^n given by its Hermite basis (canonical, so ``==`` is lattice equality)."""

    ambient_dim: int
    basis: tuple

    @classmethod
    def from_generators(cls, n: int, generators: Iterable[Sequence[int]]) -> "Lattice":
        gens = [ivec(g) for g in generators]
        for g in gens:
            if len(g) != n:
                raise DimensionMismatch("generator of wrong length")
        H, _ = hnf(gens) if gens else ([], 0)
        return cls(n, tuple(H))

    @classmethod
    def saturation(cls, n: int, directions: Iterable[Sequence]) -> "Lattice":
        """``span_R(directions) ∩ Z^n``."""
        dirs = [rvec(d) for d in directions if not is_zero(rvec(d))]
        if not dirs:
            return cls(n, ())
        ann = [clear_denominators(a) for a in annihilator(dirs, n)]
        return cls.from_generators(n, integer_kernel(ann, n))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def reduce(self, v: Sequence) -> tuple:
        """Reduce ``v`` against the Hermite basis (pivot entries land in ``[0, pivot)``)."""
        w = list(rvec(v))
        for h in self.basis:
            p = next(i for i, x in enumerate(h) if x != 0)
            q = math.floor(w[p] / h[p])
            if q:
                w = [a - q * b for a, b in zip(w, h)]
        return tuple(w)

    def contains(self, v: Sequence) -> bool:
        w = list(rvec(v))
        for h in self.basis:
            p = next(i for i, x in enumerate(h) if x != 0)
            q = w[p] / h[p]
            if q.denominator != 1:
                return False
            if q:
                w = [a - q * b for a, b in zip(w, h)]
        return is_zero(w)

    def in_span(self, v: Sequence) -> bool:
        if not self.basis:
            return is_zero(rvec(v))
        return rank(list(self.basis) + [rvec(v)]) == self.rank


# ---------------------------------------------------------------------------
# affine forms


@dataclass(frozen=True)
class AffineForm:
    """``x -> linear . x + constant``."""

    linear: tuple
    constant: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "linear", rvec(self.linear))
        object.__setattr__(self, "constant", to_rational(self.constant))

    @classmethod
    def zero(cls, n: int) -> "AffineForm":
        return cls((0,) * n, 0)

    @classmethod
    def const(cls, n: int, c) -> "AffineForm":
        return cls((0,) * n, c)

    @property
    def dim(self) -> int:
        return len(self.linear)

    def __call__(self, x: Sequence) -> Fraction:
        return dot(self.linear, x) + self.constant

    def slope(self, v: Sequence) -> Fraction:
        return dot(self.linear, v)

    def __add__(self, other):
        if isinstance(other, AffineForm):
            return AffineForm(vadd(self.linear, other.linear), self.constant + other.constant)
        return AffineForm(self.linear, self.constant + to_rational(other))

    __radd__ = __add__

    def __neg__(self):
        return AffineForm(vscale(-1, self.linear), -self.constant)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, c):
        c = to_rational(c)
        return AffineForm(vscale(c, self.linear), c * self.constant)

    __rmul__ = __mul__


# ---------------------------------------------------------------------------
# linear programming: two-phase primal simplex with Bland's rule


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal", "infeasible" or "unbounded"
    value: Fraction | None = None
    point: tuple | None = None

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


def _pivot(T, basis, r, c, z=None):
    """Pivot on ``T[r][c]``; the reduced-cost row ``z`` is updated alongside."""
    p = T[r][c]
    row = T[r] = [x / p for x in T[r]]
    nz = [k for k, x in enumerate(row) if x]
    targets = [T[i] for i in range(len(T)) if i != r and T[i][c]]
    if z is not None and z[c]:
        targets.append(z)
    for target in targets:
        f = target[c]
        for k in nz:
            target[k] -= f * row[k]
    basis[r] = c


def _simplex(T, basis, cost, allowed):
    """Minimize ``cost . y`` over the canonical tableau ``T``.  Returns False if unbounded.

    Entering column: the smallest index with negative reduced cost; leaving
    row: minimum ratio, ties broken by the smallest basic index (Bland).
    """
    ncols = len(T[0]) - 1
    z = list(cost) + [Fraction(0)]
    for i, b in enumerate(basis):
        if z[b]:
            f = z[b]
            z = [a - f * x for a, x in zip(z, T[i])]
    while True:
        entering = next((j for j in range(ncols) if allowed[j] and z[j] < 0), None)
        if entering is None:
            return True
        best = None
        for i in range(len(T)):
            a = T[i][entering]
            if a > 0:
                key = (T[i][-1] / a, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return False
        _pivot(T, basis, best[1], entering, z)


def lp_solve(objective: AffineForm, constraints: Sequence, sense: str = "max") -> LPResult:
    """Exact LP over free variables.

    ``constraints`` is a sequence of ``(form, rel)`` pairs meaning ``form(x) rel 0``
    with ``rel`` one of ``"<="``, ``"="``, ``">="``.
    """
    if sense not in ("max", "min"):
        raise ValueError("sense must be 'max' or 'min'")
    n = objective.dim
    cons = []
    for form, rel in constraints:
        if form.dim != n:
            raise DimensionMismatch("constraint dimension differs from objective")
        if rel not in ("<=", "=", ">="):
            raise ValueError(f"unknown relation {rel!r}")
        cons.append((form, rel))
    m = len(cons)
    nslack = sum(1 for _, rel in cons if rel != "=")
    # columns: x+ (n), x- (n), slacks, artificials (m)
    nv = 2 * n + nslack
    ncols = nv + m
    T = []
    s = 0
    for i, (form, rel) in enumerate(cons):
        row = [Fraction(0)] * (ncols + 1)
        for j in range(n):
            row[j] = form.linear[j]
            row[n + j] = -form.linear[j]
        if rel == "<=":
            row[2 * n + s] = Fraction(1)
            s += 1
        elif rel == ">=":
            row[2 * n + s] = Fraction(-1)
            s += 1
        row[-1] = -form.constant
        if row[-1] < 0:
            row = [-x for x in row]
        row[nv + i] = Fraction(1)
        T.append(row)
    basis = [nv + i for i in range(m)]
    if m:
        cost1 = [Fraction(0)] * nv + [Fraction(1)] * m
        _simplex(T, basis, cost1, [True] * ncols)
        if sum((T[i][-1] for i in range(m) if basis[i] >= nv), Fraction(0)) > 0:
            return LPResult("infeasible")
        i = 0
        while i < len(T):
            if basis[i] >= nv:
                j = next((j for j in range(nv) if T[i][j] != 0), None)
                if j is None:
                    del T[i]
                    del basis[i]
                    continue
                _pivot(T, basis, i, j)
            i += 1
        T = [row[:nv] + row[-1:] for row in T]
        ncols = nv
    sign = Fraction(-1) if sense == "max" else Fraction(1)
    cost2 = [sign * c for c in objective.linear] + [-sign * c for c in objective.linear]
    cost2 += [Fraction(0)] * (ncols - 2 * n)
    allowed = [j < nv for j in range(ncols)]
    if not T:
        if is_zero(objective.linear):
            x = (Fraction(0),) * n
            return LPResult("optimal", objective(x), x)
        return LPResult("unbounded")
    if not _simplex(T, basis, cost2, allowed):
        return LPResult("unbounded")
    y = [Fraction(0)] * ncols
    for i, b in enumerate(basis):
        y[b] = T[i][-1]
    x = tuple(y[j] - y[n + j] for j in range(n))
    return LPResult("optimal", objective(x), x)


# ---------------------------------------------------------------------------
# double description


def _normalize_direction(v):
    return tuple(Fraction(x) for x in clear_denominators(v))


def _iprim(v: tuple) -> tuple:
    g = math.gcd(*v)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


def _idot(a: tuple, b: tuple) -> int:
    return sum(x * y for x, y in zip(a, b))


def cone_dd(inequalities: Sequence[Sequence], dim: int):
    """Generators of ``{y : a . y >= 0 for all a}`` by the double description method.

    Returns ``(rays, lines)``: the cone is ``cone(rays) + span(lines)`` and the
    rays are extreme modulo the lineality space.  Rows are scaled to integers
    and all intermediate vectors are kept primitive.
    """
    ineqs = [clear_denominators(rvec(a)) for a in inequalities]
    lines = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    rays: list = []
    zsets: list = []  # zero sets (indices of processed inequalities) per ray
    for idx, a in enumerate(ineqs):
        vals = [_idot(a, l) for l in lines]
        k = next((i for i, v in enumerate(vals) if v != 0), None)
        if k is not None:
            l, v = lines[k], vals[k]
            if v < 0:
                l, v = tuple(-x for x in l), -v
            new_lines = []
            for i, li in enumerate(lines):
                if i == k:
                    continue
                new_lines.append(_iprim(tuple(v * x - vals[i] * y for x, y in zip(li, l))))
            new_rays = []
            for r in rays:
                ar = _idot(a, r)
                new_rays.append(_iprim(tuple(v * x - ar * y for x, y in zip(r, l))) if ar else r)
            zsets = [z | {idx} for z in zsets]
            new_rays.append(_iprim(l))
            # the former line is tight on every earlier inequality
            zsets.append(frozenset(range(idx)))
            rays = new_rays
            lines = new_lines
        else:
            signs = [_idot(a, r) for r in rays]
            pos = [i for i, s in enumerate(signs) if s > 0]
            neg = [i for i, s in enumerate(signs) if s < 0]
            zer = [i for i, s in enumerate(signs) if s == 0]
            new_rays = [rays[i] for i in pos] + [rays[i] for i in zer]
            new_z = [zsets[i] for i in pos] + [zsets[i] | {idx} for i in zer]
            for p in pos:
                for q in neg:
                    common = zsets[p] & zsets[q]
                    adjacent = True
                    for r in range(len(rays)):
                        if r != p and r != q and common <= zsets[r]:
                            adjacent = False
                            break
                    if not adjacent:
                        continue
                    w = tuple(signs[p] * x - signs[q] * y for x, y in zip(rays[q], rays[p]))
                    if not any(w):
                        continue
                    new_rays.append(_iprim(w))
                    new_z.append(common | {idx})
            rays, zsets = new_rays, new_z
    uniq = []
    seen = set()
    for r in rays:
        if r not in seen:
            seen.add(r)
            uniq.append(tuple(Fraction(x) for x in r))
    return uniq, [tuple(Fraction(x) for x in l) for l in lines]


@dataclass(frozen=True)
class HRep:
    """``{x : f(x) >= 0 for f in inequalities, g(x) = 0 for g in equalities}``."""

    inequalities: tuple
    equalities: tuple

    @property
    def ambient_dim(self) -> int:
        forms = self.inequalities + self.equalities
        return forms[0].dim if forms else 0

    def contains(self, x) -> bool:
        return all(g(x) == 0 for g in self.equalities) and all(f(x) >= 0 for f in self.inequalities)


def _reduce_mod_rows(v, R, piv):
    w = list(v)
    for row, p in zip(R, piv):
        if w[p] != 0:
            f = w[p]
            w = [a - f * b for a, b in zip(w, row)]
    return tuple(w)


def dual_description(vertices: Sequence[Sequence], rays: Sequence[Sequence] = ()) -> HRep:
    """Irredundant inequality description of ``conv(vertices) + cone(rays)``."""
    V = [rvec(v) for v in vertices]
    R = [rvec(r) for r in rays]
    if not V:
        raise EmptyPolyhedron("a polyhedron needs at least one vertex")
    n = len(V[0])
    gens = [v + (Fraction(1),) for v in V] + [r + (Fraction(0),) for r in R]
    drays, dlines = cone_dd(gens, n + 1)
    eqs = []
    if dlines:
        Lr, Lp = rref(dlines, n + 1)
    else:
        Lr, Lp = [], []
    for l in Lr:
        eqs.append(AffineForm(l[:n], l[n]))
    trivial = _normalize_direction(_reduce_mod_rows((Fraction(0),) * n + (Fraction(1),), Lr, Lp))
    ineqs = []
    seen = set()
    for r in drays:
        rr = _reduce_mod_rows(r, Lr, Lp)
        if is_zero(rr):
            continue
        rr = _normalize_direction(rr)
        if rr == trivial or rr in seen:
            continue
        seen.add(rr)
        ineqs.append(AffineForm(rr[:n], rr[n]))
    ineqs.sort(key=lambda f: (f.linear, f.constant))
    return HRep(tuple(ineqs), tuple(eqs))


def _h_to_v_full(h: HRep, n: int | None = None):
    if n is None:
        n = h.ambient_dim
    cons = []
    for f in h.inequalities:
        cons.append(f.linear + (f.constant,))
    for g in h.equalities:
        row = g.linear + (g.constant,)
        cons.append(row)
        cons.append(vscale(-1, row))
    cons.append((Fraction(0),) * n + (Fraction(1),))
    rays, lines = cone_dd(cons, n + 1)
    verts, drs = [], []
    for r in rays:
        t = r[n]
        if t > 0:
            verts.append(tuple(x / t for x in r[:n]))
        else:
            drs.append(primitive(r[:n]))
    if not verts:
        raise EmptyPolyhedron("inequality system is infeasible")
    lin = [primitive(l[:n]) for l in lines]
    return verts, drs, lin


def h_to_v(h: HRep, n: int | None = None):
    """Generators ``(vertices, rays)`` of an H-representation; lines become opposite ray pairs."""
    verts, drs, lin = _h_to_v_full(h, n)
    rays = list(drs)
    for l in lin:
        rays.append(l)
        rays.append(tuple(-x for x in l))
    return sorted(set(verts)), sorted(set(rays))


# ---------------------------------------------------------------------------
# cones: facets and pulling triangulations


def cone_facets(vectors: Sequence[Sequence]) -> list[frozenset]:
    """Facets of the pointed cone spanned by ``vectors`` as index sets of the vectors they contain."""
    vecs = [rvec(v) for v in vectors]
    dim = len(vecs[0])
    drays, _ = cone_dd(vecs, dim)
    facets = set()
    for y in drays:
        tight = frozenset(i for i, v in enumerate(vecs) if dot(y, v) == 0)
        if len(tight) < len(vecs):
            facets.add(tight)
    # keep maximal sets only
    out = [f for f in facets if not any(f < g for g in facets)]
    return sorted(out, key=lambda s: sorted(s))


def pulling_triangulation(vectors: Sequence[Sequence], order: Sequence[int] | None = None) -> list[frozenset]:
    """Pulling triangulation of the pointed cone spanned by irredundant ``vectors``.

    Generators are pulled in ``order`` (default: index order).  Because the
    restriction to a face is the pulling triangulation of that face in the
    induced order, triangulations of cells sharing a face agree on it.
    """
    vecs = [rvec(v) for v in vectors]
    pos = {i: k for k, i in enumerate(order if order is not None else range(len(vecs)))}
    memo: dict = {}

    def pull(idx: frozenset):
        if idx in memo:
            return memo[idx]
        sub = sorted(idx)
        if rank([vecs[i] for i in sub]) == len(sub):
            res = [idx]
        else:
            g = min(idx, key=lambda i: pos[i])
            res = []
            for f in cone_facets([vecs[i] for i in sub]):
                F = frozenset(sub[i] for i in f)
                if g in F:
                    continue
                res.extend(S | {g} for S in pull(F))
        memo[idx] = res
        return res

    return pull(frozenset(range(len(vecs))))


# ---------------------------------------------------------------------------
# polyhedra


class Polyhedron:
    """``conv(vertices) + cone(rays)`` with lazily cached lattice and inequality data."""

    def __init__(self, vertices: Iterable[Sequence], rays: Iterable[Sequence] = ()):
        V = sorted(set(rvec(v) for v in vertices))
        if not V:
            raise EmptyPolyhedron("a polyhedron needs at least one vertex")
        n = len(V[0])
        R = sorted(set(primitive(r) for r in rays if not is_zero(rvec(r))))
        for v in V:
            if len(v) != n:
                raise DimensionMismatch("vertices of different lengths")
        for r in R:
            if len(r) != n:
                raise DimensionMismatch("ray of wrong length")
        self.vertices = tuple(V)
        self.rays = tuple(R)
        self.ambient_dim = n

    def __repr__(self):
        return f"Polyhedron(vertices={self.vertices!r}, rays={self.rays!r})"

    def __eq__(self, other):
        if not isinstance(other, Polyhedron):
            return NotImplemented
        return self.contains_polyhedron(other) and other.contains_polyhedron(self)

    def __hash__(self):
        return hash(self.ambient_dim)

    @cached_property
    def directions(self) -> list:
        v0 = self.vertices[0]
        out = [vsub(v, v0) for v in self.vertices[1:]]
        out += [tuple(Fraction(x) for x in r) for r in self.rays]
        return [d for d in out if not is_zero(d)]

    @cached_property
    def dim(self) -> int:
        return rank(self.directions)

    @cached_property
    def lattice(self) -> Lattice:
        """The saturated lattice ``N_sigma`` of the linear span of ``sigma - sigma``."""
        return Lattice.saturation(self.ambient_dim, self.directions)

    @cached_property
    def hrep(self) -> HRep:
        return dual_description(self.vertices, self.rays)

    @property
    def is_bounded(self) -> bool:
        return not self.rays

    @cached_property
    def lineality(self) -> list:
        _, _, lin = _h_to_v_full(self.hrep, self.ambient_dim)
        return lin

    @property
    def is_pointed(self) -> bool:
        return not self.lineality

    def contains(self, x: Sequence) -> bool:
        return self.hrep.contains(rvec(x))

    def contains_direction(self, r: Sequence) -> bool:
        r = rvec(r)
        return all(g.slope(r) == 0 for g in self.hrep.equalities) and all(
            f.slope(r) >= 0 for f in self.hrep.inequalities)

    def in_relint(self, x: Sequence) -> bool:
        x = rvec(x)
        h = self.hrep
        return all(g(x) == 0 for g in h.equalities) and all(f(x) > 0 for f in h.inequalities)

    def contains_polyhedron(self, other: "Polyhedron") -> bool:
        return all(self.contains(v) for v in other.vertices) and all(
            self.contains_direction(r) for r in other.rays)

    @cached_property
    def relint_point(self) -> tuple:
        k = len(self.vertices)
        c = tuple(sum((v[i] for v in self.vertices), Fraction(0)) / k for i in range(self.ambient_dim))
        for r in self.rays:
            c = vadd(c, r)
        return c

    def irredundant(self) -> "Polyhedron":
        V, R = h_to_v(self.hrep, self.ambient_dim)
        return Polyhedron(V, R)

    def intersection(self, other: "Polyhedron") -> "Polyhedron | None":
        h = HRep(self.hrep.inequalities + other.hrep.inequalities,
                 self.hrep.equalities + other.hrep.equalities)
        try:
            V, R = h_to_v(h, self.ambient_dim)
        except EmptyPolyhedron:
            return None
        return Polyhedron(V, R)

    def face_index_sets(self) -> list[tuple[frozenset, frozenset]]:
        """All nonempty faces as ``(vertex indices, ray indices)`` into the stored generators.

        Assumes the stored generators are irredundant and the polyhedron is pointed.
        """
        nv = len(self.vertices)
        full = frozenset(range(nv + len(self.rays)))
        facets = []
        for f in self.hrep.inequalities:
            tight = set(i for i, v in enumerate(self.vertices) if f(v) == 0)
            tight |= set(nv + j for j, r in enumerate(self.rays) if f.slope(r) == 0)
            facets.append(frozenset(tight))
        faces = {full}
        frontier = [full]
        while frontier:
            new = []
            for F in frontier:
                for G in facets:
                    H = F & G
                    if H not in faces and any(i < nv for i in H):
                        faces.add(H)
                        new.append(H)
            frontier = new
        out = []
        for F in faces:
            out.append((frozenset(i for i in F if i < nv), frozenset(i - nv for i in F if i >= nv)))
        return out


def normal_vector(sigma: Polyhedron, tau: Polyhedron) -> IntVector:
    """A lattice normal vector of ``sigma`` relative to its facet ``tau``.

    The returned vector lies in ``N_sigma``, generates ``N_sigma / N_tau``, points
    from ``tau`` into ``sigma`` and is reduced modulo the Hermite basis of ``N_tau``.
    """
    if sigma.dim != tau.dim + 1 or not sigma.contains_polyhedron(tau):
        raise NotAFacet("tau is not a codimension-one face of sigma")
    h = sigma.hrep
    tight = [f for f in h.inequalities
             if all(f(v) == 0 for v in tau.vertices) and all(f.slope(r) == 0 for r in tau.rays)]
    if not tight:
        raise NotAFacet("tau is not contained in the boundary of sigma")
    Ns, Nt = sigma.lattice, tau.lattice
    B = [rvec(b) for b in Ns.basis]
    k = len(B)
    # a generator of sigma outside the affine hull of tau
    x0 = tau.vertices[0]
    g = None
    for v in sigma.vertices:
        d = vsub(v, x0)
        if not Nt.in_span(d):
            g = d
            break
    if g is None:
        for r in sigma.rays:
            if not Nt.in_span(r):
                g = rvec(r)
                break
    # coordinates in the basis B
    Bt = [[B[j][i] for j in range(k)] for i in range(sigma.ambient_dim)]

    def coords(v):
        c = solve_linear(Bt, rvec(v))
        assert c is not None
        return c

    rows = [coords(t) for t in Nt.basis]
    cg = coords(g)
    # functional f on Q^k with f(t) = 0 for t in N_tau and f(g) = 1
    f = solve_linear(rows + [cg], [0] * len(rows) + [1])
    assert f is not None
    vals = list(f)
    m = _lcm(x.denominator for x in vals)
    ints = [int(x * m) for x in vals]
    # Bezout combination reaching the gcd of the values
    coeffs = [0] * k
    gacc = 0
    for i, c in enumerate(ints):
        if c == 0:
            continue
        if gacc == 0:
            gacc = abs(c)
            coeffs = [0] * k
            coeffs[i] = 1 if c > 0 else -1
            continue
        gg, a, b = _xgcd(gacc, c)
        coeffs = [a * x for x in coeffs]
        coeffs[i] += b
        gacc = gg
    n_vec = [sum(coeffs[j] * B[j][i] for j in range(k)) for i in range(sigma.ambient_dim)]
    n_vec = Nt.reduce(n_vec) if Nt.rank else tuple(n_vec)
    return tuple(int(x) for x in n_vec)


def _xgcd(a: int, b: int):
    """Return ``(g, x, y)`` with ``a x + b y = g = gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def lattice_length(edge: Polyhedron) -> Fraction:
    if not edge.is_bounded or edge.dim != 1 or len(edge.vertices) != 2:
        raise NotABoundedEdge("lattice length needs a bounded edge")
    v, w = edge.vertices
    d = vsub(w, v)
    p = primitive(d)
    i = next(i for i, x in enumerate(p) if x != 0)
    return abs(d[i] / p[i])


def segment_length(v: Sequence, w: Sequence) -> Fraction:
    d = vsub(rvec(w), rvec(v))
    p = primitive(d)
    i = next(i for i, x in enumerate(p) if x != 0)
    return abs(d[i] / p[i])


def lattice_volume(points: Sequence[Sequence], strict: bool = False) -> Fraction:
    """Normalized volume (unit cube = 1) of the convex hull of ``points``.

    A hull that is not full dimensional has volume 0; with ``strict=True`` this
    raises :class:`DegenerateDimension` instead.
    """
    P = [rvec(p) for p in points]
    if not P:
        raise DegenerateDimension("no points")
    d = len(P[0])
    if d == 0:
        return Fraction(1)
    if rank([vsub(p, P[0]) for p in P[1:]]) < d:
        if strict:
            raise DegenerateDimension("hull is not full dimensional")
        return Fraction(0)
    hull = Polyhedron(P).irredundant().vertices
    lifted = [v + (Fraction(1),) for v in hull]
    total = Fraction(0)
    for simplex in pulling_triangulation(lifted):
        idx = sorted(simplex)
        base = hull[idx[0]]
        total += abs(determinant([vsub(hull[i], base) for i in idx[1:]]))
    return total / math.factorial(d)
