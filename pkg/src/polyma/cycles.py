"""Weights and cycles on a complex: balancing, pullback, degree and localization."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .complex import BalancedSpace, Complex, StarFan, carrier_map, is_refinement, star
from .errors import DimensionMismatch, NotARefinement
from .geom import clear_denominators, normal_vector, to_rational, vadd, vscale


class Weight:
    """A sparse map from the k-dimensional faces of ``complex`` to rationals."""

    __slots__ = ("complex", "k", "values")

    def __init__(self, complex: Complex, k: int, values: dict | None = None):
        self.complex = complex
        self.k = int(k)
        vals = {}
        for fid, v in (values or {}).items():
            v = to_rational(v)
            if v != 0:
                vals[int(fid)] = v
        for fid in vals:
            if fid not in complex._by_id or complex.face(fid).dim != self.k:
                raise DimensionMismatch(f"face {fid} is not a {self.k}-dimensional face")
        self.values = vals

    def __getitem__(self, fid: int) -> Fraction:
        return self.values.get(fid, Fraction(0))

    def __repr__(self):
        body = ", ".join(f"{k}: {v}" for k, v in sorted(self.values.items()))
        return f"Weight(k={self.k}, {{{body}}})"

    def __eq__(self, other):
        if not isinstance(other, Weight):
            return NotImplemented
        return self.complex is other.complex and self.k == other.k and self.values == other.values

    __hash__ = None

    def _check(self, other):
        if self.complex is not other.complex or self.k != other.k:
            raise DimensionMismatch("weights live on different complexes or dimensions")

    def __add__(self, other: "Weight") -> "Weight":
        self._check(other)
        out = dict(self.values)
        for f, v in other.values.items():
            out[f] = out.get(f, Fraction(0)) + v
        return Weight(self.complex, self.k, out)

    def __mul__(self, c) -> "Weight":
        c = to_rational(c)
        return Weight(self.complex, self.k, {f: c * v for f, v in self.values.items()})

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for v in self.values.values())


def check_balanced(c: Complex, w: Weight) -> list[tuple]:
    """Balancing defects ``(tau, s)``; the empty list means ``w`` is a cycle.

    ``s`` is the (denominator-cleared) sum of weighted normal vectors at ``tau``
    that fails to lie in ``N_tau``.
    """
    if w.complex is not c:
        raise DimensionMismatch("weight is not carried by this complex")
    if w.k == 0:
        return []
    defects = []
    for tau in c.faces_of_dim(w.k - 1):
        s = (Fraction(0),) * c.ambient_dim
        for sigma in c.cofacets(tau.id):
            if w[sigma]:
                s = vadd(s, vscale(w[sigma], c.normal(sigma, tau.id)))
        if all(x == 0 for x in s):
            continue
        si = clear_denominators(s)
        if not c.polyhedron(tau.id).lattice.contains(si):
            defects.append((tau.id, si))
    return defects


def is_cycle(w: Weight) -> bool:
    return not check_balanced(w.complex, w)


def pullback(w: Weight, fine: Complex, check: bool = True) -> Weight:
    """Pull ``w`` back to a refinement: faces inside a k-face inherit its weight."""
    coarse = w.complex
    if fine is coarse:
        return w
    if check and not is_refinement(fine, coarse):
        raise NotARefinement("target complex does not refine the carrier of the weight")
    cmap = carrier_map(fine, coarse)
    vals = {}
    for f in fine.faces_of_dim(w.k):
        g = cmap[f.id]
        if coarse.face(g).dim == w.k and w[g]:
            vals[f.id] = w[g]
    return Weight(fine, w.k, vals)


def degree0(w: Weight) -> Fraction:
    if w.k != 0:
        raise DimensionMismatch("degree is defined for 0-weights")
    return sum(w.values.values(), Fraction(0))


def localize_weight(s: BalancedSpace | Complex, w: Weight, x: Sequence) -> StarFan:
    """The weight ``w_x`` on the star at ``x``: ``C_{sigma/tau}`` gets ``w(sigma)``."""
    fan = star(s if isinstance(s, BalancedSpace) else w.complex, x)
    tau_dim = w.complex.face(fan.base_face).dim
    if w.k < tau_dim:
        raise DimensionMismatch("weight dimension is below the dimension of the face at x")
    vals = {o: w[o] for C, o in fan.cones if w[o]}
    return StarFan(fan.base_point, fan.base_face, fan.cones, vals)


def check_balanced_star(fan: StarFan, k: int) -> list[tuple]:
    """Balancing defects of the weights stored on a star fan, viewed as a k-weight."""
    cones = {o: C for C, o in fan.cones}
    defects = []
    for o, C in cones.items():
        if C.dim != k - 1:
            continue
        s = (Fraction(0),) * C.ambient_dim
        for o2, D in cones.items():
            if D.dim == k and fan.weights.get(o2) and D.contains_polyhedron(C):
                s = vadd(s, vscale(fan.weights[o2], normal_vector(D, C)))
        if any(x != 0 for x in s):
            si = clear_denominators(s)
            if not C.lattice.contains(si):
                defects.append((o, si))
    return defects


__all__ = [
    "Weight",
    "check_balanced",
    "check_balanced_star",
    "degree0",
    "is_cycle",
    "localize_weight",
    "pullback",
]
