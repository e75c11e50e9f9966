"""Two spaces where the envelope of a smooth obstacle fails the orthogonality property.

Usage: python3 demos/counterexamples.py [eps]          (default 1/2)

The axes cross has a vertex of valence four, which is not polyhedrally
smooth; the envelope P of gamma + u puts mass 2 at the origin where P stays
strictly below the obstacle.  On the Bergman fan of U(3,4) the function
gamma itself competes for the envelope and the orthogonality integral is
-4 eps.
"""

import sys
from fractions import Fraction

from polyma.catalog import axes_cross, bergman_u34
from polyma.dim1 import envelope1, is_poly_smooth, ortho_check
from polyma.io import fmt, fmt_point
from polyma.pafun import ma_poly, positive_at_infinity


def cross(eps: Fraction) -> None:
    d = axes_cross(eps)
    s, gamma, u = d["space"], d["gamma"], d["u"]
    c = s.complex
    print(f"== axes cross, eps = {eps}")
    for pid, verdict in is_poly_smooth(s).items():
        print(f"   vertex {fmt_point(c.points[pid])}: {verdict}")
    P = envelope1(s, gamma, u)
    for y in (-2 * eps, -eps, 0, eps, 2 * eps):
        print(f"   P(0,{fmt(y)}) = {fmt(P((0, y)))}    gamma+u = {fmt((gamma + u)((0, y)))}")
    for p, m in ma_poly([P], s).atoms.items():
        print(f"   MA(P) at {fmt_point(p)}: {fmt(m)}")
    val, _ = ortho_check(s, gamma, u, P)
    print(f"   integral of (P - gamma - u) MA(P) = {fmt(val)}")


def bergman(eps: Fraction) -> None:
    d = bergman_u34(eps)
    s, gamma = d["space"], d["gamma"]
    print(f"== Bergman fan U(3,4), eps = {eps}")
    print(f"   balanced with unit weights: {not s.problems()}")
    print(f"   MA(gamma) = {ma_poly([gamma, gamma], s)}")
    print(f"   gamma positive at infinity: {positive_at_infinity(gamma)}")
    val, _ = ortho_check(s, gamma, d["u"], gamma)
    print(f"   integral with P = gamma: {fmt(val)}")


if __name__ == "__main__":
    e = Fraction(sys.argv[1]) if len(sys.argv) > 1 else Fraction(1, 2)
    cross(e)
    bergman(e)
