"""Hexagon walkthrough: masses of gamma_eps, the one-dimensional solver, and the closed form.

Usage: python3 demos/hexagon_solver.py [eps ...]      (defaults: 1/4 1/2 1 3/2)

For each eps the script prints the Monge-Ampère masses of gamma_eps, solves
MA(phi) = (4 - eps)/3 per unit length on every bounded edge with phi(1,0) = 0,
and compares the edge coefficients with phi_2(t) = (4-eps) t^2/6 - (1+eps/2) t/3.
"""

import sys
from fractions import Fraction

from polyma.catalog import hexagon
from polyma.dim1 import laplacian, solve_ma1
from polyma.io import fmt, fmt_point
from polyma.pafun import ma_poly


def walk(eps: Fraction) -> bool:
    d = hexagon(eps)
    s, gamma, mu = d["space"], d["gamma"], d["mu"]
    c = s.complex
    print(f"== eps = {eps}")
    masses = ma_poly([gamma], s)
    for p, m in masses.atoms.items():
        print(f"   MA(gamma) at {fmt_point(p)}: {fmt(m)}")
    print(f"   total mass {fmt(sum(masses.atoms.values()))} (8 - 2 eps = {fmt(8 - 2 * eps)})")

    phi, status = solve_ma1(s, gamma, mu, (1, 0))
    print(f"   solver status: {status}; laplacian reproduces mu: {laplacian(phi, s) == mu}")
    for pid in sorted(c.vertex_face):
        print(f"   phi{fmt_point(c.points[pid])} = {fmt(phi.values[pid])}")

    target = (Fraction(0), -(1 + eps / 2) / 3, (4 - eps) / 6)
    ok = True
    for e in c.bounded_edges():
        a, b = sorted(c.face(e).vertices)
        for start in (a, b):
            if phi.values[start] == 0 and c.points[start] not in ((1, 1), (-1, -1)):
                other = b if start == a else a
                if c.points[other] in ((1, 1), (-1, -1)):
                    coeffs = phi.coefficients(e, start)
                    ok &= coeffs == target
                    print(f"   edge {fmt_point(c.points[start])} -> {fmt_point(c.points[other])}: "
                          f"value {fmt(coeffs[0])}, slope {fmt(coeffs[1])}, quad {fmt(coeffs[2])}")
    print(f"   matches phi_2: {ok}")
    return ok


if __name__ == "__main__":
    args = sys.argv[1:] or ["1/4", "1/2", "1", "3/2"]
    results = [walk(Fraction(a)) for a in args]
    sys.exit(0 if all(results) else 1)
