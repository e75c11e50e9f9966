"""Energy identities on the tropical line and the toric comparison in the plane.

Usage: python3 demos/energy_and_toric.py

Part one takes two envelopes phi, psi on a refined tropical line and checks
the derivative and difference formulas for the energy at five sample
points.  Part two compares the polyhedral Monge-Ampère measure of
max(0, x, y) with the real one and with the lattice volume of the unit
simplex.
"""

from fractions import Fraction

from polyma.catalog import plane_complete, tropical_line
from polyma.complex import BalancedSpace, Complex
from polyma.dim1 import envelope1
from polyma.geom import AffineForm, Polyhedron, lattice_volume
from polyma.io import fmt
from polyma.pafun import PAFunction, energy, energy_identities_check, ma_poly, real_ma, rebase


def refined_line():
    """The tropical line with an extra vertex on each ray."""
    cells = []
    for r in [(1, 0), (0, 1), (-1, -1)]:
        cells.append(Polyhedron([(0, 0), r]))
        cells.append(Polyhedron([r], [r]))
    return BalancedSpace.unit(Complex.from_cells(2, cells, name="tropical_line"))


def energy_part() -> None:
    s = refined_line()
    c = s.complex
    gamma = rebase(tropical_line()["gamma"], c)
    bumps = {(0, 0): Fraction(1), (1, 0): Fraction(-1, 2), (0, 1): Fraction(0), (-1, -1): Fraction(2)}
    dips = {(0, 0): Fraction(-1), (1, 0): Fraction(1), (0, 1): Fraction(1, 3), (-1, -1): Fraction(0)}
    u = PAFunction.from_data(c, lambda p: bumps[tuple(p)], lambda m, r: 0)
    v = PAFunction.from_data(c, lambda p: dips[tuple(p)], lambda m, r: 0)
    phi, psi = envelope1(s, gamma, u), envelope1(s, gamma, v)
    print("== energy on the refined tropical line")
    print(f"   E(phi) = {fmt(energy(phi, gamma, s))}, E(psi) = {fmt(energy(psi, gamma, s))}")
    samples = [Fraction(0), Fraction(1, 5), Fraction(1, 2), Fraction(2, 3), Fraction(1)]
    rep = energy_identities_check(phi, psi, gamma, s, samples)
    for t, lhs, rhs in rep.derivative:
        print(f"   t = {fmt(t)}: d/dt E(phi_t) = {fmt(lhs)}, integral (psi - phi) MA(phi_t) = {fmt(rhs)}")
    print(f"   derivative formula: {rep.derivative_ok}; difference formula: {rep.difference_ok}; "
          f"translation: {rep.translation_ok}")


def toric_part() -> None:
    d = plane_complete()
    mu = ma_poly([d["gamma"]] * 2, d["space"])
    forms = [AffineForm((0, 0), 0), AffineForm((1, 0), 0), AffineForm((0, 1), 0)]
    print("== max(0, x, y) on the plane")
    print(f"   polyhedral MA: {mu}")
    print(f"   real MA:       {real_ma(forms)}")
    print(f"   2! x lattice volume of the unit simplex: "
          f"{fmt(2 * lattice_volume([(0, 0), (1, 0), (0, 1)]))}")


if __name__ == "__main__":
    energy_part()
    toric_part()
