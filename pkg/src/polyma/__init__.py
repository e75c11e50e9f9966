"""Exact polyhedral Monge-Ampère computations on balanced rational polyhedral spaces.

All arithmetic is over the rationals (:class:`fractions.Fraction`).  The
modules are

``geom``     rational polyhedra, lattices, normal forms, linear programming
``complex``  polyhedral complexes, refinements, stars, balanced spaces
``cycles``   weights, balancing, pullback, localization
``pafun``    piecewise affine functions, intersection products, MA measures,
             convexity tests, real MA comparison, energy
``dim1``     Laplacian, MA solver, envelope and orthogonality on graphs
``catalog``  built-in example spaces
``io``/``cli`` JSON formats and the ``polyma`` command
"""

from .complex import (
    BalancedSpace,
    Complex,
    common_refinement,
    is_refinement,
    simplicial_refinement,
    skeleton,
    star,
    validate_complex,
)
from .cycles import Weight, check_balanced, pullback
from .dim1 import Measure1D, PQFunction, envelope1, is_poly_smooth, laplacian, ortho_check, solve_ma1
from .errors import PolymaError
from .geom import AffineForm, Polyhedron
from .pafun import (
    AtomicMeasure,
    PAFunction,
    compare_real_ma,
    degree_pa,
    energy,
    energy_identities_check,
    intersect,
    is_papc,
    is_strictly_convex,
    ma_bilinear,
    ma_poly,
    real_ma,
)

__version__ = "0.1.0"

__all__ = [
    "AffineForm",
    "AtomicMeasure",
    "BalancedSpace",
    "Complex",
    "Measure1D",
    "PAFunction",
    "PQFunction",
    "Polyhedron",
    "PolymaError",
    "Weight",
    "check_balanced",
    "common_refinement",
    "compare_real_ma",
    "degree_pa",
    "energy",
    "energy_identities_check",
    "envelope1",
    "intersect",
    "is_papc",
    "is_poly_smooth",
    "is_refinement",
    "is_strictly_convex",
    "laplacian",
    "ma_bilinear",
    "ma_poly",
    "ortho_check",
    "pullback",
    "real_ma",
    "simplicial_refinement",
    "skeleton",
    "solve_ma1",
    "star",
    "validate_complex",
]
