"""JSON interchange formats.

Rationals are written as strings ``"p/q"`` (or ``"p"`` for integers) and read
back exactly; floats are rejected.  Layouts:

complex
    ``{"ambient_dim", "points": [["0","1"], ...], "rays": [[1,0], ...],
    "faces": [{"id", "vertices": [...], "rays": [...]}],
    "weights": {"dim", "entries": [{"face", "value"}]}}`` with ``weights``
    optional (unit weights on top faces when absent)
function
    ``{"carrier": <path or inline complex>, "forms": [{"face", "linear": [...], "const"}]}``
piecewise quadratic function
    ``{"kind": "pq", "carrier", "values": [{"point", "value"}],
    "edges": [{"face", "slope", "quad"}], "rays": [{"face", "slope"}]}``
    with edge data read from the endpoint of lower point id
measure
    ``{"atoms": [{"point", "mass"}], "densities": [{"face", "per_unit_length"}]}``

A carrier given as a string is a path relative to the referring file.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .complex import BalancedSpace, Complex, validate_complex
from .dim1 import Measure1D, PQFunction
from .errors import FormatError, InvalidComplex, InvalidFunction
from .geom import AffineForm
from .pafun import AtomicMeasure, PAFunction, validate_pa


def fmt(x) -> str:
    """Exact rational rendering: ``"p/q"`` or ``"p"``."""
    return str(Fraction(x))


def fmt_point(p) -> str:
    return "(" + ",".join(fmt(x) for x in p) + ")"


def parse_rational(x) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise FormatError(f"expected an exact rational, got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"not a rational: {x!r}") from exc
    raise FormatError(f"not a rational: {x!r}")


def parse_vector(v) -> tuple:
    if not isinstance(v, list):
        raise FormatError(f"expected a list, got {v!r}")
    return tuple(parse_rational(x) for x in v)


def parse_point_arg(text: str) -> tuple:
    """A point given on the command line as ``"1,0"`` or ``"1/2,-3"``."""
    return tuple(parse_rational(t) for t in text.replace("(", "").replace(")", "").split(","))


def _get(d: dict, key: str, what: str):
    if not isinstance(d, dict) or key not in d:
        raise FormatError(f"{what}: missing key {key!r}")
    return d[key]


# ---------------------------------------------------------------------------
# complexes and spaces


def complex_to_json(c: Complex, weights: dict | None = None, dim: int | None = None) -> dict:
    out: dict[str, Any] = {
        "ambient_dim": c.ambient_dim,
        "points": [[fmt(x) for x in p] for p in c.points],
        "rays": [list(r) for r in c.rays],
        "faces": [{"id": f.id, "vertices": sorted(f.vertices), "rays": sorted(f.rays)} for f in c.faces],
    }
    if c.name:
        out["name"] = c.name
    if weights is not None:
        out["weights"] = {
            "dim": c.dim if dim is None else dim,
            "entries": [{"face": k, "value": fmt(v)} for k, v in sorted(weights.items())],
        }
    return out


def space_to_json(s: BalancedSpace) -> dict:
    return complex_to_json(s.complex, s.top_weight, s.d)


def complex_from_json(d: dict) -> Complex:
    n = _get(d, "ambient_dim", "complex")
    if not isinstance(n, int):
        raise FormatError("ambient_dim must be an integer")
    points = [parse_vector(p) for p in _get(d, "points", "complex")]
    rays = []
    for r in _get(d, "rays", "complex"):
        v = parse_vector(r)
        if any(x.denominator != 1 for x in v):
            raise FormatError("ray generators must be integral")
        rays.append(tuple(int(x) for x in v))
    faces = []
    for f in _get(d, "faces", "complex"):
        faces.append((_get(f, "id", "face"), _get(f, "vertices", "face"), f.get("rays", [])))
    return Complex(n, points, rays, faces, name=d.get("name"))


def space_from_json(d: dict) -> BalancedSpace:
    c = complex_from_json(d)
    w = d.get("weights")
    if w is None:
        return BalancedSpace.unit(c)
    entries = {int(_get(e, "face", "weight entry")): parse_rational(_get(e, "value", "weight entry"))
               for e in _get(w, "entries", "weights")}
    return BalancedSpace(c, entries, int(w.get("dim", c.dim)))


# ---------------------------------------------------------------------------
# functions and measures


def function_to_json(f: PAFunction, carrier_ref: Any) -> dict:
    c = f.carrier
    return {
        "carrier": carrier_ref,
        "forms": [{"face": m, "linear": [fmt(x) for x in f.form(m).linear], "const": fmt(f.form(m).constant)}
                  for m in c.maximal_faces],
    }


def function_from_json(d: dict, carrier: Complex) -> PAFunction:
    forms = {}
    for e in _get(d, "forms", "function"):
        forms[int(_get(e, "face", "form"))] = AffineForm(parse_vector(_get(e, "linear", "form")),
                                                        parse_rational(_get(e, "const", "form")))
    return PAFunction(carrier, forms)


def pq_to_json(f: PQFunction, carrier_ref: Any) -> dict:
    c = f.carrier
    return {
        "kind": "pq",
        "carrier": carrier_ref,
        "values": [{"point": [fmt(x) for x in c.points[p]], "value": fmt(v)} for p, v in sorted(f.values.items())],
        "edges": [{"face": e, "slope": fmt(a), "quad": fmt(q)} for e, (a, q) in sorted(f.edges.items())],
        "rays": [{"face": e, "slope": fmt(v)} for e, v in sorted(f.rays.items())],
    }


def pq_from_json(d: dict, carrier: Complex) -> PQFunction:
    pid = {p: i for i, p in enumerate(carrier.points)}
    values = {}
    for e in _get(d, "values", "pq function"):
        p = parse_vector(_get(e, "point", "value entry"))
        if p not in pid:
            raise FormatError(f"value given at {p}, which is not a point of the carrier")
        values[pid[p]] = parse_rational(_get(e, "value", "value entry"))
    edges = {int(e["face"]): (parse_rational(e["slope"]), parse_rational(e["quad"])) for e in d.get("edges", [])}
    rays = {int(e["face"]): parse_rational(e["slope"]) for e in d.get("rays", [])}
    f = PQFunction(carrier, values, edges, rays)
    f.validate()
    return f


def measure_to_json(mu) -> dict:
    atoms = mu.atoms
    out = {"atoms": [{"point": [fmt(x) for x in p], "mass": fmt(m)} for p, m in sorted(atoms.items())]}
    if isinstance(mu, Measure1D):
        out["densities"] = [{"face": e, "per_unit_length": fmt(v)} for e, v in sorted(mu.densities.items())]
    else:
        out["densities"] = []
    return out


def measure_from_json(d: dict) -> Measure1D:
    atoms = {parse_vector(_get(a, "point", "atom")): parse_rational(_get(a, "mass", "atom"))
             for a in d.get("atoms", [])}
    dens = {int(_get(e, "face", "density")): parse_rational(_get(e, "per_unit_length", "density"))
            for e in d.get("densities", [])}
    return Measure1D(atoms, dens)


def atomic_from_json(d: dict) -> AtomicMeasure:
    m = measure_from_json(d)
    if m.densities:
        raise FormatError("expected a purely atomic measure")
    return m.atomic


# ---------------------------------------------------------------------------
# workspace


@dataclass
class Workspace:
    """Artifacts loaded from files, cached by path so shared carriers stay identical."""

    check: bool = True
    complexes: dict = field(default_factory=dict)
    spaces: dict = field(default_factory=dict)
    log: list = field(default_factory=list)

    def _validate_complex(self, c: Complex, path: str) -> None:
        if self.check:
            bad = validate_complex(c)
            if bad:
                raise InvalidComplex(f"{path}: {bad[0]}")

    @staticmethod
    def read_json(path: str) -> dict:
        try:
            with open(path, encoding="utf-8") as fh:
                return json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: invalid JSON ({exc})") from exc

    def space(self, path: str) -> BalancedSpace:
        key = os.path.realpath(path)
        if key not in self.spaces:
            s = space_from_json(self.read_json(path))
            if key in self.complexes:
                s = BalancedSpace(self.complexes[key], s.top_weight, s.d)
            else:
                self._validate_complex(s.complex, path)
            self.spaces[key] = s
            self.complexes[key] = s.complex
            self.log.append(("space", path))
        return self.spaces[key]

    def complex(self, path: str) -> Complex:
        key = os.path.realpath(path)
        if key not in self.complexes:
            c = complex_from_json(self.read_json(path))
            self._validate_complex(c, path)
            self.complexes[key] = c
            self.log.append(("complex", path))
        return self.complexes[key]

    def _carrier(self, ref, base: str) -> Complex:
        if isinstance(ref, dict):
            return complex_from_json(ref)
        if isinstance(ref, str):
            return self.complex(os.path.join(os.path.dirname(os.path.abspath(base)), ref))
        raise FormatError("carrier must be a path or an inline complex")

    def function(self, path: str):
        d = self.read_json(path)
        carrier = self._carrier(_get(d, "carrier", "function"), path)
        self.log.append(("function", path))
        if d.get("kind") == "pq":
            return pq_from_json(d, carrier)
        f = function_from_json(d, carrier)
        if self.check:
            # rational slopes are admitted (the hexagon family needs them)
            bad = [v for v in validate_pa(f) if v.kind != "Integrality"]
            if bad:
                raise InvalidFunction(f"{path}: {bad[0]}")
        return f

    def measure(self, path: str) -> Measure1D:
        self.log.append(("measure", path))
        return measure_from_json(self.read_json(path))


def dump(obj: dict, path: str | None = None) -> str:
    text = json.dumps(obj, indent=2, sort_keys=False) + "\n"
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text
