"""Command line front end.

Exit codes: 0 on success, 1 when a check fails or a domain error is raised,
2 on usage errors.  Every number printed is an exact rational.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import os
import sys
from fractions import Fraction
from typing import Sequence

from . import catalog
from .complex import (
    BalancedSpace,
    common_refinement,
    recession_fan,
    retract,
    simplicial_refinement,
    skeleton,
    star,
    validate_complex,
)
from .cycles import check_balanced
from .dim1 import PQFunction, envelope1, is_poly_smooth, laplacian, ortho_check, solve_ma1
from .errors import PolymaError
from .geom import AffineForm
from .io import (
    Workspace,
    complex_to_json,
    dump,
    fmt,
    fmt_point,
    function_to_json,
    measure_to_json,
    parse_point_arg,
    parse_rational,
    pq_to_json,
    space_to_json,
)
from .pafun import (
    PAFunction,
    compare_real_ma,
    degree_pa,
    energy,
    energy_identities_check,
    growth_check,
    is_papc,
    is_strictly_convex,
    ma_bilinear,
    ma_poly,
    positive_at_infinity,
    real_ma,
    validate_pa,
)


class Failed(Exception):
    """A check ran and answered negatively (exit code 1)."""


def _print_measure(mu, out) -> None:
    for p, m in sorted(mu.atoms.items()):
        out.append(f"{fmt_point(p)}: {fmt(m)}")
    dens = getattr(mu, "densities", {})
    for e, v in sorted(dens.items()):
        out.append(f"density face {e}: {fmt(v)}")
    if not dens:
        out.append(f"total: {fmt(sum(mu.atoms.values(), Fraction(0)))}")


def _print_pq(phi: PQFunction, out) -> None:
    c = phi.carrier
    out.append("vertex values:")
    for pid, v in sorted(phi.values.items(), key=lambda t: c.points[t[0]]):
        out.append(f"  {fmt_point(c.points[pid])}: {fmt(v)}")
    out.append("bounded edges (start, end, value, slope, quad):")
    for e, (a, q) in sorted(phi.edges.items()):
        v, w = sorted(c.face(e).vertices)
        out.append(f"  {e}: {fmt_point(c.points[v])} -> {fmt_point(c.points[w])}, "
                   f"{fmt(phi.values[v])}, {fmt(a)}, {fmt(q)}")
    if phi.rays:
        out.append("unbounded edges (vertex, ray, slope):")
        for e, sl in sorted(phi.rays.items()):
            (v,) = c.face(e).vertices
            (r,) = c.face_rays(e)
            out.append(f"  {e}: {fmt_point(c.points[v])}, {fmt_point(r)}, {fmt(sl)}")


def _print_pa_values(f: PAFunction, out) -> None:
    out.append("vertex values:")
    for p, v in sorted(f.vertex_values().items()):
        out.append(f"  {fmt_point(p)}: {fmt(v)}")
    c = f.carrier
    rows = []
    for m in c.maximal_faces:
        for r in c.face_rays(m):
            rows.append(f"  face {m}, ray {fmt_point(r)}: {fmt(f.form(m).slope(r))}")
    if rows:
        out.append("slopes at infinity:")
        out.extend(rows)


def _emit(obj: dict, path: str | None, out) -> None:
    text = dump(obj, path)
    out.append(f"wrote {path}" if path else text.rstrip())


def _parse_form(text: str) -> AffineForm:
    """``"a,b|c"`` means the form ``a x + b y + c``."""
    lin, _, const = text.partition("|")
    return AffineForm(tuple(parse_rational(t) for t in lin.split(",")), parse_rational(const or "0"))


# ---------------------------------------------------------------------------
# commands


def cmd_validate(a, ws, out):
    ws.check = False
    d = ws.read_json(a.file)
    if "forms" in d:
        f = ws.function(a.file)
        bad = validate_pa(f)
    elif d.get("kind") == "pq":
        ws.function(a.file)
        bad = []
    else:
        s = ws.space(a.file)
        bad = validate_complex(s.complex)
    if bad:
        out.extend(str(v) for v in bad)
        raise Failed()
    out.append("Valid")


def cmd_balance(a, ws, out):
    s = ws.space(a.space)
    defects = check_balanced(s.complex, s.weight)
    problems = [p for p in s.problems() if "balanc" not in p]
    if defects or problems:
        out.extend(problems)
        for tau, v in defects:
            out.append(f"face {tau}: defect {fmt_point(v)}")
        raise Failed()
    out.append("Balanced")


def cmd_refine_common(a, ws, out):
    _emit(complex_to_json(common_refinement(ws.complex(a.first), ws.complex(a.second))), a.output, out)


def cmd_refine_simplicial(a, ws, out):
    _emit(complex_to_json(simplicial_refinement(ws.complex(a.file))), a.output, out)


def cmd_skeleton(a, ws, out):
    _emit(complex_to_json(skeleton(ws.complex(a.file))), a.output, out)


def cmd_star(a, ws, out):
    s = ws.space(a.space)
    fan = star(s, parse_point_arg(a.point))
    out.append(f"base face: {fan.base_face}")
    for C, o in fan.cones:
        rays = " ".join(fmt_point(r) for r in C.rays)
        w = fan.weights.get(o)
        out.append(f"cone from face {o}: dim {C.dim}, rays {rays}" + (f", weight {fmt(w)}" if w else ""))


def cmd_retract(a, ws, out):
    out.append(fmt_point(retract(ws.complex(a.file), parse_point_arg(a.point))))


def cmd_recession(a, ws, out):
    cones, is_fan = recession_fan(ws.complex(a.file))
    for C in cones:
        out.append("cone " + (" ".join(fmt_point(r) for r in C.rays) or "{0}"))
    out.append(f"is_fan: {str(is_fan).lower()}")


def cmd_ma(a, ws, out):
    s = ws.space(a.space)
    f = ws.function(a.fn)
    _print_measure(ma_poly([f] * s.d, s), out)


def cmd_mixed_ma(a, ws, out):
    s = ws.space(a.space)
    _print_measure(ma_poly([ws.function(p) for p in a.fn], s), out)


def cmd_degree(a, ws, out):
    s = ws.space(a.space)
    out.append(fmt(degree_pa(ws.function(a.fn), s)))


def cmd_bilinear(a, ws, out):
    s = ws.space(a.space)
    rest = [ws.function(p) for p in (a.rest or [])]
    out.append(fmt(ma_bilinear(ws.function(a.f), ws.function(a.g), rest, s)))


def cmd_convex(a, ws, out):
    res = is_papc(ws.function(a.fn), a.method)
    if not res:
        out.append(f"Witness at face {res.face}: {res.reason}")
        if res.cycle:
            out.append("cycle: " + ", ".join(f"{k}: {fmt(v)}" for k, v in sorted(res.cycle.items())))
            out.append(f"pairing: {fmt(res.pairing)}")
        raise Failed()
    out.append("Convex")


def cmd_strict(a, ws, out):
    f = ws.function(a.fn)
    ok = is_strictly_convex(f, ws.complex(a.carrier) if a.carrier else None)
    out.append("StrictlyConvex" if ok else "NotStrictlyConvex")
    if not ok:
        raise Failed()


def cmd_real_ma(a, ws, out):
    _print_measure(real_ma([_parse_form(t) for t in a.form]), out)


def cmd_compare_real_ma(a, ws, out):
    s = ws.space(a.space)
    res = compare_real_ma(ws.function(a.fn), a.face, s, parse_rational(a.weight) if a.weight else None)
    out.append("polyhedral:")
    _print_measure(res.polyhedral, out)
    out.append("real (scaled):")
    _print_measure(res.real, out)
    out.append("Equal" if res.equal else "Discrepancy")
    if not res.equal:
        raise Failed()


def cmd_energy(a, ws, out):
    s = ws.space(a.space)
    out.append(fmt(energy(ws.function(a.fn), ws.function(a.gamma), s)))


def cmd_energy_check(a, ws, out):
    s = ws.space(a.space)
    samples = [parse_rational(t) for t in a.samples.split(",")] if a.samples else None
    args = [ws.function(a.phi), ws.function(a.psi), ws.function(a.gamma), s]
    rep = energy_identities_check(*args, samples) if samples else energy_identities_check(*args)
    for t, lhs, rhs in rep.derivative:
        out.append(f"t={fmt(t)}: derivative {fmt(lhs)}, integral {fmt(rhs)}")
    out.append(f"difference: {fmt(rep.difference[0])} vs {fmt(rep.difference[1])}")
    out.append(f"translation: {fmt(rep.translation[0])} vs deg {fmt(rep.translation[1])}")
    out.append("OK" if rep.ok else "FAILED")
    if not rep.ok:
        raise Failed()


def cmd_laplacian(a, ws, out):
    s = ws.space(a.space)
    _print_measure(laplacian(ws.function(a.fn), s), out)


def cmd_solve_ma1(a, ws, out):
    s = ws.space(a.space)
    phi, status = solve_ma1(s, ws.function(a.gamma), ws.measure(a.mu), parse_point_arg(a.basepoint))
    _print_pq(phi, out)
    out.append("pc_status: " + ("Convex" if status else f"Witness at face {status.face}: {status.reason}"))
    if a.output:
        dump(pq_to_json(phi, os.path.relpath(a.space, os.path.dirname(os.path.abspath(a.output)))), a.output)


def cmd_envelope1(a, ws, out):
    s = ws.space(a.space)
    P = envelope1(s, ws.function(a.gamma), ws.function(a.u))
    _print_pa_values(P, out)
    if a.output:
        base = os.path.dirname(os.path.abspath(a.output))
        if P.carrier is s.complex:
            ref = os.path.relpath(a.space, base)
        else:
            ref = complex_to_json(P.carrier)
        dump(function_to_json(P, ref), a.output)


def cmd_smooth(a, ws, out):
    s = ws.space(a.space)
    c = s.complex
    res = is_poly_smooth(s)
    for pid, r in sorted(res.items(), key=lambda t: c.points[t[0]]):
        out.append(f"{fmt_point(c.points[pid])}: {r}")


def cmd_ortho(a, ws, out):
    s = ws.space(a.space)
    integral, ok = ortho_check(s, ws.function(a.gamma), ws.function(a.u), ws.function(a.P))
    out.append(f"competitor: {str(ok).lower()}")
    out.append(f"integral: {fmt(integral)}")


def cmd_growth(a, ws, out):
    g = growth_check(ws.function(a.fn), ws.function(a.gamma))
    if g:
        out.append(f"Bounded(sup={fmt(g.sup)}, inf={fmt(g.inf)})")
    else:
        out.append(f"Unbounded(face {g.face})")
        raise Failed()


def cmd_positive(a, ws, out):
    ok = positive_at_infinity(ws.function(a.gamma))
    out.append(str(ok).lower())
    if not ok:
        raise Failed()


def write_example(name: str, epsilon, directory: str) -> list[str]:
    """Write the files of a built-in example; returns the file names."""
    data = catalog.generate(name, epsilon)
    os.makedirs(directory, exist_ok=True)
    s: BalancedSpace = data["space"]
    written = []

    def put(fname, obj):
        dump(obj, os.path.join(directory, fname))
        written.append(fname)

    put("space.json", space_to_json(s))
    carriers = {id(s.complex): "space.json"}
    for key in ("refined",):
        if key in data:
            put(f"{key}.json", complex_to_json(data[key]))
            carriers[id(data[key])] = f"{key}.json"
    for key in ("gamma", "u", "phi", "g"):
        if key not in data:
            continue
        f = data[key]
        ref = carriers.get(id(f.carrier))
        if ref is None:
            ref = f"{key}_carrier.json"
            put(ref, complex_to_json(f.carrier))
            carriers[id(f.carrier)] = ref
        put(f"{key}.json", function_to_json(f, ref))
    if "mu" in data:
        put("mu.json", measure_to_json(data["mu"]))
    return written


def cmd_example(a, ws, out):
    eps = parse_rational(a.epsilon) if a.epsilon is not None else None
    for f in write_example(a.name, eps, a.out):
        out.append(os.path.join(a.out, f))


def cmd_report(a, ws, out):
    eps = parse_rational(a.epsilon) if a.epsilon is not None else None
    out.extend(build_report(a.name, eps, a.plot_data))


def _plot_rows(f, per_edge=8) -> list:
    pq = f if isinstance(f, PQFunction) else PQFunction.from_pa(f)
    return [(e, x, v) for e, x, v in pq.samples(per_edge)]


def build_report(name: str, epsilon=None, plot_path: str | None = None) -> list[str]:
    """Deterministic text report of the standard computations on a built-in example."""
    data = catalog.generate(name, epsilon)
    s = data["space"]
    c = s.complex
    out = [f"example: {name}"]
    if epsilon is not None or name in ("axes_cross", "hexagon", "bergman_u34"):
        eps = epsilon if epsilon is not None else {"axes_cross": Fraction(1, 2), "hexagon": Fraction(1, 2),
                                                   "bergman_u34": Fraction(1, 4)}[name]
        out.append(f"epsilon: {fmt(eps)}")
    out.append(f"faces: {len(c.faces)}, dimension {s.d}, ambient {c.ambient_dim}")
    out.append("balanced: " + str(not check_balanced(c, s.weight)).lower())
    g = data["gamma"]
    out.append("MA(gamma):")
    _print_measure(ma_poly([g] * s.d, s), out)
    out.append("convex(gamma): " + str(bool(is_papc(g))).lower())
    out.append("positive_at_infinity(gamma): " + str(positive_at_infinity(g)).lower())
    plot = None
    if s.d == 1:
        out.append("smoothness:")
        for pid, r in sorted(is_poly_smooth(s).items(), key=lambda t: c.points[t[0]]):
            out.append(f"  {fmt_point(c.points[pid])}: {r}")
        plot = g
    if name == "hexagon":
        phi, status = solve_ma1(s, g, data["mu"], (1, 0))
        out.append("solve_ma1 with basepoint (1,0):")
        _print_pq(phi, out)
        out.append("pc_status: " + ("Convex" if status else "Witness"))
        out.append("laplacian round trip: " + str(laplacian(phi, s) == data["mu"]).lower())
        plot = phi
    if name == "axes_cross":
        P = envelope1(s, g, data["u"])
        out.append("envelope:")
        _print_pa_values(P, out)
        out.append("MA(envelope):")
        _print_measure(ma_poly([P], s), out)
        integral, _ = ortho_check(s, g, data["u"], P)
        out.append(f"orthogonality integral: {fmt(integral)}")
        plot = P
    if name == "bergman_u34":
        integral, _ = ortho_check(s, g, data["u"], g)
        out.append(f"orthogonality integral (P = gamma): {fmt(integral)}")
    if name == "tropical_line":
        out.append(f"degree: {fmt(degree_pa(g, s))}")
    if name == "plane_complete":
        forms = [AffineForm((0, 0), 0), AffineForm((1, 0), 0), AffineForm((0, 1), 0)]
        out.append("real MA of max(0,x,y):")
        _print_measure(real_ma(forms), out)
    if plot_path is not None:
        if plot is None:
            raise PolymaError("plot data is only available for one-dimensional examples")
        buf = _io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["face"] + [f"x{i + 1}" for i in range(c.ambient_dim)] + ["value"])
        for e, x, v in _plot_rows(plot):
            wr.writerow([e] + [fmt(t) for t in x] + [fmt(v)])
        with open(plot_path, "w", encoding="utf-8") as fh:
            fh.write(buf.getvalue())
        out.append(f"plot data: {plot_path}")
    return out


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polyma", description="Exact polyhedral Monge-Ampère computations.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(func=fn)
        return sp

    sp = add("validate", cmd_validate, "validate a complex or function file")
    sp.add_argument("file")
    sp = add("balance", cmd_balance, "check the balancing condition of a space")
    sp.add_argument("--space", required=True)
    sp = add("refine-common", cmd_refine_common, "common refinement of two complexes")
    sp.add_argument("first")
    sp.add_argument("second")
    sp.add_argument("-o", "--output")
    sp = add("refine-simplicial", cmd_refine_simplicial, "simplicial refinement")
    sp.add_argument("file")
    sp.add_argument("-o", "--output")
    sp = add("star", cmd_star, "star fan at a point")
    sp.add_argument("--space", required=True)
    sp.add_argument("--point", required=True)
    sp = add("skeleton", cmd_skeleton, "subcomplex of bounded faces")
    sp.add_argument("file")
    sp.add_argument("-o", "--output")
    sp = add("retract", cmd_retract, "retraction onto the skeleton")
    sp.add_argument("file")
    sp.add_argument("--point", required=True)
    sp = add("recession", cmd_recession, "recession cones and the fan test")
    sp.add_argument("file")
    sp = add("ma", cmd_ma, "polyhedral Monge-Ampère measure")
    sp.add_argument("--space", required=True)
    sp.add_argument("--fn", required=True)
    sp = add("mixed-ma", cmd_mixed_ma, "mixed polyhedral Monge-Ampère measure")
    sp.add_argument("--space", required=True)
    sp.add_argument("--fn", action="append", required=True)
    sp = add("degree", cmd_degree, "degree of a function")
    sp.add_argument("--space", required=True)
    sp.add_argument("--fn", required=True)
    sp = add("bilinear", cmd_bilinear, "integral of f against MA(g, rest)")
    sp.add_argument("--space", required=True)
    sp.add_argument("--f", required=True)
    sp.add_argument("--g", required=True)
    sp.add_argument("--rest", action="append")
    sp = add("convex-check", cmd_convex, "polyhedral convexity test")
    sp.add_argument("--fn", required=True)
    sp.add_argument("--method", choices=["support_lp", "dual_cycles"], default="dual_cycles")
    sp = add("strict-convex-check", cmd_strict, "strict convexity relative to a complex")
    sp.add_argument("--fn", required=True)
    sp.add_argument("--carrier")
    sp = add("real-ma", cmd_real_ma, "real Monge-Ampère measure of a max of affine forms")
    sp.add_argument("--form", action="append", required=True, help='"a,b|c" for a x + b y + c')
    sp = add("compare-real-ma", cmd_compare_real_ma, "compare polyhedral and real MA on a top face")
    sp.add_argument("--space", required=True)
    sp.add_argument("--fn", required=True)
    sp.add_argument("--face", type=int, required=True)
    sp.add_argument("--weight")
    sp = add("energy", cmd_energy, "energy of a function relative to gamma")
    sp.add_argument("--space", required=True)
    sp.add_argument("--fn", required=True)
    sp.add_argument("--gamma", required=True)
    sp = add("energy-check", cmd_energy_check, "exact checks of the energy identities")
    sp.add_argument("--space", required=True)
    sp.add_argument("--phi", required=True)
    sp.add_argument("--psi", required=True)
    sp.add_argument("--gamma", required=True)
    sp.add_argument("--samples")
    sp = add("growth-check", cmd_growth, "is f - gamma bounded")
    sp.add_argument("--fn", required=True)
    sp.add_argument("--gamma", required=True)
    sp = add("positive-check", cmd_positive, "is gamma positive at infinity")
    sp.add_argument("--gamma", required=True)
    sp = add("laplacian", cmd_laplacian, "Laplacian of a function on a one-dimensional space")
    sp.add_argument("--space", required=True)
    sp.add_argument("--fn", required=True)
    sp = add("solve-ma1", cmd_solve_ma1, "solve the Monge-Ampère equation in dimension one")
    sp.add_argument("--space", required=True)
    sp.add_argument("--gamma", required=True)
    sp.add_argument("--mu", required=True)
    sp.add_argument("--basepoint", required=True)
    sp.add_argument("-o", "--output")
    sp = add("envelope1", cmd_envelope1, "convex envelope in dimension one")
    sp.add_argument("--space", required=True)
    sp.add_argument("--gamma", required=True)
    sp.add_argument("--u", required=True)
    sp.add_argument("-o", "--output")
    sp = add("smooth-check", cmd_smooth, "polyhedral smoothness of vertices")
    sp.add_argument("--space", required=True)
    sp = add("ortho-check", cmd_ortho, "orthogonality integral of a candidate envelope")
    sp.add_argument("--space", required=True)
    sp.add_argument("--gamma", required=True)
    sp.add_argument("--u", required=True)
    sp.add_argument("--P", required=True)
    sp = add("example", cmd_example, "write the files of a built-in example")
    sp.add_argument("name", choices=sorted(catalog.GENERATORS))
    sp.add_argument("--epsilon")
    sp.add_argument("--out", required=True)
    sp = add("report", cmd_report, "deterministic report on a built-in example")
    sp.add_argument("name", choices=sorted(catalog.GENERATORS))
    sp.add_argument("--epsilon")
    sp.add_argument("--plot-data", dest="plot_data")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    ws = Workspace()
    out: list[str] = []
    code = 0
    try:
        args.func(args, ws, out)
    except Failed:
        code = 1
    except PolymaError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        code = 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = 1
    if out:
        print("\n".join(out))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
