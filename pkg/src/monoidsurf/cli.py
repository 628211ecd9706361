"""Command-line front end: validate | classify | construct | sample.

Reports are JSON (schema shipped as report_schema.json); rationals are
serialized as "p/q" strings so nothing is rounded.  Mesh export is the
single floating-point boundary of the package: surface samples are
converted to floats at write time, with a printed residual bound.

Exit codes: 0 success, 2 domain-invalid input, 3 parse error,
4 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .errors import (
    ConditionUnsatisfiable,
    ConstraintViolation,
    ConstructionFailed,
    GenericityFailure,
    HessianDegenerate,
    InputError,
    LedgerMismatch,
    MonoidError,
    ParseError,
    RoundTripMismatch,
    SpecLedgerMismatch,
)
from .hpoly import HPoly, ProjPoint, parse_graded, parse_hpoly, render_hpoly
from .intersect import PointClass, ProfileEntry
from .monoid import Monoid, build_monoid, from_graded_parts, split_whole_form
from .singclass import SurfaceSingularityReport, extra_singularities, monoid_point_milnor

SCHEMA_VERSION = "1.0"

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_PARSE = 3
EXIT_INTERNAL = 4

PARSE_ERRORS = (ParseError,)
INTERNAL_ERRORS = (LedgerMismatch, RoundTripMismatch, HessianDegenerate)

VAR_ALIASES = {
    ("x", "y", "z"): ("x1", "x2", "x3"),
    ("x", "y", "z", "w"): ("x1", "x2", "x3", "x0"),
}


# ---------------------------------------------------------------------------
# input handling
# ---------------------------------------------------------------------------


def _detect_names(text: str):
    import re

    return set(re.findall(r"[A-Za-z_][A-Za-z_0-9]*", text))


def _parse_part(text: str) -> HPoly:
    """One homogeneous part in x1..x3 (x, y, z accepted as aliases)."""
    names = _detect_names(text)
    if names <= {"x1", "x2", "x3"}:
        return parse_hpoly(text, ("x1", "x2", "x3"))
    if names <= {"x", "y", "z"}:
        h = parse_hpoly(text, ("x", "y", "z"))
        return HPoly(("x1", "x2", "x3"), dict(h.terms))
    raise ParseError(f"unknown variables {sorted(names - {'x1','x2','x3','x','y','z'})}")


def _parse_whole(text: str):
    """A whole surface equation: homogeneous in x0..x3 (w,x,y,z accepted)
    or an affine monoid equation in x1..x3 / x,y,z with the singular
    point at the origin.  Returns (f_lower, f_top)."""
    names = _detect_names(text)
    if names <= {"x0", "x1", "x2", "x3"} and "x0" in names:
        F = parse_hpoly(text, ("x0", "x1", "x2", "x3"))
        return split_whole_form(F)
    if names <= {"x", "y", "z", "w"} and "w" in names:
        h = parse_hpoly(text, ("w", "x", "y", "z"))
        F = HPoly(("x0", "x1", "x2", "x3"), dict(h.terms))
        return split_whole_form(F)
    if names <= {"x1", "x2", "x3"}:
        parts = parse_graded(text, ("x1", "x2", "x3"))
        return from_graded_parts(parts)
    if names <= {"x", "y", "z"}:
        parts = parse_graded(text, ("x", "y", "z"))
        parts = {
            d: HPoly(("x1", "x2", "x3"), dict(h.terms)) for d, h in parts.items()
        }
        return from_graded_parts(parts)
    raise ParseError(f"cannot infer a variable convention from {sorted(names)}")


def _read_input(args):
    """(f_lower, f_top) from --expr pieces or an input file."""
    exprs = list(args.expr or [])
    if args.input:
        with open(args.input, "r", encoding="utf-8") as fh:
            lines = [l.strip() for l in fh.read().splitlines()]
        lines = [l for l in lines if l and not l.startswith("#")]
        exprs.extend(lines)
    if not exprs:
        raise ParseError("no input: pass --expr or --input")
    if len(exprs) == 1:
        return _parse_whole(exprs[0])
    if len(exprs) == 2:
        return _parse_part(exprs[0]), _parse_part(exprs[1])
    raise ParseError("expected one whole equation or exactly two parts")


# ---------------------------------------------------------------------------
# JSON serialization
# ---------------------------------------------------------------------------


def _rat(x) -> str:
    return str(Fraction(x))


def _point_json(p: ProjPoint):
    return [_rat(c) for c in p.coords]


def _class_json(c: PointClass):
    return {
        "minpoly": str(c.minpoly),
        "coordinates_mod_minpoly": [str(u) for u in c.coords],
        "size": c.size,
        "real_count": c.real_count,
    }


def _entry_json(e: ProfileEntry):
    return {
        "multiplicity": e.multiplicity,
        "point": _point_json(e.point) if e.is_rational else None,
        "class": None if e.is_rational else _class_json(e.cls),
        "size": e.size,
        "real_count": e.real_count,
    }


def _record_json(r):
    return {
        "complex_type": r.complex_type,
        "m": r.m,
        "real_type": r.real_type,
        "size": r.size,
        "real_count": r.real_count,
        "base_point": _point_json(r.base_point) if r.is_rational else None,
        "base_class": None if r.is_rational else _class_json(r.base_class),
        "location": _point_json(r.location) if r.location is not None else None,
        "location_x0": str(r.location_x0) if r.location_x0 is not None else None,
    }


def _surface_json(rep: SurfaceSingularityReport, milnor=None):
    return {
        "degree": rep.degree,
        "monoid_point": {
            "multiplicity": rep.monoid_point_multiplicity,
            "milnor_number": milnor,
        },
        "bezout_total": rep.bezout_total(),
        "singularities": [_record_json(r) for r in rep.records],
        "a0_lines": [_entry_json(e) for e in rep.a0_lines],
        "cone_singular_lines": [_entry_json(e) for e in rep.cone_singular_lines],
        "base_points": [_entry_json(e) for e, _ in rep.ledger],
        "extra_singularity_count": rep.record_count(),
        "bound": rep.bound(),
    }


def _quartic_json(qrep):
    from .quartic import CASE_NAMES

    inv = qrep.invariants
    return {
        "case": qrep.case(),
        "case_name": CASE_NAMES[qrep.case()],
        "real_form": qrep.tangent_cone.real_form,
        "label": qrep.label,
        "invariants": {k: v for k, v in sorted(inv.values.items())},
        "double_line_multiplicities": inv.double_line_mults,
        "triple_line_multiplicities": inv.line_mults,
        "components": [
            {
                "label": led.label,
                "component": render_hpoly(led.component),
                "kind": led.kind,
                "expected_sum": led.expected_sum,
                "away_sum": led.away_sum(),
                "away": [_entry_json(e) for e in led.away_entries],
                "excluded": [
                    {
                        "where": _point_json(w) if isinstance(w, ProjPoint) else _class_json(w),
                        "multiplicity": m,
                    }
                    for w, m in led.excluded
                ],
            }
            for led in qrep.ledgers
        ],
        "other_singularities": [
            {"type": kind, "entry": _entry_json(e)} for kind, e in qrep.other_singularities
        ],
        "notes": qrep.notes,
    }


def _emit(doc, args):
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if getattr(args, "json", None):
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _base_doc(args, M=None):
    doc = {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "monoidsurf", "version": __version__},
        "seed": args.seed,
        "notes": [],
        "timing_ms": None,
    }
    if M is not None:
        doc["input"] = {
            "f_lower": render_hpoly(M.lower),
            "f_top": render_hpoly(M.top),
            "degree": M.degree,
            "variables": list(M.lower.variables),
        }
    return doc


def _fail_doc(args, exc):
    doc = _base_doc(args)
    doc["validity"] = {
        "valid": False,
        "level": None,
        "error_kind": type(exc).__name__,
        "error": str(exc),
    }
    return doc


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_validate(args) -> int:
    import random

    t0 = time.monotonic()
    try:
        lower, top = _read_input(args)
    except PARSE_ERRORS + (InputError,) as exc:
        _emit(_fail_doc(args, exc), args)
        return EXIT_PARSE
    try:
        M = build_monoid(lower, top, random.Random(args.seed))
    except MonoidError as exc:
        doc = _base_doc(args)
        doc["input"] = {
            "f_lower": render_hpoly(lower),
            "f_top": render_hpoly(top),
            "degree": top.degree,
            "variables": list(lower.variables),
        }
        doc["validity"] = {
            "valid": False,
            "level": None,
            "error_kind": type(exc).__name__,
            "error": str(exc),
        }
        _emit(doc, args)
        return EXIT_INVALID
    doc = _base_doc(args, M)
    doc["validity"] = {"valid": True, "level": M.level, "error_kind": None, "error": None}
    if args.timing:
        doc["timing_ms"] = round(1000 * (time.monotonic() - t0), 3)
    _emit(doc, args)
    return EXIT_OK


def cmd_classify(args) -> int:
    import random

    t0 = time.monotonic()
    try:
        lower, top = _read_input(args)
    except PARSE_ERRORS + (InputError,) as exc:
        _emit(_fail_doc(args, exc), args)
        return EXIT_PARSE
    rng = random.Random(args.seed)
    try:
        if top.degree == 4:
            from .quartic import quartic_report

            qrep = quartic_report(lower, top, rng, with_milnor=not args.no_milnor)
            M = qrep.monoid
            surface = qrep.surface
            milnor = qrep.milnor
        else:
            M = build_monoid(lower, top, rng)
            surface = extra_singularities(M, rng)
            qrep = None
            milnor = monoid_point_milnor(M) if not args.no_milnor and M.degree <= 5 else None
    except INTERNAL_ERRORS as exc:
        _emit(_fail_doc(args, exc), args)
        return EXIT_INTERNAL
    except MonoidError as exc:
        _emit(_fail_doc(args, exc), args)
        return EXIT_INVALID
    doc = _base_doc(args, M)
    doc["validity"] = {"valid": True, "level": M.level, "error_kind": None, "error": None}
    doc["surface"] = _surface_json(surface, milnor)
    if qrep is not None:
        doc["quartic"] = _quartic_json(qrep)
        doc["notes"].extend(qrep.notes)
    if args.timing:
        doc["timing_ms"] = round(1000 * (time.monotonic() - t0), 3)
    if args.figure:
        _render_figure(M, surface, args.figure, grid=48, reach=2.0)
        doc["figure"] = args.figure
    _emit(doc, args)
    return EXIT_OK


def _load_spec(path):
    from .construct import ConstructionSpec

    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    points = {}
    for key, entries in (raw.get("points") or {}).items():
        out = []
        for param, mult in entries:
            if param == "auto":
                out.append(("auto", int(mult)))
            else:
                a, b = param
                out.append(((Fraction(str(a)), Fraction(str(b))), int(mult)))
        points[key] = out
    return ConstructionSpec(
        kind=raw["kind"],
        degree=int(raw.get("degree", 4)),
        epsilon=Fraction(str(raw.get("epsilon", "1/4"))),
        case=raw.get("case"),
        m=raw.get("m"),
        vertex={k: int(v) for k, v in (raw.get("vertex") or {}).items()},
        points=points,
        ratio=Fraction(str(raw.get("ratio", 1))),
    )


def cmd_construct(args) -> int:
    import random

    from .construct import build_quartic_case, extreme_a_monoid, max_real_nodes_monoid

    t0 = time.monotonic()
    try:
        spec = _load_spec(args.spec)
    except (KeyError, ValueError, json.JSONDecodeError) as exc:
        _emit(_fail_doc(args, ParseError(f"bad spec file: {exc}")), args)
        return EXIT_PARSE
    rng = random.Random(args.seed)
    try:
        if spec.kind == "EXTREME_A":
            M = extreme_a_monoid(spec.degree)
            surface = extra_singularities(M, rng)
            qrep = None
        elif spec.kind == "MAX_REAL_NODES":
            M = max_real_nodes_monoid(spec.degree, spec.epsilon, rng)
            surface = extra_singularities(M, rng)
            qrep = None
        elif spec.kind == "QUARTIC_CASE":
            qrep = build_quartic_case(spec, rng)
            M = qrep.monoid
            surface = qrep.surface
        else:
            raise SpecLedgerMismatch(f"unknown construction kind {spec.kind!r}")
    except INTERNAL_ERRORS as exc:
        _emit(_fail_doc(args, exc), args)
        return EXIT_INTERNAL
    except MonoidError as exc:
        _emit(_fail_doc(args, exc), args)
        return EXIT_INVALID
    poly_text = f"{render_hpoly(M.lower)}\n{render_hpoly(M.top)}\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(poly_text)
    doc = _base_doc(args, M)
    doc["validity"] = {"valid": True, "level": M.level, "error_kind": None, "error": None}
    doc["construction"] = {
        "kind": spec.kind,
        "output": args.out,
        "f_lower": render_hpoly(M.lower),
        "f_top": render_hpoly(M.top),
    }
    doc["surface"] = _surface_json(surface)
    if qrep is not None:
        doc["quartic"] = _quartic_json(qrep)
    if args.timing:
        doc["timing_ms"] = round(1000 * (time.monotonic() - t0), 3)
    _emit(doc, args)
    return EXIT_OK


# ---------------------------------------------------------------------------
# sampling and figures
# ---------------------------------------------------------------------------


def _sample_points(M: Monoid, grid: int, chart: int, reach: Fraction):
    """Exact surface points theta_F(a) over a grid of the chosen chart.

    Returns (points, skipped): points as affine (x1/x0, x2/x0, x3/x0)
    Fraction triples; base points and points at infinity are skipped."""
    pts = []
    skipped = 0
    if grid < 1:
        return pts, skipped
    step = (2 * Fraction(reach)) / max(grid - 1, 1)
    values = [-Fraction(reach) + k * step for k in range(grid)] or [Fraction(0)]
    for u in values:
        for v in values:
            coords = [Fraction(0)] * 3
            coords[chart] = Fraction(1)
            rest = [i for i in range(3) if i != chart]
            coords[rest[0]] = u
            coords[rest[1]] = v
            fl = M.lower.evaluate(coords)
            ft = M.top.evaluate(coords)
            if fl == 0 and ft == 0:
                skipped += 1  # base point: parameterization undefined
                continue
            if ft == 0:
                skipped += 1  # maps to the hyperplane at infinity
                continue
            x0 = ft
            tail = [-fl * c for c in coords]
            pts.append(tuple(t / x0 for t in tail))
    return pts, skipped


def _residual_bound(M: Monoid, pts) -> float:
    F = M.whole()
    grads = F.gradient()
    worst = 0.0
    for p in pts:
        fp = [1.0] + [float(c) for c in p]
        val = abs(_eval_float(F, fp))
        norm = sum(_eval_float(g, fp) ** 2 for g in grads) ** 0.5
        worst = max(worst, val / (1.0 + norm))
    return worst


def _eval_float(h: HPoly, fp):
    acc = 0.0
    for e, c in h.terms.items():
        t = float(c)
        for v, k in zip(fp, e):
            if k:
                t *= v**k
        acc += t
    return acc


def _write_mesh(path, fmt, pts):
    with open(path, "w", encoding="utf-8") as fh:
        if fmt == "csv":
            fh.write("x,y,z\n")
            for p in pts:
                fh.write(",".join(repr(float(c)) for c in p) + "\n")
        else:
            for p in pts:
                fh.write("v " + " ".join(repr(float(c)) for c in p) + "\n")


def _render_figure(M, surface, path, grid, reach, pts=None):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    if pts is None:
        pts, _ = _sample_points(M, grid, 2, Fraction(reach))
    fig = plt.figure(figsize=(7, 6))
    ax = fig.add_subplot(111, projection="3d")
    if pts:
        xs = [float(p[0]) for p in pts]
        ys = [float(p[1]) for p in pts]
        zs = [float(p[2]) for p in pts]
        ax.scatter(xs, ys, zs, s=2, alpha=0.4, linewidths=0)
    if surface is not None:
        sx, sy, sz = [], [], []
        for r in surface.records:
            if r.location is not None and r.location[0] != 0:
                c = r.location
                sx.append(float(c[1] / c[0]))
                sy.append(float(c[2] / c[0]))
                sz.append(float(c[3] / c[0]))
        ax.scatter([0.0], [0.0], [0.0], s=60, marker="^", label="monoid point")
        if sx:
            ax.scatter(sx, sy, sz, s=40, marker="o", label="extra singularities")
        ax.legend(loc="upper left", fontsize=8)
    ax.set_xlabel("x1/x0")
    ax.set_ylabel("x2/x0")
    ax.set_zlabel("x3/x0")
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def cmd_sample(args) -> int:
    import random

    try:
        lower, top = _read_input(args)
    except PARSE_ERRORS + (InputError,) as exc:
        _emit(_fail_doc(args, exc), args)
        return EXIT_PARSE
    try:
        M = build_monoid(lower, top, random.Random(args.seed))
    except MonoidError as exc:
        _emit(_fail_doc(args, exc), args)
        return EXIT_INVALID
    reach = Fraction(args.range)
    pts, skipped = _sample_points(M, args.grid, args.chart, reach)
    out = args.out or f"sample.{args.format}"
    _write_mesh(out, args.format, pts)
    bound = _residual_bound(M, pts) if pts else 0.0
    doc = _base_doc(args, M)
    doc["sample"] = {
        "output": out,
        "format": args.format,
        "grid": args.grid,
        "chart": args.chart,
        "points": len(pts),
        "skipped": skipped,
        "residual_bound": bound,
    }
    figure = None
    if not args.no_figure:
        stem = out.rsplit(".", 1)[0]
        figure = stem + ".png"
        _render_figure(M, None, figure, args.grid, float(reach), pts=pts)
        doc["sample"]["figure"] = figure
    print(f"wrote {len(pts)} points to {out} (skipped {skipped}); "
          f"float residual bound {bound:.3e}" + (f"; figure {figure}" if figure else ""))
    if args.json:
        _emit(doc, args)
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def _add_input_args(p):
    p.add_argument("--expr", "-e", action="append", help="inline polynomial (repeat for split form)")
    p.add_argument("--input", "-i", help="input file: one whole equation or two lines f_{d-1}, f_d")
    p.add_argument("--seed", type=int, default=0, help="seed for the shear source (default 0)")
    p.add_argument("--json", help="write the JSON report to this path")
    p.add_argument("--timing", action="store_true", help="include timing in the report")


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="monoidsurf",
        description="Exact validation, classification, and construction of monoid surfaces.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p_val = sub.add_parser("validate", help="validate a defining pair definition")
    _add_input_args(p_val)

    p_cls = sub.add_parser("classify", help="full singularity classification")
    _add_input_args(p_cls)
    p_cls.add_argument("--figure", help="render a matplotlib figure of the surface to this path")
    p_cls.add_argument("--no-milnor", action="store_true", help="skip the monoid-point Milnor number")

    p_con = sub.add_parser("construct", help="build a monoid from a construction spec")
    p_con.add_argument("spec", help="JSON construction spec file")
    p_con.add_argument("--out", help="write the resulting pair (two-line text) here")
    p_con.add_argument("--seed", type=int, default=0)
    p_con.add_argument("--json", help="write the JSON report to this path")
    p_con.add_argument("--timing", action="store_true")

    p_smp = sub.add_parser("sample", help="sample the natural parameterization to a mesh file")
    _add_input_args(p_smp)
    p_smp.add_argument("--grid", type=int, default=50, help="grid resolution per axis (default 50)")
    p_smp.add_argument("--chart", type=int, default=2, choices=(0, 1, 2), help="affine chart of the parameter plane")
    p_smp.add_argument("--format", choices=("obj", "csv"), default="obj")
    p_smp.add_argument("--range", default="2", help="half-width of the parameter grid (rational)")
    p_smp.add_argument("--out", help="output path (default sample.<format>)")
    p_smp.add_argument("--no-figure", action="store_true", help="skip the rendered PNG")

    args = ap.parse_args(argv)
    try:
        if args.command == "validate":
            return cmd_validate(args)
        if args.command == "classify":
            return cmd_classify(args)
        if args.command == "construct":
            return cmd_construct(args)
        if args.command == "sample":
            return cmd_sample(args)
    except INTERNAL_ERRORS as exc:
        sys.stderr.write(f"internal inconsistency: {exc}\n")
        return EXIT_INTERNAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
