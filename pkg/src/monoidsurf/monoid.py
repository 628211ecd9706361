"""The monoid hypersurface abstraction.

A monoid of degree d is written x0*f_{d-1} + f_d with both parts in the
variables x1..xn; the distinguished point O = (1:0:...:0) then has
multiplicity d-1.  This module validates the defining pair, evaluates
point multiplicities, runs the natural parameterization and projection,
and locates the singular points sitting over base points.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    BasePoint,
    CannotProjectApex,
    CommonFactor,
    CommonSingularPoint,
    DegreeMismatch,
    InputError,
    NotABasePoint,
    NotAMonoid,
    ZeroPart,
)
from .hpoly import HPoly, ProjPoint, mv_gcd, render_hpoly, squarefree_decomposition_h
from .intersect import IntersectionProfile, common_zeros, intersection_profile

BASIC = "BASIC"
SURFACE_NORMALIZED = "SURFACE_NORMALIZED"

SMOOTH = "SMOOTH"
SINGULAR = "SINGULAR"
NOT_ON_SURFACE = "NOT_ON_SURFACE"


@dataclass(frozen=True)
class Monoid:
    """Validated pair (f_{d-1}, f_d) with the certificate level reached."""

    lower: HPoly  # f_{d-1}, in x1..xn
    top: HPoly  # f_d, in x1..xn
    level: str

    @property
    def n(self) -> int:
        return len(self.lower.variables)

    @property
    def degree(self) -> int:
        return self.top.degree

    @property
    def apex(self) -> ProjPoint:
        return ProjPoint((1,) + (0,) * self.n)

    def ambient_variables(self):
        return ("x0",) + tuple(self.lower.variables)

    def whole(self) -> HPoly:
        """F = x0*f_{d-1} + f_d in the ambient variables x0..xn."""
        out = {}
        for e, c in self.lower.terms.items():
            out[(1,) + e] = c
        for e, c in self.top.terms.items():
            out[(0,) + e] = out.get((0,) + e, Fraction(0)) + c
        return HPoly(self.ambient_variables(), out)

    def __repr__(self):
        return (
            f"Monoid(d={self.degree}, n={self.n}, "
            f"f{self.degree - 1}={render_hpoly(self.lower)}, "
            f"f{self.degree}={render_hpoly(self.top)}, {self.level})"
        )


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


def _singular_locus(f: HPoly, rng):
    """(curve components of the singular locus, isolated points, classes)."""
    decomposition = squarefree_decomposition_h(f)
    curves = [h for h, m in decomposition if m >= 2]
    reduced = HPoly.constant(f.variables, 1)
    for h, _ in decomposition:
        reduced = reduced * h
    if reduced.degree <= 1:
        return curves, [], []
    partials = [p for p in reduced.gradient() if not p.is_zero]
    if len(partials) < 2:
        # reduced depends on a single variable: a repeated line, impossible here
        return curves, [], []
    points, classes = common_zeros(partials, rng)
    return curves, points, classes


def common_singular_points(f: HPoly, g: HPoly, rng=None):
    """Common singular points of Z(f) and Z(g): (points, classes, curve flags)."""
    rng = rng if rng is not None else random.Random(0)
    cf, pf, clf = _singular_locus(f, rng)
    cg, pg, clg = _singular_locus(g, rng)
    points = [p for p in pf if p in pg]
    classes = [c for c in clf if any(c.same_class(d) for d in clg)]
    # points of one locus sitting on curve components of the other
    for curve in cf:
        for p in pg:
            if curve.evaluate(p.coords) == 0 and p not in points:
                points.append(p)
        for c in clg:
            on, _ = c.split_by(curve)
            if on is not None and not any(on.same_class(d) for d in classes):
                classes.append(on)
    for curve in cg:
        for p in pf:
            if curve.evaluate(p.coords) == 0 and p not in points:
                points.append(p)
        for c in clf:
            on, _ = c.split_by(curve)
            if on is not None and not any(on.same_class(d) for d in classes):
                classes.append(on)
    return points, classes


def build_monoid(lower: HPoly, top: HPoly, rng=None, surface_check: bool = True) -> Monoid:
    """Validate a defining pair and return the certified monoid.

    Checks: both parts nonzero, degrees consecutive with d >= 3, parts
    coprime; for surfaces (n = 3) additionally that the tangent cone and
    the intersection with infinity share no singular point.
    """
    if lower.is_zero or top.is_zero:
        raise ZeroPart("both f_{d-1} and f_d must be nonzero")
    if lower.variables != top.variables:
        raise InputError("the two parts use different variable lists")
    if top.degree != lower.degree + 1:
        raise DegreeMismatch(
            f"degrees {lower.degree} and {top.degree} do not differ by one"
        )
    if top.degree < 3:
        raise InputError("monoid degree must be at least 3")
    h = mv_gcd(lower, top)
    if not h.is_constant:
        raise CommonFactor(render_hpoly(h))
    n = len(lower.variables)
    level = BASIC
    if n == 3 and surface_check:
        pts, classes = common_singular_points(lower, top, rng)
        if pts:
            raise CommonSingularPoint(pts[0])
        if classes:
            raise CommonSingularPoint(classes[0])
        level = SURFACE_NORMALIZED
    return Monoid(lower, top, level)


def split_whole_form(F: HPoly):
    """Split a form in x0..xn into (f_{d-1}, f_d); reject non-monoid shapes."""
    if F.is_zero:
        raise ZeroPart("zero polynomial")
    if F.degree_in(0) > 1:
        raise NotAMonoid(
            "degree in x0 exceeds 1: the point (1:0:...:0) has multiplicity "
            "below d-1 (not a normalized monoid; non-rational monoid points "
            "are out of scope)"
        )
    if F.degree_in(0) < 1:
        raise NotAMonoid("x0 does not occur: (1:0:...:0) has multiplicity d")
    rest = F.variables[1:]
    low, high = {}, {}
    for e, c in F.terms.items():
        if e[0] == 1:
            low[e[1:]] = c
        else:
            high[e[1:]] = c
    lower = HPoly(rest, low)
    top = HPoly(rest, high)
    if top.is_zero:
        raise ZeroPart("f_d vanishes: F is x0 times a cone")
    return lower, top


def from_graded_parts(parts):
    """Build (f_{d-1}, f_d) from {degree: HPoly} of an affine monoid equation."""
    degs = sorted(parts)
    if len(degs) != 2 or degs[1] != degs[0] + 1:
        raise NotAMonoid(
            f"affine equation has homogeneous parts of degrees {degs}; a monoid "
            "with the singular point at the origin needs exactly the two "
            "consecutive top degrees"
        )
    return parts[degs[0]], parts[degs[1]]


# ---------------------------------------------------------------------------
# point operations
# ---------------------------------------------------------------------------


def multiplicity_at(F: HPoly, p: ProjPoint) -> int:
    """Multiplicity of Z(F) at p: order of vanishing in an affine chart."""
    if F.is_zero:
        raise InputError("zero polynomial")
    chart = max(i for i, c in enumerate(p.coords) if c != 0)
    scale = p.coords[chart]
    deltas = [c / scale for i, c in enumerate(p.coords) if i != chart]
    local = F.affine(chart).translate(deltas)
    md = local.min_degree()
    return 0 if md < 0 else md


def natural_param(M: Monoid, a: ProjPoint) -> ProjPoint:
    """theta_F(a) = (f_d(a) : -f_{d-1}(a) a_1 : ... : -f_{d-1}(a) a_n).

    Defined away from base points; maps the tangent cone minus the
    intersection with infinity to the monoid point itself.
    """
    if len(a) != M.n:
        raise InputError("parameter point has the wrong dimension")
    fl = M.lower.evaluate(a.coords)
    ft = M.top.evaluate(a.coords)
    if fl == 0 and ft == 0:
        raise BasePoint(f"{a} is a base point; the parameterization is undefined")
    coords = (ft,) + tuple(-fl * ai for ai in a.coords)
    point = ProjPoint(coords)
    if M.whole().evaluate(point.coords) != 0:
        raise InputError("internal: parameterized point failed the exact check")
    return point


def project_from_apex(p: ProjPoint) -> ProjPoint:
    """Projection from the monoid point: drop the x0 coordinate."""
    if all(c == 0 for c in p.coords[1:]):
        raise CannotProjectApex("cannot project the monoid point from itself")
    return ProjPoint(p.coords[1:])


def base_point_profile(M: Monoid, rng=None) -> IntersectionProfile:
    """Intersection profile of the tangent cone with infinity (n = 3 only).

    The entries are the base points; their multiplicities sum to d(d-1)."""
    if M.n != 3:
        raise InputError("base point profiles are computed for surfaces only")
    prof = intersection_profile(M.lower, M.top, rng)
    assert prof.total() == M.degree * (M.degree - 1)
    return prof


def classify_surface_point(M: Monoid, p: ProjPoint) -> str:
    """SMOOTH / SINGULAR / NOT_ON_SURFACE via the gradient criterion."""
    if len(p) != M.n + 1:
        raise InputError("expected an ambient point")
    if M.whole().evaluate(p.coords) != 0:
        return NOT_ON_SURFACE
    tail = p.coords[1:]
    if M.lower.evaluate(tail) != 0:
        return SMOOTH
    gl = [d.evaluate(tail) for d in M.lower.gradient()]
    gt = [d.evaluate(tail) for d in M.top.gradient()]
    if all(p.coords[0] * a + b == 0 for a, b in zip(gl, gt)):
        return SINGULAR
    return SMOOTH


def singular_point_on_line(M: Monoid, b: ProjPoint):
    """The singular point other than O on the line L_b, when one exists.

    Solves s*grad f_{d-1}(b) + t*grad f_d(b) = 0; a solution with t != 0
    yields (-s/t : b).  Returns None when the gradients are independent.
    """
    if len(b) != M.n:
        raise InputError("expected a base point of the projection plane")
    if M.lower.evaluate(b.coords) != 0 or M.top.evaluate(b.coords) != 0:
        raise NotABasePoint(f"{b} is not a base point")
    gl = [d.evaluate(b.coords) for d in M.lower.gradient()]
    gt = [d.evaluate(b.coords) for d in M.top.gradient()]
    if all(c == 0 for c in gl):
        # the tangent cone is singular at b; validity rules out a singular
        # line, so the only combination killing both is t = 0: no point
        return None
    for i in range(len(gl)):
        for j in range(i + 1, len(gl)):
            if gl[i] * gt[j] - gl[j] * gt[i] != 0:
                return None  # gradients independent: L_b has no extra singularity
    # dependent with grad f_{d-1} != 0: x0 * grad f_{d-1}(b) + grad f_d(b) = 0
    k = next(i for i, c in enumerate(gl) if c != 0)
    x0 = -gt[k] / gl[k]
    point = ProjPoint((x0,) + tuple(b.coords))
    if classify_surface_point(M, point) != SINGULAR:
        raise InputError("internal: candidate singular point failed the criterion")
    return point
