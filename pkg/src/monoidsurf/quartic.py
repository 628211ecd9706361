"""Classification machinery specific to quartic monoid surfaces.

The tangent cone of a quartic monoid is a ternary cubic, which falls
into nine complex types (nodal, cuspidal, conic+chord, conic+tangent,
three general lines, three concurrent lines, double line + line, triple
line, smooth).  This module detects the type (with its real form),
computes the per-case intersection invariants, assigns the Arnold-style
label of the triple point, checks the constraint table, and assembles a
full report with per-component singularity ledgers.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    CommonFactor,
    ConstraintViolation,
    InputError,
    LedgerMismatch,
    NotACubic,
    NotSingularPoint,
    SingularLineDetected,
)
from .hpoly import (
    HPoly,
    ProjPoint,
    divides,
    exact_div,
    line_through,
    line_parameter_of_point,
    mv_gcd,
    parameterize_line,
    render_hpoly,
    squarefree_decomposition_h,
)
from .intersect import (
    PointClass,
    ProfileEntry,
    common_zeros,
    intersection_multiplicity_at,
    intersection_profile,
    profile_multiplicity_at_class,
    pullback_multiplicities,
)
from .monoid import Monoid, build_monoid, multiplicity_at
from .ratpoly import BinaryForm, UPoly, count_real_roots, rational_roots, squarefree_decomposition
from .singclass import SurfaceSingularityReport, extra_singularities

THREE_REAL_LINES = "three real lines"
ONE_REAL_PLUS_PAIR = "one real line and a conjugate pair"
TWO_REAL_POINTS = "two real singular points"
CONJUGATE_POINTS = "conjugate singular points"


@dataclass(frozen=True)
class Component:
    """One component of the tangent cone (over Q; pairs/orbits stay grouped)."""

    poly: HPoly
    kind: str  # "line" | "conic" | "line-pair" | "line-orbit" | "curve"
    multiplicity: int = 1

    def __repr__(self):
        mult = f"^{self.multiplicity}" if self.multiplicity > 1 else ""
        return f"[{self.kind}: {render_hpoly(self.poly)}{mult}]"


@dataclass
class TangentConeType:
    case: int
    real_form: str = None
    sing_points: list = field(default_factory=list)  # (ProjPoint|PointClass, mult)
    components: list = field(default_factory=list)

    def __repr__(self):
        rf = f", {self.real_form}" if self.real_form else ""
        return f"TangentConeType(case {self.case}{rf})"


CASE_NAMES = {
    1: "nodal irreducible cubic",
    2: "cuspidal cubic",
    3: "conic and a chord",
    4: "conic and a tangent line",
    5: "three general lines",
    6: "three concurrent lines",
    7: "a double line and a line",
    8: "a triple line",
    9: "smooth cubic",
}


# ---------------------------------------------------------------------------
# tangent cone detection
# ---------------------------------------------------------------------------


def _local_quadratic(f3: HPoly, p: ProjPoint):
    """(chart index, quadratic part of the local expansion at p)."""
    chart = max(i for i, c in enumerate(p.coords) if c != 0)
    scale = p.coords[chart]
    deltas = [c / scale for i, c in enumerate(p.coords) if i != chart]
    local = f3.affine(chart).translate(deltas)
    return chart, local.homogeneous_component(2)


def _direction_point(p: ProjPoint, chart: int, v) -> ProjPoint:
    coords = []
    it = iter(v)
    for i in range(3):
        coords.append(Fraction(0) if i == chart else next(it))
    return ProjPoint(coords)


def tangent_cone_type(f3: HPoly) -> TangentConeType:
    """Decide which of the nine cubic types the tangent cone belongs to."""
    if f3.is_zero:
        raise NotACubic("zero input")
    if f3.degree != 3 or len(f3.variables) != 3:
        raise NotACubic(f"expected a ternary cubic, got degree {f3.degree}")
    dec = squarefree_decomposition_h(f3)
    mults = sorted(m for _, m in dec)
    if mults == [3]:
        line = dec[0][0]
        return TangentConeType(8, components=[Component(line, "line", 3)])
    if mults == [1, 2]:
        double = next(h for h, m in dec if m == 2)
        simple = next(h for h, m in dec if m == 1)
        p = _line_meet(double, simple)
        return TangentConeType(
            7,
            sing_points=[(p, 2)],
            components=[Component(double, "line", 2), Component(simple, "line", 1)],
        )
    # squarefree cubic: count singular points
    partials = [g for g in f3.gradient() if not g.is_zero]
    points, classes = common_zeros(partials)
    count = len(points) + sum(c.size for c in classes)
    if count == 0:
        return TangentConeType(9, components=[Component(f3, "curve")])
    if count == 2:
        return _type_case3(f3, points, classes)
    if count == 3:
        return _type_case5(f3, points, classes)
    if count == 1:
        p = points[0]
        m = multiplicity_at(f3, p)
        if m == 3:
            return _type_case6(f3, p)
        chart, quad = _local_quadratic(f3, p)
        a = quad.terms.get((2, 0), Fraction(0))
        b = quad.terms.get((1, 1), Fraction(0))
        c = quad.terms.get((0, 2), Fraction(0))
        disc = b * b - 4 * a * c
        if disc != 0:
            return TangentConeType(
                1, sing_points=[(p, 2)], components=[Component(f3, "curve")]
            )
        v = (-b, 2 * a) if a != 0 else (Fraction(1), Fraction(0))
        line = line_through(p, _direction_point(p, chart, v), f3.variables)
        if divides(line, f3):
            conic = exact_div(f3, line).primitive()
            return TangentConeType(
                4,
                sing_points=[(p, 2)],
                components=[Component(conic, "conic"), Component(line, "line")],
            )
        return TangentConeType(
            2, sing_points=[(p, 2)], components=[Component(f3, "curve")]
        )
    raise NotACubic(f"cubic with {count} singular points cannot occur")


def _line_meet(l1: HPoly, l2: HPoly) -> ProjPoint:
    from .hpoly import line_intersection

    return line_intersection(l1, l2)


def _join_of_class(cls: PointClass, variables) -> HPoly:
    """The (rational) line through the points of a class of size 2."""
    from .linalg import nullspace

    q = cls.minpoly
    rows = []
    for power in range(q.degree):
        rows.append([c.coefficient(power) for c in cls.coords])
    basis = nullspace(rows)
    if not basis:
        raise InputError("class points do not span a line")
    return HPoly.linear_form(variables, basis[0]).primitive()


def _type_case3(f3, points, classes):
    if points:
        q0, q1 = sorted(points, key=lambda p: p.coords)
        line = line_through(q0, q1, f3.variables)
        sing = [(q0, 2), (q1, 2)]
        real_form = TWO_REAL_POINTS
    else:
        cls = classes[0]
        line = _join_of_class(cls, f3.variables)
        sing = [(cls, 2)]
        real_form = TWO_REAL_POINTS if cls.real_count == 2 else CONJUGATE_POINTS
    if not divides(line, f3):
        raise NotACubic("internal: chord of the singular points is not a component")
    conic = exact_div(f3, line).primitive()
    return TangentConeType(
        3,
        real_form=real_form,
        sing_points=sing,
        components=[Component(conic, "conic"), Component(line, "line")],
    )


def _type_case5(f3, points, classes):
    sing = [(p, 2) for p in sorted(points, key=lambda p: p.coords)]
    sing += [(c, 2) for c in classes]
    if len(points) == 3:
        p1, p2, p3 = (p for p, _ in sing)
        lines = [
            line_through(p2, p3, f3.variables),
            line_through(p1, p3, f3.variables),
            line_through(p1, p2, f3.variables),
        ]
        for l in lines:
            if not divides(l, f3):
                raise NotACubic("internal: side of the singular triangle missing")
        comps = [Component(l, "line") for l in lines]
        real_form = THREE_REAL_LINES
    elif len(points) == 1:
        cls = classes[0]
        real_line = _join_of_class(cls, f3.variables)
        if not divides(real_line, f3):
            raise NotACubic("internal: join of the conjugate points missing")
        pair = exact_div(f3, real_line).primitive()
        comps = [Component(real_line, "line"), Component(pair, "line-pair")]
        real_form = (
            THREE_REAL_LINES if cls.real_count == cls.size else ONE_REAL_PLUS_PAIR
        )
    else:
        # all three singular points conjugate: the three lines form one orbit
        comps = [Component(f3, "line-orbit")]
        cls = classes[0]
        real_form = THREE_REAL_LINES if cls.real_count == 3 else ONE_REAL_PLUS_PAIR
    return TangentConeType(5, real_form=real_form, sing_points=sing, components=comps)


def _type_case6(f3, p):
    factors = line_components_through(f3, p)
    comps = []
    nreal = 0
    for poly, kind, mult in factors:
        comps.append(Component(poly, kind, mult))
        if kind == "line":
            nreal += 1
        elif kind == "line-pair":
            nreal += _pair_real_lines(poly)
        elif kind == "line-orbit":
            nreal += _orbit_real_lines(f3, p, poly)
    real_form = THREE_REAL_LINES if nreal == 3 else ONE_REAL_PLUS_PAIR
    return TangentConeType(
        6, real_form=real_form, sing_points=[(p, 3)], components=comps
    )


def _pair_real_lines(pair: HPoly) -> int:
    """Number of real lines in a rank-2 quadratic form (0 or 2).

    Restricts the form to a probe line avoiding the vertex where the
    two lines meet; the two distinct crossing points then show up as a
    squarefree binary quadratic whose real roots are counted exactly."""
    from .ratpoly import is_squarefree

    points = [
        (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (0, 1, 1), (1, 0, 1), (1, 1, 1),
    ]
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            A, B = points[i], points[j]
            coeffs = [
                pair.evaluate(A),
                _polar_value(pair, A, B),
                pair.evaluate(B),
            ]
            u = UPoly(list(reversed(coeffs)))
            if u.degree == 2 and is_squarefree(u):
                return count_real_roots(u)
    raise InputError("degenerate quadratic pair")


def _polar_value(qform: HPoly, A, B):
    """Mixed value q(A+B) - q(A) - q(B) (the polar form at (A, B))."""
    AB = tuple(a + b for a, b in zip(A, B))
    return qform.evaluate(AB) - qform.evaluate(A) - qform.evaluate(B)


def _orbit_real_lines(f3, p, poly) -> int:
    """Real lines among a cubic orbit of lines through p."""
    C, M, N = _pencil_forms(f3, p)
    g = _binary_gcd_all(C)
    return count_real_roots(UPoly(list(reversed(g.coeffs))))


# ---------------------------------------------------------------------------
# pencil restriction through a point
# ---------------------------------------------------------------------------


def _pencil_forms(f3: HPoly, p: ProjPoint):
    """Restrict f3 to the pencil of lines through p.

    Returns (C, M, N): C[j] is the binary form (in the pencil parameter)
    multiplying mu^(3-j) nu^j when f3 is evaluated at mu*p + nu*q(alpha,
    beta); M and N are the coefficient vectors of the two generating
    lines through p, so the line with direction (alpha:beta) is
    alpha*M + beta*N.
    """
    candidates = [
        ProjPoint((1, 0, 0)),
        ProjPoint((0, 1, 0)),
        ProjPoint((0, 0, 1)),
        ProjPoint((1, 1, 0)),
        ProjPoint((1, 0, 1)),
    ]
    pair = None
    for i in range(len(candidates)):
        for j in range(i + 1, len(candidates)):
            A, B = candidates[i], candidates[j]
            det = (
                p[0] * (A[1] * B[2] - A[2] * B[1])
                - p[1] * (A[0] * B[2] - A[2] * B[0])
                + p[2] * (A[0] * B[1] - A[1] * B[0])
            )
            if det != 0:
                pair = (A, B)
                break
        if pair:
            break
    A, B = pair
    # expand f3(mu*p + nu*(alpha*A + beta*B)) exactly, as a polynomial in
    # the four symbols (mu, nu, alpha, beta); the grading is weighted, so
    # the expansion lives in the affine companion type
    from .hpoly import APoly

    images = []
    for i in range(3):
        images.append(
            APoly(
                4,
                {
                    (1, 0, 0, 0): p[i],
                    (0, 1, 1, 0): A[i],
                    (0, 1, 0, 1): B[i],
                },
            )
        )
    composed = APoly(4, {})
    pow_cache = [dict() for _ in images]
    for e, c in f3.terms.items():
        term = APoly(4, {(0, 0, 0, 0): c})
        for i, k in enumerate(e):
            if not k:
                continue
            cc = pow_cache[i]
            if k not in cc:
                acc = images[i]
                pw = 1
                cc[1] = acc
                while pw < k:
                    acc = acc * images[i]
                    pw += 1
                    cc[pw] = acc
            term = term * cc[k]
        composed = composed + term
    buckets = {j: {} for j in range(4)}
    for e, c in composed.terms.items():
        mu, nu, al, be = e
        buckets[nu][(al, be)] = buckets[nu].get((al, be), Fraction(0)) + c
    C = []
    for j in range(4):
        coeffs = [Fraction(0)] * (j + 1)
        for (al, be), c in buckets[j].items():
            coeffs[be] += c
        C.append(BinaryForm(coeffs, j, "alpha", "beta"))
    # raw cross products: the line for direction (alpha:beta) must be exactly
    # alpha*line_M + beta*line_N, so no per-line normalization is allowed here
    line_M = _raw_join(p, A, f3.variables)
    line_N = _raw_join(p, B, f3.variables)
    return C, (A, line_M), (B, line_N)


def _raw_join(p: ProjPoint, q: ProjPoint, variables) -> HPoly:
    a = (
        p[1] * q[2] - p[2] * q[1],
        p[2] * q[0] - p[0] * q[2],
        p[0] * q[1] - p[1] * q[0],
    )
    return HPoly.linear_form(variables, a)


def _binary_gcd(a: BinaryForm, b: BinaryForm) -> BinaryForm:
    """Gcd of two binary forms (includes shared powers of the s-variable)."""
    if a.is_zero:
        return b
    if b.is_zero:
        return a
    s_shared = min(a.s_multiplicity(), b.s_multiplicity())
    from .ratpoly import upoly_gcd

    g = upoly_gcd(a.dehomogenized(), b.dehomogenized())
    coeffs = list(g.coeffs)
    return BinaryForm(coeffs + [Fraction(0)] * s_shared, g.degree + s_shared, a.svar, a.tvar)


def _binary_gcd_all(forms) -> BinaryForm:
    g = None
    for f in forms:
        if f.is_zero:
            continue
        g = f if g is None else _binary_gcd(g, f)
    if g is None:
        raise InputError("all forms vanish")
    return g


def line_components_through(f3: HPoly, p: ProjPoint):
    """Line components of Z(f3) through a singular point p.

    Returns a list of (factor, kind, multiplicity): rational lines come
    out as linear forms, conjugate pairs as rank-2 quadratic forms, and
    full cubic orbits as the cubic itself.
    """
    m = multiplicity_at(f3, p)
    if m < 2:
        raise NotSingularPoint(f"{p} is not a singular point of the cubic")
    C, (A, line_M), (B, line_N) = _pencil_forms(f3, p)
    g = _binary_gcd_all(C)
    out = []
    if g.formal_degree == 0:
        return out
    # factor the direction form g; each root is a component direction
    smult = g.s_multiplicity()
    if smult:  # direction (0:1) = towards B
        line = line_through(p, B, f3.variables)
        out.append((line, "line", smult))
    u = g.dehomogenized()
    for factor, mult in squarefree_decomposition(u):
        rest = factor
        for r in rational_roots(factor):
            rest = rest.exact_div(UPoly((-r, 1), factor.var))
            # direction (1 : r): line = M + r*N
            form = _combine_lines(line_M, line_N, Fraction(1), r)
            out.append((form, "line", mult))
        if rest.degree == 2:
            form = _pair_from_quadratic(rest, line_M, line_N)
            out.append((form, "line-pair", mult))
        elif rest.degree == 3:
            out.append((_orbit_from_cubic(rest, line_M, line_N), "line-orbit", mult))
        elif rest.degree > 3:
            raise InputError("internal: more than three directions for a cubic")
    for form, kind, mult in out:
        if not divides(form, f3):
            raise InputError(
                f"internal: pencil factor {render_hpoly(form)} is not a component"
            )
    return out


def _combine_lines(line_M, line_N, al, be) -> HPoly:
    return (line_M * al + line_N * be).primitive()


def _pair_from_quadratic(q: UPoly, line_M, line_N) -> HPoly:
    """Product of the two lines M + t_j*N over the roots t_j of q.

    With q(t) = c0 + c1 t + c2 t^2, the product (M + t1 N)(M + t2 N)
    scaled by c2 is c2*M^2 - c1*M*N + c0*N^2."""
    c0, c1, c2 = q.coefficient(0), q.coefficient(1), q.coefficient(2)
    form = line_M * line_M * c2 - line_M * line_N * c1 + line_N * line_N * c0
    return form.primitive()


def _orbit_from_cubic(q: UPoly, line_M, line_N) -> HPoly:
    """Product of the three lines M + t_j*N over the roots of a cubic q."""
    c0, c1, c2, c3 = (q.coefficient(i) for i in range(4))
    form = (
        line_M**3 * c3
        - line_M**2 * line_N * c2
        + line_M * line_N**2 * c1
        - line_N**3 * c0
    )
    return form.primitive()


# ---------------------------------------------------------------------------
# case invariants
# ---------------------------------------------------------------------------


@dataclass
class CaseInvariants:
    case: int
    values: dict  # named nonnegative integers, per case
    double_line_mults: list = field(default_factory=list)  # case 7
    line_mults: list = field(default_factory=list)  # case 8
    component_data: list = field(default_factory=list)  # ledgers, see quartic_report
    notes: list = field(default_factory=list)
    vertex_detail: list = field(default_factory=list)  # (where, component, value)

    def __repr__(self):
        return f"CaseInvariants(case {self.case}, {self.values})"


def _oracle(f4, comp, p):
    return intersection_multiplicity_at(comp, f4, p)


def _check_not_singular_at(f4: HPoly, p: ProjPoint, context: str):
    if f4.evaluate(p.coords) != 0:
        return
    grads = [g.evaluate(p.coords) for g in f4.gradient()]
    if all(c == 0 for c in grads):
        raise SingularLineDetected(
            p, f"Z(f_4) is singular at the tangent-cone singular point {p} "
            f"({context}): the monoid has a singular line"
        )


def _check_class_not_singular(f4: HPoly, cls: PointClass, context: str):
    if not cls.vanishes(f4):
        return
    parts = [cls]
    for g in f4.gradient():
        if g.is_zero:
            continue
        nxt = []
        for c in parts:
            on, _ = c.split_by(g)
            if on is not None:
                nxt.append(on)
        parts = nxt
        if not parts:
            return
    raise SingularLineDetected(
        parts[0], f"Z(f_4) is singular on the class {parts[0]} ({context})"
    )


def case_invariants(tc: TangentConeType, f4: HPoly, rng=None) -> CaseInvariants:
    """Compute the named invariants of the detected case and enforce the
    singular-line exclusions of the constraint table."""
    rng = rng if rng is not None else random.Random(0)
    if f4.is_zero or f4.degree != 4:
        raise InputError("f_4 must be a nonzero quartic")
    case = tc.case
    inv = CaseInvariants(case, {})
    if case in (1, 2):
        p = tc.sing_points[0][0]
        _check_not_singular_at(f4, p, CASE_NAMES[case])
        f3 = tc.components[0].poly
        m = _oracle(f4, f3, p)
        if case == 2 and m not in (0, 2, 3):
            raise SingularLineDetected(
                p, f"cusp intersection m={m} implies a singular point of Z(f_4)"
            )
        inv.values["m"] = m
        _ledger_irreducible(tc, f4, inv, rng, excluded_point=p, m=m)
    elif case == 3:
        _invariants_case3(tc, f4, inv, rng)
    elif case == 4:
        _invariants_case4(tc, f4, inv, rng)
    elif case == 5:
        _invariants_case5(tc, f4, inv, rng)
    elif case == 6:
        _invariants_case6(tc, f4, inv, rng)
    elif case == 7:
        _invariants_case7(tc, f4, inv, rng)
    elif case == 8:
        _invariants_case8(tc, f4, inv, rng)
    else:  # case 9
        f3 = tc.components[0].poly
        _ledger_irreducible(tc, f4, inv, rng, excluded_point=None, m=0)
    return inv


def _component_profile(comp: HPoly, f4: HPoly, rng):
    return intersection_profile(comp, f4, rng)


def _ledger_irreducible(tc, f4, inv, rng, excluded_point, m):
    f3 = tc.components[0].poly
    prof = _component_profile(f3, f4, rng)
    excluded = []
    if excluded_point is not None and m > 0:
        entry = prof.entry_at(excluded_point)
        if entry is None or entry.multiplicity != m:
            raise LedgerMismatch(
                f"eliminant multiplicity at {excluded_point} disagrees with the "
                f"oracle value m={m}"
            )
        excluded.append(entry)
    inv.component_data.append(
        {
            "component": f3,
            "kind": "curve",
            "label": CASE_NAMES[tc.case],
            "profile": prof,
            "excluded": excluded,
            "expected_away": 12 - m,
        }
    )


def _invariants_case3(tc, f4, inv, rng):
    conic = next(c.poly for c in tc.components if c.kind == "conic")
    line = next(c.poly for c in tc.components if c.kind == "line")
    prof_conic = _component_profile(conic, f4, rng)
    prof_line = _component_profile(line, f4, rng)
    sing = tc.sing_points
    if len(sing) == 2:
        (q0, _), (q1, _) = sing
        j0, k0 = _oracle(f4, conic, q0), _oracle(f4, line, q0)
        j1, k1 = _oracle(f4, conic, q1), _oracle(f4, line, q1)
        for (p, j, k) in ((q0, j0, k0), (q1, j1, k1)):
            if min(j, k) >= 2:
                raise SingularLineDetected(
                    p,
                    f"min(j,k)={min(j, k)} >= 2 at {p}: these cases imply a "
                    f"singular line on the monoid",
                )
            _check_not_singular_at(f4, p, CASE_NAMES[3])
        excl_conic = [prof_conic.entry_at(q) for q in (q0, q1)]
        excl_line = [prof_line.entry_at(q) for q in (q0, q1)]
        inv.vertex_detail = [
            (q0, conic.primitive(), j0),
            (q0, line.primitive(), k0),
            (q1, conic.primitive(), j1),
            (q1, line.primitive(), k1),
        ]
    else:
        cls = sing[0][0]
        _check_class_not_singular(f4, cls, CASE_NAMES[3])
        j0 = profile_multiplicity_at_class(prof_conic, cls) if cls.vanishes(f4) else 0
        k0 = profile_multiplicity_at_class(prof_line, cls) if cls.vanishes(f4) else 0
        j1, k1 = j0, k0
        if min(j0, k0) >= 2:
            raise SingularLineDetected(
                cls, "min(j,k) >= 2 on the conjugate singular points"
            )
        excl_conic = [_find_class_entry(prof_conic, cls)]
        excl_line = [_find_class_entry(prof_line, cls)]
        inv.vertex_detail = [
            (cls, conic.primitive(), j0),
            (cls, line.primitive(), k0),
        ]
        inv.notes.append("conjugate singular points: j_0=j_1 and k_0=k_1 forced")
    for (j, k, which) in ((j0, k0, "0"), (j1, k1, "1")):
        if (j > 0) != (k > 0):
            raise LedgerMismatch(f"j_{which}>0 and k_{which}>0 must agree")
    inv.values.update({"j_0": j0, "k_0": k0, "j_1": j1, "k_1": k1})
    inv.component_data.append(
        {
            "component": line,
            "kind": "line",
            "label": "chord line",
            "profile": prof_line,
            "excluded": [e for e in excl_line if e],
            "expected_away": 4 - k0 - k1,
        }
    )
    inv.component_data.append(
        {
            "component": conic,
            "kind": "conic",
            "label": "conic",
            "profile": prof_conic,
            "excluded": [e for e in excl_conic if e],
            "expected_away": 8 - j0 - j1,
        }
    )


def _find_class_entry(profile, cls):
    from .intersect import class_projection_minpoly

    try:
        target = class_projection_minpoly(cls, profile.shear)
    except InputError:
        return None
    for e in profile.entries:
        if not e.is_rational and (e.cls.minpoly % target).is_zero:
            return e
    return None


def _invariants_case4(tc, f4, inv, rng):
    conic = next(c.poly for c in tc.components if c.kind == "conic")
    line = next(c.poly for c in tc.components if c.kind == "line")
    p = tc.sing_points[0][0]
    j0 = _oracle(f4, conic, p)
    k0 = _oracle(f4, line, p)
    if j0 >= 3 and k0 >= 3:
        raise SingularLineDetected(
            p, f"j_0={j0}, k_0={k0} with min > 2: Z(f_4) is singular at {p}"
        )
    _check_not_singular_at(f4, p, CASE_NAMES[4])
    if (j0 > 0) != (k0 > 0) or (j0 > 1) != (k0 > 1):
        raise LedgerMismatch("case-4 pairing of j_0 and k_0 violated")
    inv.values.update({"j_0": j0, "k_0": k0})
    inv.vertex_detail = [(p, conic.primitive(), j0), (p, line.primitive(), k0)]
    inv.notes.append(
        "constraint table lists 'j_1>0 <-> k_0>1' for this case; implemented the "
        "case text's 'j_0>1 <-> k_0>1' (suspected typo)"
    )
    prof_line = _component_profile(line, f4, rng)
    prof_conic = _component_profile(conic, f4, rng)
    inv.component_data.append(
        {
            "component": line,
            "kind": "line",
            "label": "tangent line",
            "profile": prof_line,
            "excluded": [e for e in [prof_line.entry_at(p)] if e],
            "expected_away": 4 - k0,
        }
    )
    inv.component_data.append(
        {
            "component": conic,
            "kind": "conic",
            "label": "conic",
            "profile": prof_conic,
            "excluded": [e for e in [prof_conic.entry_at(p)] if e],
            "expected_away": 8 - j0,
        }
    )


def _invariants_case5(tc, f4, inv, rng):
    lines = [c for c in tc.components if c.kind == "line"]
    pairs = [c for c in tc.components if c.kind == "line-pair"]
    orbits = [c for c in tc.components if c.kind == "line-orbit"]
    if orbits:
        cls = tc.sing_points[0][0]
        if cls.vanishes(f4):
            raise InputError(
                "three-general-lines tangent cone with a degree-3 conjugate "
                "singular-point class meeting Z(f_4): individual vertex "
                "invariants are not rationally separable; not supported"
            )
        inv.values.update({"k_2": 0, "k_3": 0, "l_1": 0, "l_3": 0, "m_1": 0, "m_2": 0})
        inv.values.update({"j_k": 0, "j_l": 0, "j_m": 0})
        prof = _component_profile(tc.components[0].poly, f4, rng)
        inv.component_data.append(
            {
                "component": tc.components[0].poly,
                "kind": "line-orbit",
                "label": "three conjugate lines",
                "profile": prof,
                "excluded": [],
                "expected_away": 12,
            }
        )
        return
    if len(lines) == 3:
        p1, p2, p3 = (p for p, _ in tc.sing_points)
        l1, l2, l3 = (c.poly for c in lines)
        # reorder so that line i misses point i
        def misses(l, p):
            return l.evaluate(p.coords) != 0

        order = []
        for p in (p1, p2, p3):
            l = next(c.poly for c in lines if misses(c.poly, p))
            order.append(l)
        l1, l2, l3 = order
        k2, k3 = _oracle(f4, l2, p1), _oracle(f4, l3, p1)
        ll1, ll3 = _oracle(f4, l1, p2), _oracle(f4, l3, p2)
        m1, m2 = _oracle(f4, l1, p3), _oracle(f4, l2, p3)
        checks = [(p1, k2, k3), (p2, ll1, ll3), (p3, m1, m2)]
        for (p, x, y) in checks:
            if x >= 2 and y >= 2:
                raise SingularLineDetected(
                    p, f"both invariants at {p} exceed 1: singular line"
                )
            _check_not_singular_at(f4, p, CASE_NAMES[5])
            if (x > 0) != (y > 0):
                raise LedgerMismatch("vertex invariant positivity pairing violated")
        inv.values.update(
            {"k_2": k2, "k_3": k3, "l_1": ll1, "l_3": ll3, "m_1": m1, "m_2": m2}
        )
        inv.values.update(
            {"j_k": max(k2, k3), "j_l": max(ll1, ll3), "j_m": max(m1, m2)}
        )
        inv.vertex_detail = [
            (p1, l2.primitive(), k2),
            (p1, l3.primitive(), k3),
            (p2, l1.primitive(), ll1),
            (p2, l3.primitive(), ll3),
            (p3, l1.primitive(), m1),
            (p3, l2.primitive(), m2),
        ]
        for comp, label, away in (
            (l1, "line 1", 4 - ll1 - m1),
            (l2, "line 2", 4 - k2 - m2),
            (l3, "line 3", 4 - k3 - ll3),
        ):
            prof = _component_profile(comp, f4, rng)
            excl = []
            for q, xx in ((p1, None), (p2, None), (p3, None)):
                e = prof.entry_at(q)
                if e:
                    excl.append(e)
            inv.component_data.append(
                {
                    "component": comp,
                    "kind": "line",
                    "label": label,
                    "profile": prof,
                    "excluded": excl,
                    "expected_away": away,
                }
            )
        return
    # one real line and a conjugate pair
    real_line = lines[0].poly
    pair = pairs[0].poly
    p_rat = next(p for p, _ in tc.sing_points if isinstance(p, ProjPoint))
    cls = next(p for p, _ in tc.sing_points if isinstance(p, PointClass))
    _check_not_singular_at(f4, p_rat, CASE_NAMES[5])
    _check_class_not_singular(f4, cls, CASE_NAMES[5])
    prof_pair = _component_profile(pair, f4, rng)
    prof_real = _component_profile(real_line, f4, rng)
    vanish = cls.vanishes(f4)
    k2 = profile_multiplicity_at_class(prof_pair, cls) if vanish else 0
    k3 = profile_multiplicity_at_class(prof_real, cls) if vanish else 0
    tot = _oracle(f4, pair, p_rat)
    if tot % 2:
        raise LedgerMismatch("pair intersection at the real vertex must be even")
    m1 = tot // 2
    for (loc, x, y) in ((cls, k2, k3), (p_rat, m1, m1)):
        if x >= 2 and y >= 2:
            raise SingularLineDetected(loc, "both invariants exceed 1: singular line")
        if (x > 0) != (y > 0):
            raise LedgerMismatch("vertex invariant positivity pairing violated")
    inv.values.update(
        {"k_2": k2, "k_3": k3, "l_1": k2, "l_3": k3, "m_1": m1, "m_2": m1}
    )
    inv.values.update({"j_k": max(k2, k3), "j_l": max(k2, k3), "j_m": m1})
    inv.vertex_detail = [
        (cls, pair.primitive(), k2),
        (cls, real_line.primitive(), k3),
        (p_rat, pair.primitive(), 2 * m1),
    ]
    inv.notes.append(
        "conjugate line pair: m_1=m_2, k_2=l_1, k_3=l_3 forced; only "
        "singularities on the real line are real"
    )
    excl_real = [e for e in [_find_class_entry(prof_real, cls)] if e]
    inv.component_data.append(
        {
            "component": real_line,
            "kind": "line",
            "label": "real line",
            "profile": prof_real,
            "excluded": excl_real,
            "expected_away": 4 - 2 * k3,
        }
    )
    excl_pair = [e for e in [_find_class_entry(prof_pair, cls), prof_pair.entry_at(p_rat)] if e]
    inv.component_data.append(
        {
            "component": pair,
            "kind": "line-pair",
            "label": "conjugate line pair",
            "profile": prof_pair,
            "excluded": excl_pair,
            "expected_away": 8 - 2 * k2 - 2 * m1,
        }
    )


def _invariants_case6(tc, f4, inv, rng):
    p = tc.sing_points[0][0]
    _check_not_singular_at(f4, p, CASE_NAMES[6])
    js = []
    data = []
    for comp in tc.components:
        if comp.kind == "line":
            j = _oracle(f4, comp.poly, p)
            js.append(j)
            data.append((comp, j, 4 - j))
            inv.vertex_detail.append((p, comp.poly.primitive(), j))
        elif comp.kind == "line-pair":
            tot = _oracle(f4, comp.poly, p)
            if tot % 2:
                raise LedgerMismatch("pair intersection at the vertex must be even")
            js.extend([tot // 2] * 2)
            data.append((comp, tot // 2, 8 - tot))
            inv.vertex_detail.append((p, comp.poly.primitive(), tot // 2))
        else:  # line-orbit (irreducible cubic of three concurrent lines)
            tot = _oracle(f4, comp.poly, p)
            if tot % 3:
                raise LedgerMismatch("orbit intersection at the vertex not divisible by 3")
            js.extend([tot // 3] * 3)
            data.append((comp, tot // 3, 12 - tot))
    if any(j > 0 for j in js) != all(j > 0 for j in js):
        raise LedgerMismatch("j_1>0 <-> j_2>0 <-> j_3>0 violated")
    if sum(1 for j in js if j > 1) >= 2:
        raise SingularLineDetected(
            p, "two of j_1, j_2, j_3 exceed 1: Z(f_4) is singular at the vertex"
        )
    if any(j > 4 for j in js):
        raise LedgerMismatch("a line meets the quartic in more than 4")
    inv.values.update({"j_1": js[0], "j_2": js[1], "j_3": js[2]})
    if tc.real_form == ONE_REAL_PLUS_PAIR:
        inv.notes.append(
            "conjugate line pair through the vertex: the paired invariants "
            "are equal; only intersections on the real line give real "
            "singularities"
        )
    for comp, j, away in data:
        prof = _component_profile(comp.poly, f4, rng)
        e = prof.entry_at(p)
        inv.component_data.append(
            {
                "component": comp.poly,
                "kind": comp.kind,
                "label": f"{comp.kind} through the vertex",
                "profile": prof,
                "excluded": [e] if e else [],
                "expected_away": away,
            }
        )


def _pullback_on_line(f4, line, exclude_points):
    theta, A, B = parameterize_line(line)
    excluded = [line_parameter_of_point(A, B, p) for p in exclude_points]
    excl, entries = pullback_multiplicities(f4, theta, excluded=excluded)
    return theta, A, B, excl, entries


def _param_entry_class(A, B, entry):
    """PointClass for a pullback class entry on a parameterized line."""
    q = entry.minpoly
    coords = tuple(
        (UPoly.constant(A[i], q.var) + UPoly((0, 1), q.var) * B[i]) % q for i in range(3)
    )
    return PointClass(q, coords, entry.real_count)


def _param_entry_point(A, B, param):
    s, t = param
    return ProjPoint(tuple(s * A[i] + t * B[i] for i in range(3)))


def _check_line_multiple_points(f4, line, entries, A, B, context):
    """Reject when Z(f_4) is singular at a multiple intersection on a
    non-reduced tangent-cone line (every such point lies on a singular line)."""
    for e in entries:
        if e.multiplicity < 2:
            continue
        if e.is_rational:
            p = _param_entry_point(A, B, e.param)
            grads = [g.evaluate(p.coords) for g in f4.gradient()]
            if all(c == 0 for c in grads):
                raise SingularLineDetected(p, f"Z(f_4) singular at {p} ({context})")
        else:
            cls = _param_entry_class(A, B, e)
            _check_class_not_singular(f4, cls, context)


def _invariants_case7(tc, f4, inv, rng):
    double = next(c.poly for c in tc.components if c.multiplicity == 2)
    simple = next(c.poly for c in tc.components if c.multiplicity == 1)
    p = tc.sing_points[0][0]
    j0 = _oracle(f4, simple, p)
    k0 = _oracle(f4, double, p)
    if j0 >= 2 and k0 >= 2:
        raise SingularLineDetected(
            p, f"j_0={j0}, k_0={k0} with min > 1: singular line at the meet"
        )
    if (j0 > 0) != (k0 > 0):
        raise LedgerMismatch("j_0>0 <-> k_0>0 violated")
    if j0 > 4 or k0 > 4:
        raise LedgerMismatch("line-quartic intersection exceeds 4")
    _, A, B, excl, entries = _pullback_on_line(f4, double, [p])
    _check_line_multiple_points(f4, double, entries, A, B, "double line")
    inv.values.update({"j_0": j0, "k_0": k0})
    inv.vertex_detail = [(p, simple.primitive(), j0), (p, double.primitive(), k0)]
    inv.double_line_mults = sorted(
        [e.multiplicity for e in entries for _ in range(e.size)], reverse=True
    )
    prof_simple = _component_profile(simple, f4, rng)
    e = prof_simple.entry_at(p)
    inv.component_data.append(
        {
            "component": simple,
            "kind": "line",
            "label": "simple line",
            "profile": prof_simple,
            "excluded": [e] if e else [],
            "expected_away": 4 - j0,
        }
    )


def _invariants_case8(tc, f4, inv, rng):
    line = tc.components[0].poly
    _, A, B, _, entries = _pullback_on_line(f4, line, [])
    _check_line_multiple_points(f4, line, entries, A, B, "triple line")
    inv.line_mults = sorted(
        [e.multiplicity for e in entries for _ in range(e.size)], reverse=True
    )
    # no other singularities: the tangent cone is singular along the line
    return


# ---------------------------------------------------------------------------
# labels
# ---------------------------------------------------------------------------


def monoid_point_label(tc: TangentConeType, inv: CaseInvariants) -> str:
    """Arnold-style label of the monoid point from case + invariants."""
    case = tc.case
    v = inv.values
    if case == 1:
        m = v["m"]
        return "T_{3,3,4}" if m == 0 else f"T_{{3,3,{3 + m}}}"
    if case == 2:
        m = v["m"]
        if m == 0:
            return "Q_10"
        if m in (2, 3):
            return f"Q_{9 + m}"
        raise ConstraintViolation("case 2 requires m in {0, 2, 3}")
    if case == 3:
        r0 = max(v["j_0"], v["k_0"])
        r1 = max(v["j_1"], v["k_1"])
        lo, hi = sorted((r0, r1))
        return f"T_{{3,{4 + lo},{4 + hi}}}"
    if case == 4:
        return f"S series (j_0={v['j_0']}, k_0={v['k_0']})"
    if case == 5:
        a, b, c = sorted((v["j_k"], v["j_l"], v["j_m"]))
        return f"T_{{{4 + a},{4 + b},{4 + c}}}"
    if case == 6:
        return f"U series (j_1={v['j_1']}, j_2={v['j_2']}, j_3={v['j_3']})"
    if case == 7:
        return (
            f"V series (j_0={v['j_0']}, k_0={v['k_0']}, "
            f"double-line multiplicities {inv.double_line_mults})"
        )
    if case == 8:
        return f"V' series (multiplicities {inv.line_mults})"
    return "P_8"


# ---------------------------------------------------------------------------
# the full report
# ---------------------------------------------------------------------------


@dataclass
class ComponentLedger:
    label: str
    component: HPoly
    kind: str
    expected_sum: int
    away_entries: list
    excluded: list

    def away_sum(self) -> int:
        return sum(e.multiplicity * e.size for e in self.away_entries)


@dataclass
class QuarticReport:
    monoid: Monoid
    tangent_cone: TangentConeType
    invariants: CaseInvariants
    label: str
    surface: SurfaceSingularityReport
    ledgers: list
    other_singularities: list  # (type string, ProfileEntry)
    notes: list
    milnor: int = None

    def case(self) -> int:
        return self.tangent_cone.case


def quartic_report(f3: HPoly, f4: HPoly, rng=None, with_milnor: bool = False) -> QuarticReport:
    """Classify a quartic monoid completely.

    Runs tangent-cone detection and the case invariants first so that
    constraint violations surface as SingularLineDetected, then builds
    the validated monoid, the global singularity report, and the
    per-component ledgers, verifying every expected sum.
    """
    rng = rng if rng is not None else random.Random(0)
    if f3.is_zero or f4.is_zero:
        raise InputError("both parts must be nonzero")
    if f3.degree != 3 or f4.degree != 4:
        raise InputError("quartic monoids need degrees (3, 4)")
    h = mv_gcd(f3, f4)
    if not h.is_constant:
        raise CommonFactor(render_hpoly(h))
    tc = tangent_cone_type(f3)
    inv = case_invariants(tc, f4, rng)
    label = monoid_point_label(tc, inv)
    M = build_monoid(f3, f4, rng)
    surface = extra_singularities(M, rng)
    ledgers = []
    others = []
    for data in inv.component_data:
        away = [
            e for e in data["profile"].entries if not any(e is x for x in data["excluded"])
        ]
        led = ComponentLedger(
            label=data["label"],
            component=data["component"],
            kind=data["kind"],
            expected_sum=data["expected_away"],
            away_entries=away,
            excluded=[(x.point if x.is_rational else x.cls, x.multiplicity) for x in data["excluded"]],
        )
        if led.away_sum() != led.expected_sum:
            raise LedgerMismatch(
                f"component {led.label}: away-sum {led.away_sum()} != "
                f"expected {led.expected_sum}"
            )
        ledgers.append(led)
        for e in away:
            kind = "A_0" if e.multiplicity == 1 else f"A_{e.multiplicity - 1}"
            others.append((kind, e))
    _cross_check_with_surface(tc, others, surface)
    notes = list(inv.notes)
    if tc.case == 2:
        notes.append(
            "constraint table prints T_{9+m} for this case; the series is Q "
            "(Q_10 / Q_{9+m}), which is what this report emits"
        )
    report = QuarticReport(
        monoid=M,
        tangent_cone=tc,
        invariants=inv,
        label=label,
        surface=surface,
        ledgers=ledgers,
        other_singularities=others,
        notes=notes,
    )
    if with_milnor:
        from .singclass import monoid_point_milnor

        report.milnor = monoid_point_milnor(M)
    return report


def _expand(mult, size, real_count):
    pts = [(mult, True)] * real_count + [(mult, False)] * (size - real_count)
    return pts


def _cross_check_with_surface(tc, others, surface: SurfaceSingularityReport):
    """The per-component ledgers and the base-point surface report must agree."""
    if tc.case == 8:
        if surface.records or surface.a0_lines:
            raise LedgerMismatch("triple-line monoid reported extra singularities")
        return
    mine = []
    for kind, e in others:
        mine.extend(_expand(e.multiplicity, e.size, e.real_count))
    theirs = []
    for r in surface.records:
        theirs.extend(_expand(r.m, r.size, r.real_count))
    for e in surface.a0_lines:
        theirs.extend(_expand(1, e.size, e.real_count))
    if sorted(mine) != sorted(theirs):
        raise LedgerMismatch(
            f"component ledgers {sorted(mine)} disagree with the surface "
            f"report {sorted(theirs)}"
        )
