"""Enumerate and type the singularities of a monoid surface other than O.

A base point b carries an extra singularity exactly when the tangent
cone is nonsingular at b and I_b(f_{d-1}, f_d) > 1; that singularity is
of complex type A_{m-1} with m the intersection number, and of real
type A^- whenever it is real.  Bookkeeping: base points where the
tangent cone is singular give no singularity (they are recorded as
cone-singular lines), and transversal base points give plain lines on
the surface with O as the only singular point (A_0 lines).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import HessianDegenerate, InputError, LedgerMismatch
from .hpoly import HPoly, ProjPoint
from .intersect import PointClass, ProfileEntry, milnor_number
from .monoid import Monoid, base_point_profile, singular_point_on_line
from .ratpoly import UPoly, upoly_gcd


@dataclass(frozen=True)
class SingRecord:
    """One singularity other than O, sitting over a base point (or class)."""

    m: int  # I_b(f_{d-1}, f_d) >= 2
    base_point: ProjPoint = None
    base_class: PointClass = None
    location: ProjPoint = None  # ambient point, when the base point is rational
    location_x0: UPoly = None  # x0 mod the base class minpoly, for classes

    @property
    def is_rational(self) -> bool:
        return self.base_point is not None

    @property
    def size(self) -> int:
        return 1 if self.is_rational else self.base_class.size

    @property
    def real_count(self) -> int:
        return 1 if self.is_rational else self.base_class.real_count

    @property
    def complex_type(self) -> str:
        return f"A_{self.m - 1}"

    @property
    def real_type(self):
        """Real singularities on a real monoid are of type A^- (never A^+)."""
        if self.real_count == 0:
            return None
        return f"A_{self.m - 1}^-"

    def __repr__(self):
        where = self.location if self.is_rational else self.base_class
        return f"<{self.complex_type} over {where}>"


@dataclass
class SurfaceSingularityReport:
    degree: int
    monoid_point_multiplicity: int
    records: list
    a0_lines: list  # ProfileEntry items with I_b = 1
    cone_singular_lines: list  # (entry-like, multiplicity): no singularity there
    ledger: list  # (entry, I_b) for every base class
    profile_shear: tuple = None

    def record_count(self) -> int:
        return sum(r.size for r in self.records)

    def bezout_total(self) -> int:
        return sum(mult * e.size for e, mult in self.ledger)

    def bound(self) -> int:
        d = self.degree
        return d * (d - 1) // 2


def extra_singularities(M: Monoid, rng=None) -> SurfaceSingularityReport:
    """Classify every singularity of the surface away from the monoid point."""
    rng = rng if rng is not None else random.Random(0)
    prof = base_point_profile(M, rng)
    d = M.degree
    records, a0, cone_lines, ledger = [], [], [], []
    grad_lower = M.lower.gradient()
    for entry in prof.entries:
        ledger.append((entry, entry.multiplicity))
        if entry.is_rational:
            b = entry.point
            gl = [g.evaluate(b.coords) for g in grad_lower]
            if all(c == 0 for c in gl):
                cone_lines.append(entry)
                continue
            if entry.multiplicity == 1:
                a0.append(entry)
                continue
            location = singular_point_on_line(M, b)
            if location is None:
                raise LedgerMismatch(
                    f"base point {b} has I={entry.multiplicity} but no singular point"
                )
            records.append(
                SingRecord(entry.multiplicity, base_point=b, location=location)
            )
            continue
        # class entry: split by the vanishing of the tangent-cone gradient
        parts = [entry.cls]
        for g in grad_lower:
            if g.is_zero:
                continue
            nxt = []
            for c in parts:
                on, off = c.split_by(g)
                if on is not None:
                    nxt.append(on)
                if off is not None:
                    nxt.append(off)
            parts = nxt
        for part in parts:
            smooth = any(
                not part.eval_mod(g).is_zero for g in grad_lower if not g.is_zero
            )
            if not smooth:
                cone_lines.append(ProfileEntry(entry.multiplicity, cls=part))
                continue
            if entry.multiplicity == 1:
                a0.append(ProfileEntry(entry.multiplicity, cls=part))
                continue
            x0 = _class_x0(M, part)
            records.append(
                SingRecord(entry.multiplicity, base_class=part, location_x0=x0)
            )
    report = SurfaceSingularityReport(
        degree=d,
        monoid_point_multiplicity=d - 1,
        records=records,
        a0_lines=a0,
        cone_singular_lines=cone_lines,
        ledger=ledger,
        profile_shear=prof.shear,
    )
    if report.bezout_total() != d * (d - 1):
        raise LedgerMismatch(
            f"base-point multiplicities sum to {report.bezout_total()}, "
            f"expected {d * (d - 1)}"
        )
    if report.record_count() > report.bound():
        raise LedgerMismatch("more extra singularities than the degree allows")
    if report.record_count() == report.bound() and any(r.m != 2 for r in records):
        raise LedgerMismatch("attained the singularity bound with a non-node")
    return report


def _class_x0(M: Monoid, cls: PointClass):
    """x0-coordinate of the singular point over an irrational base class.

    Solves x0 * grad f_{d-1} + grad f_d = 0 modulo the class minpoly;
    returns a UPoly (x0 as a polynomial in the class generator).
    """
    q = cls.minpoly
    for i in range(M.n):
        gl = cls.eval_mod(M.lower.partial(i))
        if gl.is_zero:
            continue
        gt = cls.eval_mod(M.top.partial(i))
        inv = _inverse_mod(gl, q)
        if inv is None:
            continue  # zero divisor: another coordinate will be invertible
        return (-gt * inv) % q
    return None


def _inverse_mod(c: UPoly, q: UPoly):
    r0, s0 = q, UPoly.zero(q.var)
    r1, s1 = c % q, UPoly.constant(1, q.var)
    if r1.is_zero:
        return None
    while not r1.is_zero:
        qq, rr = divmod(r0, r1)
        r0, r1 = r1, rr
        s0, s1 = s1, s0 - qq * s1
    if r0.degree == 0:
        return (s0 * (1 / r0.coefficient(0))) % q
    return None


# ---------------------------------------------------------------------------
# real form of rational nodes
# ---------------------------------------------------------------------------


def hessian_eigenvalue_signs(F: HPoly, p: ProjPoint):
    """(positive, negative, zero) eigenvalue counts of the local Hessian at p."""
    chart = max(i for i, c in enumerate(p.coords) if c != 0)
    scale = p.coords[chart]
    deltas = [c / scale for i, c in enumerate(p.coords) if i != chart]
    local = F.affine(chart).translate(deltas)
    nv = len(p.coords) - 1
    H = [[Fraction(0)] * nv for _ in range(nv)]
    for i in range(nv):
        for j in range(nv):
            e = [0] * nv
            e[i] += 1
            e[j] += 1
            c = local.terms.get(tuple(e), Fraction(0))
            H[i][j] = c * (2 if i == j else 1)
    # characteristic polynomial of a symmetric matrix has only real roots,
    # so Descartes' rule is exact on it
    tr = sum(H[i][i] for i in range(nv))
    if nv != 3:
        raise InputError("Hessian signature implemented for surfaces")
    m2 = (
        H[0][0] * H[1][1]
        - H[0][1] * H[1][0]
        + H[0][0] * H[2][2]
        - H[0][2] * H[2][0]
        + H[1][1] * H[2][2]
        - H[1][2] * H[2][1]
    )
    det = (
        H[0][0] * (H[1][1] * H[2][2] - H[1][2] * H[2][1])
        - H[0][1] * (H[1][0] * H[2][2] - H[1][2] * H[2][0])
        + H[0][2] * (H[1][0] * H[2][1] - H[1][1] * H[2][0])
    )
    # char(x) = x^3 - tr x^2 + m2 x - det
    coeffs = [Fraction(-1) * det, m2, -tr, Fraction(1)]
    pos = _sign_variations(list(reversed(coeffs)))
    neg = _sign_variations(
        list(reversed([c * (-1) ** i for i, c in enumerate(coeffs)]))
    )
    zero = nv - pos - neg
    return pos, neg, zero


def _sign_variations(coeffs):
    signs = [(-1 if c < 0 else 1) for c in coeffs if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def verify_real_a1_signature(M: Monoid, record: SingRecord) -> bool:
    """Confirm an A_1 record is the real A_1^- form: rank-3 indefinite Hessian."""
    if record.m != 2:
        raise InputError("signature check applies to A_1 records only")
    if not record.is_rational:
        raise InputError("signature check needs a rational location")
    pos, neg, zero = hessian_eigenvalue_signs(M.whole(), record.location)
    if zero:
        raise HessianDegenerate(
            f"A_1 record at {record.location} has a rank-deficient Hessian"
        )
    return pos > 0 and neg > 0


def monoid_point_milnor(M: Monoid, cap: int = 80) -> int:
    """Milnor number of the monoid point, by the Jacobian truncation oracle."""
    local = M.whole().affine(0)  # chart x0 = 1; O is already the origin
    return milnor_number(local, M.n, cap)
