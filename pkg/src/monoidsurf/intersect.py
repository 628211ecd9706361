"""Local intersection numbers of plane curves, three ways.

* pullback root multiplicities along a rational parameterization,
* generic-shear eliminant multiplicities (with conjugacy-class output),
* a truncated local-quotient dimension oracle at rational points.

The three agree on every common input and cross-check each other; the
profile machinery re-shears until two independent shears tell the same
story.  Irrational intersection points are reported as conjugacy
classes: a squarefree minimal polynomial plus exact coordinates modulo
it, never floating approximations.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd as int_gcd

from .errors import (
    CommonFactor,
    CommonFactorThroughP,
    GenericityFailure,
    IdenticallyZero,
    InfiniteZeroLocus,
    InputError,
    NotACommonZero,
)
from .hpoly import (
    APoly,
    HPoly,
    ProjPoint,
    RationalMap,
    bivariate_resultant,
    mv_gcd,
    render_hpoly,
    squarefree_part_h,
)
from .linalg import int_rank
from .ratpoly import (
    UPoly,
    count_real_roots,
    rational_roots,
    squarefree_decomposition,
    squarefree_part,
    upoly_gcd,
)

SHEAR_COEFF_BOUND = 20  # |c| bound for random shear entries
DEFAULT_RETRIES = 12


# ---------------------------------------------------------------------------
# truncated local-quotient oracle
# ---------------------------------------------------------------------------


def local_algebra_dimension(gens, nvars: int, cap: int, on_blowup=None) -> int:
    """Vector-space dimension of k[[x]]/(gens) by truncation stabilization.

    Every generator must vanish at the origin.  The truncated dimension
    is computed for increasing cutoffs until two consecutive values
    agree (which, by Nakayama in the local quotient, pins the limit).
    Failure to stabilize below the cap raises.
    """
    gens = [g for g in gens if not g.is_zero]
    if not gens:
        raise InputError("no generators")
    for g in gens:
        if g.min_degree() == 0:
            return 0
    prev = None
    for n in range(1, cap + 2):
        cur = _truncated_dimension(gens, nvars, n)
        if prev is not None and cur == prev:
            return cur
        prev = cur
    if on_blowup is not None:
        raise on_blowup
    raise CommonFactorThroughP(
        f"local quotient dimension did not stabilize below cutoff {cap}"
    )


def _monomials_below(nvars: int, n: int):
    out = []

    def rec(prefix, remaining, budget):
        if remaining == 1:
            for k in range(budget + 1):
                out.append(prefix + (k,))
            return
        for k in range(budget + 1):
            rec(prefix + (k,), remaining - 1, budget - k)

    rec((), nvars, n - 1)
    return sorted(out)


def _truncated_dimension(gens, nvars: int, n: int) -> int:
    basis = _monomials_below(nvars, n)
    index = {e: i for i, e in enumerate(basis)}
    rows = []
    for g in gens:
        gmin = g.min_degree()
        for alpha in basis:
            if sum(alpha) + gmin >= n:
                continue
            row = [Fraction(0)] * len(basis)
            nonzero = False
            for e, c in g.terms.items():
                ne = tuple(a + b for a, b in zip(e, alpha))
                if sum(ne) < n:
                    row[index[ne]] += c
                    nonzero = True
            if nonzero:
                den = 1
                for x in row:
                    den = den * x.denominator // int_gcd(den, x.denominator)
                rows.append([int(x * den) for x in row])
    return len(basis) - int_rank(rows)


def _affine_at(f: HPoly, p: ProjPoint) -> APoly:
    """Dehomogenize at the last nonzero coordinate of p and move p to 0."""
    chart = max(i for i, c in enumerate(p.coords) if c != 0)
    scale = p.coords[chart]
    deltas = [c / scale for i, c in enumerate(p.coords) if i != chart]
    return f.affine(chart).translate(deltas)


def intersection_multiplicity_at(f: HPoly, g: HPoly, p: ProjPoint) -> int:
    """Local intersection number I_p(f, g) at a rational point, by truncation."""
    if f.is_zero or g.is_zero:
        raise InputError("zero input")
    if f.evaluate(p.coords) != 0 or g.evaluate(p.coords) != 0:
        return 0
    fa, ga = _affine_at(f, p), _affine_at(g, p)
    cap = f.degree * g.degree + 2
    return local_algebra_dimension([fa, ga], len(f.variables) - 1, cap)


def is_transversal(f: HPoly, g: HPoly, p: ProjPoint) -> bool:
    """True iff no nontrivial combination kills both gradients at p (I_p = 1)."""
    if f.evaluate(p.coords) != 0 or g.evaluate(p.coords) != 0:
        raise NotACommonZero(f"{p} is not a common zero")
    gf = [d.evaluate(p.coords) for d in f.gradient()]
    gg = [d.evaluate(p.coords) for d in g.gradient()]
    if all(c == 0 for c in gf) or all(c == 0 for c in gg):
        return False
    for i in range(len(gf)):
        for j in range(i + 1, len(gf)):
            if gf[i] * gg[j] - gf[j] * gg[i] != 0:
                return True
    return False


def milnor_number(g: APoly, nvars: int, cap: int = 60) -> int:
    """Milnor number of an isolated singularity at the origin (Jacobian oracle)."""
    gens = [g.derivative(i) for i in range(nvars)]
    return local_algebra_dimension(
        gens, nvars, cap, on_blowup=InputError("singularity is not isolated")
    )


# ---------------------------------------------------------------------------
# conjugacy classes of points
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PointClass:
    """Galois-stable finite point set: squarefree minpoly q(u) plus exact
    coordinates (c1(u):c2(u):c3(u)) reduced mod q, in original coordinates."""

    minpoly: UPoly
    coords: tuple
    real_count: int

    @property
    def size(self) -> int:
        return self.minpoly.degree

    def eval_mod(self, h: HPoly) -> UPoly:
        """h at the generic class point, reduced mod the minpoly."""
        q = self.minpoly
        acc = UPoly.zero(q.var)
        powers = [dict() for _ in self.coords]
        for e, c in h.terms.items():
            term = UPoly.constant(c, q.var)
            for i, k in enumerate(e):
                if not k:
                    continue
                cache = powers[i]
                if k not in cache:
                    base = self.coords[i] % q
                    acc_p = cache.get(1)
                    if acc_p is None:
                        cache[1] = acc_p = base
                    p = max(cache)
                    cur = cache[p]
                    while p < k:
                        cur = (cur * base) % q
                        p += 1
                        cache[p] = cur
                term = (term * cache[k]) % q
            acc = acc + term
        return acc % q

    def vanishes(self, h: HPoly) -> bool:
        return self.eval_mod(h).is_zero

    def split_by(self, h: HPoly):
        """Split into (where h vanishes, where it does not); either may be None."""
        e = self.eval_mod(h)
        if e.is_zero:
            return self, None
        g = upoly_gcd(self.minpoly, e)
        if g.degree == 0:
            return None, self
        return self._restrict(g), self._restrict(self.minpoly.exact_div(g).monic())

    def _restrict(self, q: UPoly):
        if q.degree == 0:
            return None
        coords = tuple(c % q for c in self.coords)
        return PointClass(q, coords, count_real_roots(q))

    def same_class(self, other: "PointClass") -> bool:
        if self.minpoly != other.minpoly:
            return False
        q = self.minpoly
        for i in range(3):
            for j in range(i + 1, 3):
                d = (self.coords[i] * other.coords[j] - self.coords[j] * other.coords[i]) % q
                if not d.is_zero:
                    return False
        return True

    def __repr__(self):
        cs = ":".join(str(c) for c in self.coords)
        return f"PointClass[{self.minpoly} = 0; ({cs})]"


@dataclass(frozen=True)
class ProfileEntry:
    """One intersection class: multiplicity plus a rational point or a class."""

    multiplicity: int
    point: ProjPoint = None
    cls: PointClass = None

    @property
    def is_rational(self) -> bool:
        return self.point is not None

    @property
    def size(self) -> int:
        return 1 if self.is_rational else self.cls.size

    @property
    def real_count(self) -> int:
        return 1 if self.is_rational else self.cls.real_count

    def __repr__(self):
        where = self.point if self.is_rational else self.cls
        return f"<I={self.multiplicity} at {where}>"


@dataclass
class IntersectionProfile:
    """Complete multiset of local intersection numbers of two plane curves."""

    entries: list
    degree_product: int
    shear: tuple
    method: str = "sheared eliminant"

    def total(self) -> int:
        return sum(e.multiplicity * e.size for e in self.entries)

    def rational_entries(self):
        return [e for e in self.entries if e.is_rational]

    def entry_at(self, p: ProjPoint):
        for e in self.entries:
            if e.is_rational and e.point == p:
                return e
        return None

    def multiplicity_at(self, p: ProjPoint) -> int:
        e = self.entry_at(p)
        return e.multiplicity if e else 0


# ---------------------------------------------------------------------------
# polynomial arithmetic modulo a squarefree q(u)
# ---------------------------------------------------------------------------


class _SplitNeeded(Exception):
    def __init__(self, factor):
        self.factor = factor


def _inv_mod(c: UPoly, q: UPoly) -> UPoly:
    """Inverse of c modulo squarefree q; raises _SplitNeeded on a zero divisor."""
    r0, s0 = q, UPoly.zero(q.var)
    r1, s1 = c % q, UPoly.constant(1, q.var)
    if r1.is_zero:
        raise _SplitNeeded(None)  # c is 0 in the whole quotient
    while not r1.is_zero:
        qq, rr = divmod(r0, r1)
        r0, r1 = r1, rr
        s0, s1 = s1, s0 - qq * s1
    if r0.degree == 0:
        return (s0 * (1 / r0.coefficient(0))) % q
    raise _SplitNeeded(r0.monic())


def _wnormalize(q, W):
    W = [c % q for c in W]
    while W and W[-1].is_zero:
        W.pop()
    return W


def _wmonic(q, W):
    inv = _inv_mod(W[-1], q)
    return [(c * inv) % q for c in W]


def _wdivmod(q, A, B):
    """Division of w-polynomials over Q[u]/(q); B must have unit leading coeff."""
    B = _wnormalize(q, B)
    inv = _inv_mod(B[-1], q)
    rem = [c % q for c in A]
    while True:
        rem = _wnormalize(q, rem)
        if len(rem) < len(B):
            return rem
        k = len(rem) - len(B)
        fac = (rem[-1] * inv) % q
        for j, bc in enumerate(B):
            rem[k + j] = (rem[k + j] - fac * bc) % q


def _wgcd_mod(q, A, B):
    """Monic gcd of two w-polynomials over Q[u]/(q), with dynamic splitting.

    Returns a list of (q_i, gcd_i) covering the squarefree factors of q.
    """
    try:
        a = _wnormalize(q, A)
        b = _wnormalize(q, B)
        while b:
            a, b = b, _wdivmod(q, a, b)
            b = _wnormalize(q, b)
        return [(q, _wmonic(q, a))]
    except _SplitNeeded as s:
        if s.factor is None or s.factor.degree in (0, q.degree):
            raise InputError("inconsistent modular gcd") from None
        q1 = s.factor
        q2 = q.exact_div(q1).monic()
        return _wgcd_mod(q1, A, B) + _wgcd_mod(q2, A, B)


def _w_single_root(q, W):
    """If the monic w-poly W has one root over each branch, return [(q_i, tau_i)].

    Returns None when some branch has more than one distinct root (a
    shear collision).
    """
    out = []
    work = [(q, W)]
    while work:
        qq, ww = work.pop()
        ww = _wnormalize(qq, ww)
        if len(ww) - 1 == 1:
            try:
                ww = _wmonic(qq, ww)
                out.append((qq, (-ww[0]) % qq))
            except _SplitNeeded as s:
                q1 = s.factor
                q2 = qq.exact_div(q1).monic()
                work.append((q1, ww))
                work.append((q2, ww))
            continue
        # strip repeated roots: W / gcd(W, W') must be linear on every branch
        deriv = [c * j for j, c in enumerate(ww)][1:]
        try:
            for qi, gi in _wgcd_mod(qq, ww, deriv):
                rem = _wdivmod(qi, ww, gi)
                if _wnormalize(qi, rem):
                    return None  # inexact division: mixed structure, treat as collision
                quo = _wquo(qi, ww, gi)
                if len(quo) - 1 != 1:
                    return None
                quo = _wmonic(qi, quo)
                out.append((qi, (-quo[0]) % qi))
        except _SplitNeeded:
            return None
    return out


def _wquo(q, A, B):
    """Quotient of exact division of w-polys over Q[u]/(q)."""
    B = _wnormalize(q, B)
    inv = _inv_mod(B[-1], q)
    rem = [c % q for c in A]
    quo = [UPoly.zero(q.var)] * (len(rem) - len(B) + 1)
    while True:
        rem = _wnormalize(q, rem)
        if len(rem) < len(B):
            return quo
        k = len(rem) - len(B)
        fac = (rem[-1] * inv) % q
        quo[k] = fac
        for j, bc in enumerate(B):
            rem[k + j] = (rem[k + j] - fac * bc) % q


# ---------------------------------------------------------------------------
# generic-shear intersection profile
# ---------------------------------------------------------------------------


def _shear_matrix(a: int, b: int):
    return ((1, 0, a), (0, 1, b), (0, 0, 1))


def _unshear_point(shear, y) -> ProjPoint:
    a, b = shear
    u, v, w = y
    return ProjPoint((u + a * w, v + b * w, w))


def _w_coeffs_at(fs: HPoly, xi, one=Fraction(1)):
    """Coefficients in w of fs(xi, 1, w) as exact rationals (xi rational)."""
    out = [Fraction(0)] * (fs.degree_in(2) + 1)
    for e, c in fs.terms.items():
        val = c
        if e[0]:
            val *= xi ** e[0]
        out[e[2]] += val
    return UPoly(out, "w")


def _w_coeffs_mod(fs: HPoly, q: UPoly):
    """Coefficients in w of fs(u, 1, w) reduced mod q(u): list of UPoly in u."""
    out = [UPoly.zero(q.var) for _ in range(fs.degree_in(2) + 1)]
    for e, c in fs.terms.items():
        mono = (UPoly.monomial(e[0], c, q.var)) % q
        out[e[2]] = (out[e[2]] + mono) % q
    return out


def _profile_once(f, g, fs, gs, shear, oracle_check):
    """One shear attempt; returns a list of ProfileEntry or None to retry."""
    m, n = f.degree, g.degree
    elim = bivariate_resultant(fs, gs, 2, )
    if elim.is_zero:
        return None
    entries = []
    # roots (xi : 1) live in p_xi; the root (1:0) shows up as its degree deficit
    p_xi = UPoly(list(reversed(elim.coeffs)))
    inf_mult = elim.t_multiplicity()
    work = []  # (projected xi or "inf", multiplicity)
    if inf_mult:
        work.append(("inf", inf_mult))
    body = p_xi
    if body.degree < 0:
        return None
    for factor, mult in squarefree_decomposition(body):
        rats = rational_roots(factor)
        rest = factor
        for r in rats:
            rest = rest.exact_div(UPoly((-r, 1), factor.var))
            work.append((r, mult))
        if rest.degree >= 1:
            work.append((rest.monic(), mult))
    for key, mult in work:
        if isinstance(key, UPoly):
            got = _class_entries(fs, gs, shear, key, mult)
            if got is None:
                return None
            entries.extend(got)
            continue
        if key == "inf":
            fw = _w_line_poly(fs, at_infinity=True)
            gw = _w_line_poly(gs, at_infinity=True)
        else:
            fw = _w_coeffs_at(fs, key)
            gw = _w_coeffs_at(gs, key)
        h = squarefree_part(upoly_gcd(fw, gw))
        if h.degree != 1:
            return None  # two intersection points share this fiber
        w0 = -h.coefficient(0) / h.coefficient(1)
        y = (Fraction(1), Fraction(0), w0) if key == "inf" else (key, Fraction(1), w0)
        point = _unshear_point(shear, y)
        if f.evaluate(point.coords) != 0 or g.evaluate(point.coords) != 0:
            return None
        if oracle_check:
            if intersection_multiplicity_at(f, g, point) != mult:
                return None
        entries.append(ProfileEntry(mult, point=point))
    if sum(e.multiplicity * e.size for e in entries) != m * n:
        return None
    return entries


def _w_line_poly(fs: HPoly, at_infinity: bool) -> UPoly:
    """fs restricted to the fiber line over (1:0): fs(1, 0, w)."""
    out = [Fraction(0)] * (fs.degree_in(2) + 1)
    for e, c in fs.terms.items():
        if e[1] == 0:
            out[e[2]] += c
    return UPoly(out, "w")


def _class_entries(fs, gs, shear, q: UPoly, mult: int):
    """Entries for the class of projected roots q(xi) = 0 (no rational roots)."""
    a, b = shear
    A = _w_coeffs_mod(fs, q)
    B = _w_coeffs_mod(gs, q)
    try:
        pieces = _wgcd_mod(q, A, B)
    except InputError:
        return None
    taus = []
    for qi, gi in pieces:
        got = _w_single_root(qi, gi)
        if got is None:
            return None
        taus.extend(got)
    out = []
    for qi, tau in taus:
        u = UPoly((0, 1), qi.var) % qi
        one = UPoly.constant(1, qi.var)
        coords = ((u + tau * a) % qi, (one + tau * b) % qi, tau % qi)
        out.append(
            ProfileEntry(
                mult, cls=PointClass(qi.monic(), coords, count_real_roots(qi))
            )
        )
    return out


def _entries_signature(entries):
    sig = sorted((e.multiplicity, e.size, e.real_count) for e in entries)
    pts = sorted(
        ((e.point.coords, e.multiplicity) for e in entries if e.is_rational),
        key=repr,
    )
    return sig, pts


def intersection_profile(
    f: HPoly,
    g: HPoly,
    rng: random.Random = None,
    *,
    retries: int = DEFAULT_RETRIES,
    oracle_check: bool = True,
) -> IntersectionProfile:
    """Complete intersection profile of two coprime ternary forms.

    Applies a random shear moving the projection center off both curves,
    reads class multiplicities off the eliminant, verifies rational
    multiplicities against the truncation oracle, and always confirms
    with a second independent shear before returning.
    """
    if f.is_zero or g.is_zero:
        raise InputError("zero input")
    if len(f.variables) != 3:
        raise InputError("intersection_profile expects ternary forms")
    h = mv_gcd(f, g)
    if not h.is_constant:
        raise CommonFactor(render_hpoly(h))
    rng = rng if rng is not None else random.Random(0)
    tried = []
    accepted = []
    seen = set()
    budget = retries
    spins = 0
    while budget > 0 and spins < 40 * retries:
        spins += 1
        a = rng.randint(-SHEAR_COEFF_BOUND, SHEAR_COEFF_BOUND)
        bb = rng.randint(-SHEAR_COEFF_BOUND, SHEAR_COEFF_BOUND)
        if (a, bb) in seen:
            continue
        seen.add((a, bb))
        budget -= 1
        tried.append((a, bb))
        mat = _shear_matrix(a, bb)
        fs = f.linear_change(mat)
        gs = g.linear_change(mat)
        if fs.evaluate((0, 0, 1)) == 0 or gs.evaluate((0, 0, 1)) == 0:
            continue
        got = _profile_once(f, g, fs, gs, (a, bb), oracle_check)
        if got is None:
            continue
        accepted.append(((a, bb), got))
        if len(accepted) == 2:
            (s1, e1), (s2, e2) = accepted
            if _entries_signature(e1) == _entries_signature(e2):
                return IntersectionProfile(e1, f.degree * g.degree, s1)
            accepted = [accepted[1]]
    raise GenericityFailure(
        f"no generic shear found for {render_hpoly(f)} vs {render_hpoly(g)}", tried
    )


# ---------------------------------------------------------------------------
# pullback multiplicities
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ParamEntry:
    """A root class of a pullback: parameter point or squarefree class."""

    multiplicity: int
    param: tuple = None  # (alpha, beta) normalized, when rational
    minpoly: UPoly = None
    real_count: int = 0

    @property
    def is_rational(self) -> bool:
        return self.param is not None

    @property
    def size(self) -> int:
        return 1 if self.is_rational else self.minpoly.degree


def _normalize_param(alpha, beta):
    alpha, beta = Fraction(alpha), Fraction(beta)
    if alpha == beta == 0:
        raise InputError("(0,0) is not a parameter point")
    if alpha != 0:
        return (Fraction(1), beta / alpha)
    return (Fraction(0), Fraction(1))


def pullback_multiplicities(f: HPoly, theta: RationalMap, excluded=()):
    """Root multiplicities of f(theta), excluded parameter points split out.

    Returns (excluded_list, entries): excluded_list pairs each excluded
    parameter point with its multiplicity; entries cover every other
    root class with reality flags from Sturm counts.
    """
    from .hpoly import pullback

    bform = pullback(f, theta)
    if bform.is_zero:
        raise IdenticallyZero("the parameterized curve is a component of the input")
    excluded_norm = [_normalize_param(a, b) for (a, b) in excluded]
    excl_out = []
    p = bform.dehomogenized()
    s_mult = bform.s_multiplicity()
    t_var = p.var
    for al, be in excluded_norm:
        if al == 0:
            excl_out.append(((al, be), s_mult))
            s_mult = 0
        else:
            r = be
            mult = 0
            lin = UPoly((-r, 1), t_var)
            while p.degree >= 1 and p(r) == 0:
                p = p.exact_div(lin)
                mult += 1
            excl_out.append(((al, be), mult))
    entries = []
    if s_mult:
        entries.append(ParamEntry(s_mult, param=(Fraction(0), Fraction(1))))
    if p.degree >= 1:
        for factor, mult in squarefree_decomposition(p):
            rest = factor
            for r in rational_roots(factor):
                rest = rest.exact_div(UPoly((-r, 1), factor.var))
                entries.append(ParamEntry(mult, param=(Fraction(1), r)))
            if rest.degree >= 1:
                entries.append(
                    ParamEntry(
                        mult,
                        minpoly=rest.monic(),
                        real_count=count_real_roots(rest),
                    )
                )
    return excl_out, entries


# ---------------------------------------------------------------------------
# locating a known class inside a profile
# ---------------------------------------------------------------------------


def _norm_mod(q: UPoly, h: UPoly) -> Fraction:
    """Norm of h in Q[u]/(q): determinant of the multiplication-by-h map."""
    from .linalg import det

    k = q.degree
    cols = []
    for j in range(k):
        col = (UPoly.monomial(j, 1, q.var) * h) % q
        cols.append([col.coefficient(i) for i in range(k)])
    rows = [[cols[j][i] for j in range(k)] for i in range(k)]
    return det(rows)


def _ratio_minpoly(q: UPoly, num: UPoly, den: UPoly) -> UPoly:
    """Squarefree monic polynomial whose roots are num(u)/den(u) over q(u)=0.

    Requires den invertible modulo q (no class point at infinity of the
    ratio); computed as an interpolated norm.
    """
    k = q.degree
    samples = []
    x = 0
    while len(samples) < k + 1:
        for cand in (Fraction(x), Fraction(-x)) if x else (Fraction(0),):
            val = _norm_mod(q, (den * cand - num) % q)
            samples.append((cand, val))
            if len(samples) == k + 1:
                break
        x += 1
    from .hpoly import _lagrange

    poly = _lagrange(samples)
    if poly.degree < 1:
        raise InputError("degenerate projection ratio")
    return squarefree_part(poly)


def class_projection_minpoly(cls: PointClass, shear) -> UPoly:
    """Minimal polynomial of the class's projected parameter under a shear."""
    a, b = shear
    c1, c2, c3 = cls.coords
    q = cls.minpoly
    num = (c1 - c3 * a) % q
    den = (c2 - c3 * b) % q
    g = upoly_gcd(q, den) if not den.is_zero else q
    if den.is_zero or g.degree > 0:
        raise InputError("class meets the fiber at infinity of this shear")
    return _ratio_minpoly(q, num, den)


def profile_multiplicity_at_class(profile: IntersectionProfile, cls: PointClass) -> int:
    """Multiplicity the profile assigns to the points of a known class.

    The class must be irreducible (no rational points); its points all
    carry one multiplicity, found by matching the class's projected
    parameters inside the profile's eliminant factors.
    """
    target = class_projection_minpoly(cls, profile.shear)
    for e in profile.entries:
        if e.is_rational:
            continue
        if e.cls.size < cls.size:
            continue
        if (e.cls.minpoly % target).is_zero:
            return e.multiplicity
    return 0


# ---------------------------------------------------------------------------
# common zeros of several forms
# ---------------------------------------------------------------------------


def common_zeros(polys, rng: random.Random = None):
    """Finite common zero locus in P^2 as (rational points, classes).

    Accepts two or more ternary forms.  Raises InfiniteZeroLocus when
    the forms share a nonconstant factor (positive-dimensional locus).
    """
    rng = rng if rng is not None else random.Random(0)
    ps = [p for p in polys if not p.is_zero]
    if len(ps) < 2:
        raise InputError("need at least two nonzero forms")
    overall = ps[0]
    for p in ps[1:]:
        if overall.is_constant:
            break
        overall = mv_gcd(overall, p)
    if not overall.is_constant:
        raise InfiniteZeroLocus(render_hpoly(overall))
    points, classes = _common_zeros_rec(ps, rng, depth=0)
    return points, classes


def _common_zeros_rec(ps, rng, depth):
    if depth > 12:
        raise InputError("common zero recursion did not terminate")
    ps = sorted((p for p in ps if not p.is_constant), key=lambda p: p.degree)
    if len(ps) < 2:
        raise InfiniteZeroLocus("fewer than two independent conditions")
    a = ps[0]
    partner = None
    for b in ps[1:]:
        if mv_gcd(a, b).is_constant:
            partner = b
            break
    if partner is not None:
        prof = intersection_profile(
            squarefree_part_h(a),
            squarefree_part_h(partner),
            rng,
            oracle_check=False,
        )
        rest = [p for p in ps if p is not a and p is not partner]
        return _filter_entries(prof.entries, rest)
    b0 = ps[1]
    h = mv_gcd(a, b0)
    quo = None
    from .hpoly import exact_div

    if h.degree == a.degree:
        # a divides b0: b0 is redundant on Z(a)
        rest = [p for p in ps if p is not b0]
        return _common_zeros_rec(rest, rng, depth + 1)
    quo = exact_div(a, h)
    out1 = _common_zeros_rec([h] + [p for p in ps if p is not a], rng, depth + 1)
    out2 = _common_zeros_rec([quo] + [p for p in ps if p is not a], rng, depth + 1)
    return _merge_zero_sets(out1, out2)


def _filter_entries(entries, filters):
    points, classes = [], []
    for e in entries:
        if e.is_rational:
            if all(h.evaluate(e.point.coords) == 0 for h in filters):
                points.append(e.point)
        else:
            cur = e.cls
            for h in filters:
                if cur is None:
                    break
                cur, _ = cur.split_by(h)
            if cur is not None:
                classes.append(cur)
    return points, classes


def _merge_zero_sets(a, b):
    points = list(a[0])
    classes = list(a[1])
    for p in b[0]:
        if p not in points:
            points.append(p)
    for c in b[1]:
        if not any(c.same_class(d) for d in classes):
            classes.append(c)
    return points, classes
