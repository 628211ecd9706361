"""Exact univariate polynomial algebra over Q.

Coefficients are `fractions.Fraction` throughout; nothing in this module
rounds.  It supplies the primitives the rest of the package leans on:
subresultant remainder sequences for gcd and resultants, Yun squarefree
decomposition, Sturm sequences for real-root counting and isolation, and
exact recovery of rational roots by interval refinement.

Binary forms (homogeneous pairs in two parameters, stored dehomogenized
with a degree record) live here too, since they are thin wrappers over
the same coefficient lists.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd

from .errors import InputError, NotSquarefree


def _coerce(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


class UPoly:
    """Dense univariate polynomial: coeffs[i] is the coefficient of var**i.

    The zero polynomial has empty coeffs and degree -1.
    """

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs, var: str = "s"):
        cs = [_coerce(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, var: str = "s") -> "UPoly":
        return cls((), var)

    @classmethod
    def constant(cls, c, var: str = "s") -> "UPoly":
        return cls((c,), var)

    @classmethod
    def monomial(cls, degree: int, c=1, var: str = "s") -> "UPoly":
        return cls([0] * degree + [c], var)

    @classmethod
    def from_roots(cls, roots, var: str = "s") -> "UPoly":
        """Product of (var - r) over the given roots (with repetition)."""
        p = cls.constant(1, var)
        for r in roots:
            p = p * cls((-_coerce(r), Fraction(1)), var)
        return p

    # -- basic queries ------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading_coefficient(self) -> Fraction:
        if self.is_zero:
            raise InputError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coefficient(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __bool__(self):
        return not self.is_zero

    def __eq__(self, other):
        if isinstance(other, UPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == UPoly.constant(other, self.var)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        other = self._as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UPoly(
            [self.coefficient(i) + other.coefficient(i) for i in range(n)], self.var
        )

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return UPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-self._as_poly(other))

    def __rsub__(self, other):
        return self._as_poly(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return UPoly([c * other for c in self.coeffs], self.var)
        other = self._as_poly(other)
        if self.is_zero or other.is_zero:
            return UPoly.zero(self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        return UPoly(out, self.var)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, n: int):
        if n < 0:
            raise InputError("negative polynomial power")
        out = UPoly.constant(1, self.var)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other):
        other = self._as_poly(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        q = [Fraction(0)] * max(0, len(self.coeffs) - len(other.coeffs) + 1)
        rem = list(self.coeffs)
        dlc = other.leading_coefficient
        dd = other.degree
        while len(rem) - 1 >= dd and rem:
            k = len(rem) - 1 - dd
            c = rem[-1] / dlc
            q[k] = c
            for j, b in enumerate(other.coeffs):
                rem[k + j] -= c * b
            while rem and rem[-1] == 0:
                rem.pop()
        return UPoly(q, self.var), UPoly(rem, self.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "UPoly":
        q, r = divmod(self, other)
        if not r.is_zero:
            raise InputError("exact_div: division not exact")
        return q

    # -- calculus / evaluation -----------------------------------------

    def derivative(self) -> "UPoly":
        return UPoly([i * c for i, c in enumerate(self.coeffs)][1:], self.var)

    def __call__(self, x):
        x = _coerce(x) if isinstance(x, (int, Fraction)) else x
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, inner: "UPoly") -> "UPoly":
        acc = UPoly.zero(inner.var)
        for c in reversed(self.coeffs):
            acc = acc * inner + UPoly.constant(c, inner.var)
        return acc

    def monic(self) -> "UPoly":
        if self.is_zero:
            raise InputError("cannot normalize the zero polynomial")
        lc = self.leading_coefficient
        return self if lc == 1 else self * (1 / lc)

    def _as_poly(self, other) -> "UPoly":
        if isinstance(other, UPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UPoly.constant(other, self.var)
        raise TypeError(f"cannot combine UPoly with {type(other).__name__}")

    # -- integer scaffolding -------------------------------------------

    def int_coeffs(self):
        """Return (list of ints, scale) with self == UPoly(ints)/scale."""
        if self.is_zero:
            return [], 1
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // int_gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        return ints, den

    def primitive(self) -> "UPoly":
        """Integer-primitive multiple with positive leading coefficient."""
        if self.is_zero:
            return self
        ints, _ = self.int_coeffs()
        g = 0
        for c in ints:
            g = int_gcd(g, c)
        if ints[-1] < 0:
            g = -g
        return UPoly([Fraction(c, g) for c in ints], self.var)

    def __repr__(self):
        return f"UPoly({self})"

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coefficient(i)
            if c == 0:
                continue
            if i == 0:
                term = str(c)
            else:
                v = self.var if i == 1 else f"{self.var}^{i}"
                term = v if c == 1 else (f"-{v}" if c == -1 else f"{c}*{v}")
            parts.append(term)
        out = parts[0]
        for term in parts[1:]:
            out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
        return out


# ---------------------------------------------------------------------------
# integer polynomial helpers (lists of ints, index = exponent)
# ---------------------------------------------------------------------------


def _zstrip(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _zcontent(p):
    g = 0
    for c in p:
        g = int_gcd(g, c)
    return g


def _zprimitive(p):
    g = _zcontent(p)
    if g in (0, 1):
        return list(p)
    return [c // g for c in p]


def _zmul_scalar(p, c):
    return [a * c for a in p]


def _zprem(a, b):
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b, fraction-free."""
    a = list(a)
    da, db = len(a) - 1, len(b) - 1
    lb = b[-1]
    steps = da - db + 1
    while len(a) - 1 >= db and a:
        la = a[-1]
        a = _zmul_scalar(a, lb)
        k = len(a) - 1 - db
        for j, c in enumerate(b):
            a[k + j] -= la * c
        _zstrip(a)
        steps -= 1
    if steps > 0:  # degree dropped early; keep the stated scaling
        a = _zmul_scalar(a, lb**steps)
    return a


def _zexact_div_scalar(p, c):
    return [a // c for a in p]


def _subresultant_prs(a, b):
    """Subresultant polynomial remainder sequence of primitive int polys."""
    prs = [list(a), list(b)]
    g, h = 1, 1
    while True:
        cur_a, cur_b = prs[-2], prs[-1]
        delta = (len(cur_a) - 1) - (len(cur_b) - 1)
        r = _zprem(cur_a, cur_b)
        if not r:
            return prs
        prs.append(_zexact_div_scalar(r, g * h**delta))
        g = cur_b[-1]
        if delta == 1:
            h = g
        elif delta > 1:
            h = g**delta // h ** (delta - 1)
        # delta == 0 leaves h unchanged
        if len(prs[-1]) == 1:
            return prs


def upoly_gcd(p: UPoly, q: UPoly) -> UPoly:
    """Monic gcd via the subresultant remainder sequence."""
    if p.is_zero and q.is_zero:
        raise InputError("gcd undefined for two zero polynomials")
    if p.is_zero:
        return q.monic()
    if q.is_zero:
        return p.monic()
    a, _ = p.int_coeffs()
    b, _ = q.int_coeffs()
    a, b = _zprimitive(a), _zprimitive(b)
    if len(a) < len(b):
        a, b = b, a
    prs = _subresultant_prs(a, b)
    last = prs[-1]
    if len(last) == 1:  # constants are units over Q
        return UPoly.constant(1, p.var)
    return UPoly([Fraction(c) for c in _zprimitive(last)], p.var).monic()


def resultant(p: UPoly, q: UPoly) -> Fraction:
    """Resultant of p and q, normalized so res(s-a, s-b) = b - a.

    Computed through the subresultant remainder sequence on integer
    scalings; exact over Q.
    """
    if p.is_zero or q.is_zero:
        raise InputError("resultant of the zero polynomial is undefined")
    m, n = p.degree, q.degree
    if m == 0:
        return p.coefficient(0) ** n
    if n == 0:
        return q.coefficient(0) ** m
    pi, ps = p.int_coeffs()
    qi, qs = q.int_coeffs()
    r = Fraction(_int_resultant(pi, qi), ps**n * qs**m)
    if (m * n) % 2:
        r = -r
    return r


def _int_resultant(a, b):
    """Resultant of nonconstant integer polynomials (standard convention)."""
    m, n = len(a) - 1, len(b) - 1
    sign = 1
    if m < n:
        a, b, m, n = b, a, n, m
        if (m * n) % 2:
            sign = -sign
    ca, cb = _zcontent(a), _zcontent(b)
    if a[-1] < 0:
        ca = -ca
    if b[-1] < 0:
        cb = -cb
    a, b = _zexact_div_scalar(a, ca), _zexact_div_scalar(b, cb)
    t = ca**n * cb**m
    g, h = 1, 1
    while True:
        m, n = len(a) - 1, len(b) - 1
        if n == 0:
            break
        delta = m - n
        if m % 2 and n % 2:
            sign = -sign
        r = _zprem(a, b)
        if not r:
            return 0
        a, b = b, _zexact_div_scalar(r, g * h**delta)
        g = a[-1]
        if delta == 1:
            h = g
        elif delta > 1:
            h = g**delta // h ** (delta - 1)
        # delta == 0 leaves h unchanged
    m = len(a) - 1
    if m > 0:
        h = b[-1] ** m // h ** (m - 1) if m > 1 else b[-1]
    else:
        h = 1
    return sign * t * h


def sylvester_matrix(p: UPoly, q: UPoly):
    """Sylvester matrix of (p, q); determinant equals the standard resultant."""
    m, n = p.degree, q.degree
    if m < 0 or n < 0:
        raise InputError("zero polynomial")
    size = m + n
    rows = []
    pc = [p.coefficient(m - j) for j in range(m + 1)]
    qc = [q.coefficient(n - j) for j in range(n + 1)]
    for i in range(n):
        rows.append([Fraction(0)] * i + pc + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + qc + [Fraction(0)] * (size - n - 1 - i))
    return rows


def squarefree_decomposition(p: UPoly):
    """Yun decomposition: list of (monic factor, multiplicity), factors coprime.

    The product of factor**multiplicity times p's leading coefficient
    reconstructs p exactly.
    """
    if p.is_zero:
        raise InputError("squarefree decomposition of the zero polynomial")
    if p.degree == 0:
        return []
    g = upoly_gcd(p, p.derivative())
    out = []
    if g.degree == 0:
        return [(p.monic(), 1)]
    b = p.exact_div(g)
    c = p.derivative().exact_div(g)
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = upoly_gcd(b, d) if not d.is_zero else b.monic()
        if a.degree > 0:
            out.append((a.monic(), i))
        b = b.exact_div(a)
        c = d.exact_div(a) if not d.is_zero else d
        d = c - b.derivative()
        i += 1
    return out


def squarefree_part(p: UPoly) -> UPoly:
    g = upoly_gcd(p, p.derivative()) if p.degree > 0 else UPoly.constant(1, p.var)
    return p.exact_div(g).monic() if g.degree > 0 else p.monic()


def is_squarefree(p: UPoly) -> bool:
    return p.degree <= 0 or upoly_gcd(p, p.derivative()).degree == 0


# ---------------------------------------------------------------------------
# Sturm sequences
# ---------------------------------------------------------------------------


def sturm_chain(p: UPoly):
    """Sturm chain as primitive integer coefficient lists (sign-faithful)."""
    a, _ = p.int_coeffs()
    a = _zprimitive(a)
    chain = [a]
    d = _zprimitive(_zstrip([i * c for i, c in enumerate(a)][1:]))
    if d:
        chain.append(d)
    while len(chain[-1]) > 1:
        r = _zprem(chain[-2], chain[-1])
        if not r:
            break
        # pseudo-remainder scales by lc^k; fix the sign when that flips it
        if chain[-1][-1] < 0 and ((len(chain[-2]) - len(chain[-1]) + 1) % 2):
            r = _zmul_scalar(r, -1)
        chain.append(_zprimitive(_zmul_scalar(r, -1)))
    return chain


def _sign_at(ints, x):
    if x == "+inf":
        return 1 if ints[-1] > 0 else -1
    if x == "-inf":
        s = 1 if ints[-1] > 0 else -1
        return s if (len(ints) - 1) % 2 == 0 else -s
    acc = 0
    for c in reversed(ints):
        acc = acc * x + c
    return (acc > 0) - (acc < 0)


def _variations(chain, x):
    signs = [s for s in (_sign_at(c, x) for c in chain) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(p: UPoly, lo=None, hi=None) -> int:
    """Exact number of distinct real roots of squarefree p in the open (lo, hi).

    None stands for the corresponding infinity.
    """
    if p.is_zero:
        raise InputError("zero polynomial")
    if not is_squarefree(p):
        raise NotSquarefree("input has repeated roots; run squarefree_decomposition first")
    if p.degree == 0:
        return 0
    lo_r = None if lo is None else _coerce(lo)
    hi_r = None if hi is None else _coerce(hi)
    if lo_r is not None and hi_r is not None and not lo_r < hi_r:
        raise InputError("empty interval")
    work = p
    if lo_r is not None and work(lo_r) == 0:
        work = work.exact_div(UPoly((-lo_r, 1), p.var))
    if hi_r is not None and not work.is_zero and work.degree > 0 and work(hi_r) == 0:
        work = work.exact_div(UPoly((-hi_r, 1), p.var))
    if work.degree <= 0:
        return 0
    chain = sturm_chain(work)
    a = "-inf" if lo_r is None else lo_r
    b = "+inf" if hi_r is None else hi_r
    return _variations(chain, a) - _variations(chain, b)


def root_bound(p: UPoly) -> Fraction:
    """Cauchy bound: all real roots lie in (-B, B)."""
    lc = abs(p.leading_coefficient)
    m = max((abs(c) for c in p.coeffs[:-1]), default=Fraction(0))
    return 1 + m / lc


def isolate_real_roots(p: UPoly):
    """Disjoint open rational intervals, one per real root of squarefree p."""
    if p.is_zero:
        raise InputError("zero polynomial")
    if not is_squarefree(p):
        raise NotSquarefree("isolate_real_roots needs squarefree input")
    if p.degree == 0:
        return []
    chain = sturm_chain(p)

    def var(x):
        return _variations(chain, x)

    b = root_bound(p)
    out = []

    def go(lo, hi, count):
        if count == 0:
            return
        if count == 1:
            out.append((lo, hi))
            return
        mid = (lo + hi) / 2
        if p(mid) == 0:
            delta = (hi - lo) / 4
            while (
                p(mid - delta) == 0
                or p(mid + delta) == 0
                or count_real_roots(p, mid - delta, mid + delta) != 1
            ):
                delta /= 2
            go(lo, mid - delta, var(lo) - var(mid - delta))
            out.append((mid - delta, mid + delta))
            go(mid + delta, hi, var(mid + delta) - var(hi))
        else:
            go(lo, mid, var(lo) - var(mid))
            go(mid, hi, var(mid) - var(hi))

    # endpoints of the starting box are not roots (Cauchy bound is strict)
    go(-b, b, var(-b) - var(b))
    out.sort()
    return out


def refine_isolating_interval(p: UPoly, interval, width) -> tuple:
    """Shrink an isolating interval of squarefree p below the given width."""
    lo, hi = _coerce(interval[0]), _coerce(interval[1])
    width = _coerce(width)
    while hi - lo >= width:
        mid = (lo + hi) / 2
        if p(mid) == 0:
            w = min(width / 3, (hi - lo) / 4)
            return (mid - w, mid + w)
        if p(lo) * p(mid) < 0:
            hi = mid
        elif p(mid) * p(hi) < 0:
            lo = mid
        else:
            # no sign change: fall back to a Sturm count to pick the half
            if count_real_roots(p, lo, mid) == 1:
                hi = mid
            else:
                lo = mid
    return (lo, hi)


def simplest_rational_in(lo: Fraction, hi: Fraction) -> Fraction:
    """The unique smallest-denominator rational strictly inside (lo, hi)."""
    lo, hi = _coerce(lo), _coerce(hi)
    if not lo < hi:
        raise InputError("empty interval")
    if lo < 0 < hi:
        return Fraction(0)
    if hi <= 0:
        return -simplest_rational_in(-hi, -lo)
    n = lo.numerator // lo.denominator  # floor
    if n + 1 < hi:
        return Fraction(n + 1)
    if lo == n:
        # interval (n, hi) with hi <= n+1
        inv = Fraction(1) / (hi - n)
        m = inv.numerator // inv.denominator + 1
        return n + Fraction(1, m)
    return n + 1 / simplest_rational_in(1 / (hi - n), 1 / (lo - n))


def rational_roots(p: UPoly):
    """All rational roots of p (ignoring multiplicity), exactly."""
    if p.is_zero:
        raise InputError("zero polynomial")
    sf = squarefree_part(p)
    if sf.degree == 0:
        return []
    ints, _ = sf.int_coeffs()
    ints = _zprimitive(ints)
    lead = abs(ints[-1])
    if ints[0] == 0:
        k = next(i for i, c in enumerate(ints) if c != 0)
        rest = rational_roots(UPoly([Fraction(c) for c in ints[k:]], p.var))
        return sorted(set([Fraction(0)] + rest))
    out = []
    gap = Fraction(1, lead * lead + 1)
    for iv in isolate_real_roots(sf):
        lo, hi = refine_isolating_interval(sf, iv, gap)
        cand = simplest_rational_in(lo, hi)
        if sf(cand) == 0:
            out.append(cand)
    return sorted(out)


# ---------------------------------------------------------------------------
# binary forms
# ---------------------------------------------------------------------------


class BinaryForm:
    """Homogeneous form in two parameters (s, t) of a recorded formal degree.

    Stored as coefficients b_i of s^(n-i) t^i for i = 0..n.  The zero
    form keeps its formal degree so that pullback degrees stay honest.
    """

    __slots__ = ("coeffs", "formal_degree", "svar", "tvar")

    def __init__(self, coeffs, formal_degree=None, svar="s", tvar="t"):
        cs = [_coerce(c) for c in coeffs]
        n = formal_degree if formal_degree is not None else len(cs) - 1
        if len(cs) > n + 1:
            raise InputError("more coefficients than the formal degree allows")
        cs += [Fraction(0)] * (n + 1 - len(cs))
        self.coeffs = tuple(cs)
        self.formal_degree = n
        self.svar, self.tvar = svar, tvar

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    @classmethod
    def from_linear_factors(cls, factors, svar="s", tvar="t"):
        """Product of (beta*s - alpha*t)^m for each ((alpha, beta), m)."""
        out = cls((1,), 0, svar, tvar)
        for (alpha, beta), m in factors:
            lin = cls((_coerce(beta), -_coerce(alpha)), 1, svar, tvar)
            for _ in range(m):
                out = out * lin
        return out

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return BinaryForm(
                [c * other for c in self.coeffs], self.formal_degree, self.svar, self.tvar
            )
        n = self.formal_degree + other.formal_degree
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        return BinaryForm(out, n, self.svar, self.tvar)

    __rmul__ = __mul__

    def __add__(self, other):
        if self.formal_degree != other.formal_degree:
            raise InputError("cannot add binary forms of different degrees")
        return BinaryForm(
            [a + b for a, b in zip(self.coeffs, other.coeffs)],
            self.formal_degree,
            self.svar,
            self.tvar,
        )

    def __sub__(self, other):
        return self + (other * -1)

    def __eq__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        return self.coeffs == other.coeffs and self.formal_degree == other.formal_degree

    def __hash__(self):
        return hash((self.coeffs, self.formal_degree))

    def evaluate(self, s, t) -> Fraction:
        s, t = _coerce(s), _coerce(t)
        n = self.formal_degree
        return sum(c * s ** (n - i) * t**i for i, c in enumerate(self.coeffs))

    def dehomogenized(self) -> UPoly:
        """q(t) = self(1, t); loses the s-power (see s_multiplicity)."""
        return UPoly(self.coeffs, self.tvar)

    def s_multiplicity(self) -> int:
        """Multiplicity of the root (0:1), i.e. of the factor s."""
        if self.is_zero:
            raise InputError("zero form")
        return self.formal_degree - self.dehomogenized().degree

    def t_multiplicity(self) -> int:
        """Multiplicity of the root (1:0), i.e. of the factor t."""
        if self.is_zero:
            raise InputError("zero form")
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        raise InputError("zero form")

    def multiplicity_at(self, alpha, beta) -> int:
        """Root multiplicity at the parameter point (alpha:beta)."""
        if self.is_zero:
            raise InputError("zero form")
        alpha, beta = _coerce(alpha), _coerce(beta)
        if alpha == beta == 0:
            raise InputError("(0,0) is not a parameter point")
        if alpha == 0:
            return self.s_multiplicity()
        r = beta / alpha
        p = self.dehomogenized()
        m = 0
        lin = UPoly((-r, 1), self.tvar)
        while not p.is_zero and p(r) == 0:
            p = p.exact_div(lin)
            m += 1
        return m

    def __repr__(self):
        return f"BinaryForm(deg {self.formal_degree}: {list(self.coeffs)})"
