"""Homogeneous multivariate polynomials with exact rational coefficients.

Sparse exponent-map representation: a term map from exponent tuples to
nonzero Fractions, all of one total degree.  Alongside the homogeneous
type there is a small affine companion (`APoly`) used wherever a chart
is fixed: local expansions, the truncated-quotient oracle, Hessians.

The text grammar (see `parse_hpoly`):

    expr   := ["+"|"-"] term { ("+"|"-") term }
    term   := factor { "*" factor }
    factor := atom [ "^" integer ]
    atom   := "(" expr ")" | number | variable
    number := integer [ "/" positive-integer ]

Implicit multiplication is not accepted.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd

from .errors import InhomogeneousError, InputError, ParseError
from .ratpoly import BinaryForm, UPoly, upoly_gcd, _int_resultant


def _coerce(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


# ---------------------------------------------------------------------------
# affine companion
# ---------------------------------------------------------------------------


class APoly:
    """Sparse polynomial in affine coordinates (no homogeneity constraint)."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        tt = {}
        for e, c in (terms or {}).items():
            c = _coerce(c)
            if c != 0:
                tt[tuple(e)] = tt.get(tuple(e), Fraction(0)) + c
        self.terms = {e: c for e, c in tt.items() if c != 0}

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def min_degree(self) -> int:
        return min((sum(e) for e in self.terms), default=-1)

    def homogeneous_component(self, k: int) -> "APoly":
        return APoly(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == k})

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return APoly(self.nvars, out)

    def __sub__(self, other):
        return self + (other * -1)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return APoly(self.nvars, {e: c * other for e, c in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return APoly(self.nvars, out)

    __rmul__ = __mul__

    def derivative(self, i: int) -> "APoly":
        out = {}
        for e, c in self.terms.items():
            if e[i] > 0:
                ne = e[:i] + (e[i] - 1,) + e[i + 1 :]
                out[ne] = out.get(ne, Fraction(0)) + c * e[i]
        return APoly(self.nvars, out)

    def evaluate(self, point) -> Fraction:
        vals = [_coerce(v) for v in point]
        acc = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for v, k in zip(vals, e):
                if k:
                    t *= v**k
            acc += t
        return acc

    def translate(self, deltas) -> "APoly":
        """Substitute x_i -> x_i + delta_i."""
        cur = self
        for i, d in enumerate(deltas):
            d = _coerce(d)
            if d == 0:
                continue
            out = {}
            for e, c in cur.terms.items():
                k = e[i]
                # (x + d)^k expanded with binomials
                coef = c
                binom = 1
                for j in range(k + 1):
                    ne = e[:i] + (k - j,) + e[i + 1 :]
                    out[ne] = out.get(ne, Fraction(0)) + coef * binom * d**j
                    binom = binom * (k - j) // (j + 1)
            cur = APoly(self.nvars, out)
        return cur

    def __repr__(self):
        return f"APoly({self.terms!r})"


# ---------------------------------------------------------------------------
# homogeneous polynomials
# ---------------------------------------------------------------------------


class HPoly:
    """Homogeneous polynomial over the declared variable tuple."""

    __slots__ = ("variables", "terms", "degree")

    def __init__(self, variables, terms):
        self.variables = tuple(variables)
        n = len(self.variables)
        tt = {}
        for e, c in terms.items():
            e = tuple(e)
            if len(e) != n:
                raise InputError("exponent length does not match variable count")
            c = _coerce(c)
            if c != 0:
                tt[e] = tt.get(e, Fraction(0)) + c
        tt = {e: c for e, c in tt.items() if c != 0}
        degs = {sum(e) for e in tt}
        if len(degs) > 1:
            raise InhomogeneousError(
                f"mixed total degrees {sorted(degs)} in one polynomial"
            )
        self.terms = tt
        self.degree = degs.pop() if degs else None  # None marks the zero polynomial

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, variables) -> "HPoly":
        return cls(variables, {})

    @classmethod
    def constant(cls, variables, c) -> "HPoly":
        return cls(variables, {(0,) * len(tuple(variables)): c})

    @classmethod
    def variable(cls, variables, i) -> "HPoly":
        variables = tuple(variables)
        e = [0] * len(variables)
        e[i] = 1
        return cls(variables, {tuple(e): 1})

    @classmethod
    def linear_form(cls, variables, coeffs) -> "HPoly":
        variables = tuple(variables)
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * len(variables)
            e[i] = 1
            terms[tuple(e)] = c
        return cls(variables, terms)

    # -- queries ----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return self.is_zero or self.degree == 0

    def __bool__(self):
        return not self.is_zero

    def __eq__(self, other):
        if not isinstance(other, HPoly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def involves(self, i: int) -> bool:
        return any(e[i] > 0 for e in self.terms)

    # -- arithmetic --------------------------------------------------------

    def _check_vars(self, other):
        if self.variables != other.variables:
            raise InputError("variable lists differ")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = HPoly.constant(self.variables, other)
        self._check_vars(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.degree != other.degree:
            raise InhomogeneousError(
                f"cannot add forms of degrees {self.degree} and {other.degree}"
            )
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return HPoly(self.variables, out)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = HPoly.constant(self.variables, other)
        return self + (other * -1)

    def __neg__(self):
        return self * -1

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return HPoly(self.variables, {e: c * other for e, c in self.terms.items()})
        self._check_vars(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return HPoly(self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise InputError("negative power")
        out = HPoly.constant(self.variables, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- calculus / evaluation ---------------------------------------------

    def partial(self, i: int) -> "HPoly":
        out = {}
        for e, c in self.terms.items():
            if e[i] > 0:
                ne = e[:i] + (e[i] - 1,) + e[i + 1 :]
                out[ne] = out.get(ne, Fraction(0)) + c * e[i]
        return HPoly(self.variables, out)

    def gradient(self):
        return tuple(self.partial(i) for i in range(len(self.variables)))

    def evaluate(self, point) -> Fraction:
        coords = [_coerce(v) for v in point]
        if len(coords) != len(self.variables):
            raise InputError(
                f"point has {len(coords)} coordinates, expected {len(self.variables)}"
            )
        acc = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for v, k in zip(coords, e):
                if k:
                    t *= v**k
            acc += t
        return acc

    def substitute(self, images):
        """Substitute variable i -> images[i]; images share one variable list."""
        if len(images) != len(self.variables):
            raise InputError("substitution image count does not match variables")
        tvars = images[0].variables
        out = HPoly.zero(tvars)
        powers = [{0: HPoly.constant(tvars, 1)} for _ in images]
        for e, c in self.terms.items():
            term = HPoly.constant(tvars, c)
            for i, k in enumerate(e):
                if k:
                    cache = powers[i]
                    if k not in cache:
                        p = max(cache)
                        acc = cache[p]
                        while p < k:
                            acc = acc * images[i]
                            p += 1
                            cache[p] = acc
                    term = term * cache[k]
            out = term if out.is_zero else (out + term if not term.is_zero else out)
        return out

    def linear_change(self, matrix) -> "HPoly":
        """Substitute x_i -> sum_j matrix[i][j] x_j (same variable list)."""
        images = [HPoly.linear_form(self.variables, row) for row in matrix]
        return self.substitute(images)

    def affine(self, chart: int) -> APoly:
        """Set variable `chart` to 1; remaining variables keep their order."""
        n = len(self.variables)
        out = {}
        for e, c in self.terms.items():
            ne = tuple(e[i] for i in range(n) if i != chart)
            out[ne] = out.get(ne, Fraction(0)) + c
        return APoly(n - 1, out)

    # -- views as a univariate polynomial ------------------------------------

    def coeffs_wrt(self, k: int):
        """Coefficient list [c_0, ..., c_p] with self = sum c_j * x_k^j."""
        p = self.degree_in(k)
        if p < 0:
            return [self] if not self.is_zero else []
        coeffs = [dict() for _ in range(p + 1)]
        for e, c in self.terms.items():
            ne = e[:k] + (0,) + e[k + 1 :]
            coeffs[e[k]][ne] = c
        return [HPoly(self.variables, d) for d in coeffs]

    @classmethod
    def from_coeffs_wrt(cls, coeffs, k: int) -> "HPoly":
        out = {}
        for j, cf in enumerate(coeffs):
            for e, c in cf.terms.items():
                ne = e[:k] + (j,) + e[k + 1 :]
                out[ne] = out.get(ne, Fraction(0)) + c
        return cls(coeffs[0].variables, out)

    # -- normalization -------------------------------------------------------

    def content_den_cleared(self):
        """(integer-primitive HPoly with positive lex-leading coeff, scale)."""
        if self.is_zero:
            return self, Fraction(1)
        den = 1
        for c in self.terms.values():
            den = den * c.denominator // int_gcd(den, c.denominator)
        num = 0
        for c in self.terms.values():
            num = int_gcd(num, int(c * den))
        lead = max(self.terms)
        sign = 1 if self.terms[lead] > 0 else -1
        scale = Fraction(sign * num, den)
        return self * (1 / scale), scale

    def primitive(self) -> "HPoly":
        return self.content_den_cleared()[0]

    def __repr__(self):
        return f"HPoly({render_hpoly(self)!r})"


# ---------------------------------------------------------------------------
# parsing and printing
# ---------------------------------------------------------------------------


def _tokenize(text: str):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*^()/":
            tokens.append((ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("INT", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("NAME", text[i:j], i))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("END", "", n))
    return tokens


class _Parser:
    """Recursive-descent parser producing a degree-graded term dict."""

    def __init__(self, text, variables):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.variables = list(variables)
        self.nvars = len(self.variables)

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind}, found {tok[1]!r}", tok[2])
        self.pos += 1
        return tok

    def parse(self) -> APoly:
        result = self.expr()
        tok = self.peek()
        if tok[0] != "END":
            raise ParseError(f"unexpected trailing {tok[1]!r}", tok[2])
        return result

    def expr(self) -> APoly:
        sign = 1
        if self.peek()[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        acc = self.term() * sign
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            acc = acc + (t * (-1 if op == "-" else 1))
        return acc

    def term(self) -> APoly:
        acc = self.factor()
        while self.peek()[0] == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> APoly:
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.take("INT")
            k = int(tok[1])
            out = APoly(self.nvars, {(0,) * self.nvars: 1})
            for _ in range(k):
                out = out * base
            return out
        return base

    def atom(self) -> APoly:
        tok = self.peek()
        if tok[0] == "(":
            self.take()
            inner = self.expr()
            closing = self.peek()
            if closing[0] != ")":
                raise ParseError("unbalanced parenthesis", closing[2])
            self.take()
            return inner
        if tok[0] == "INT":
            self.take()
            num = int(tok[1])
            if self.peek()[0] == "/":
                self.take()
                den_tok = self.take("INT")
                den = int(den_tok[1])
                if den == 0:
                    raise ParseError("zero denominator", den_tok[2])
                return APoly(self.nvars, {(0,) * self.nvars: Fraction(num, den)})
            return APoly(self.nvars, {(0,) * self.nvars: num})
        if tok[0] == "NAME":
            self.take()
            if tok[1] not in self.variables:
                raise ParseError(f"unknown variable {tok[1]!r}", tok[2])
            i = self.variables.index(tok[1])
            e = [0] * self.nvars
            e[i] = 1
            return APoly(self.nvars, {tuple(e): 1})
        raise ParseError(f"unexpected {tok[1]!r}", tok[2])


def parse_graded(text: str, variables):
    """Parse to a dict {total degree: HPoly} of the homogeneous parts."""
    ap = _Parser(text, variables).parse()
    parts = {}
    for e, c in ap.terms.items():
        parts.setdefault(sum(e), {})[e] = c
    return {d: HPoly(variables, t) for d, t in sorted(parts.items())}


def parse_hpoly(text: str, variables) -> HPoly:
    """Parse a homogeneous polynomial; inhomogeneous input is rejected."""
    parts = parse_graded(text, variables)
    if not parts:
        return HPoly.zero(variables)
    if len(parts) > 1:
        raise InhomogeneousError(
            f"inhomogeneous polynomial: degrees {sorted(parts)} present"
        )
    return next(iter(parts.values()))


def render_hpoly(f: HPoly) -> str:
    if f.is_zero:
        return "0"
    items = sorted(f.terms.items(), reverse=True)
    chunks = []
    for e, c in items:
        factors = []
        for v, k in zip(f.variables, e):
            if k == 1:
                factors.append(v)
            elif k > 1:
                factors.append(f"{v}^{k}")
        body = "*".join(factors)
        if not body:
            chunk = str(c)
        elif c == 1:
            chunk = body
        elif c == -1:
            chunk = f"-{body}"
        else:
            chunk = f"{c}*{body}"
        chunks.append(chunk)
    out = chunks[0]
    for chunk in chunks[1:]:
        out += f" - {chunk[1:]}" if chunk.startswith("-") else f" + {chunk}"
    return out


# ---------------------------------------------------------------------------
# projective points
# ---------------------------------------------------------------------------


class ProjPoint:
    """Projective point with canonical representative (first nonzero = 1)."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        cs = [_coerce(c) for c in coords]
        pivot = next((c for c in cs if c != 0), None)
        if pivot is None:
            raise InputError("all projective coordinates are zero")
        self.coords = tuple(c / pivot for c in cs)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __iter__(self):
        return iter(self.coords)

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return "(" + ":".join(str(c) for c in self.coords) + ")"


def line_through(p: ProjPoint, q: ProjPoint, variables) -> HPoly:
    """Line through two distinct points of P^2, as a linear form."""
    if len(p) != 3 or len(q) != 3:
        raise InputError("line_through works in the projective plane")
    a = (
        p[1] * q[2] - p[2] * q[1],
        p[2] * q[0] - p[0] * q[2],
        p[0] * q[1] - p[1] * q[0],
    )
    if all(c == 0 for c in a):
        raise InputError("points coincide")
    return HPoly.linear_form(variables, a).primitive()


def line_intersection(l1: HPoly, l2: HPoly) -> ProjPoint:
    """Intersection point of two distinct lines in P^2."""
    a = [l1.evaluate((1, 0, 0)), l1.evaluate((0, 1, 0)), l1.evaluate((0, 0, 1))]
    b = [l2.evaluate((1, 0, 0)), l2.evaluate((0, 1, 0)), l2.evaluate((0, 0, 1))]
    cross = (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )
    return ProjPoint(cross)


def parameterize_line(l: HPoly):
    """Rational parameterization of a rational line: (theta, A, B).

    theta(s, t) = s*A + t*B for two points spanning the line."""
    if l.degree != 1 or len(l.variables) != 3:
        raise InputError("parameterize_line expects a linear ternary form")
    a = [l.evaluate((1, 0, 0)), l.evaluate((0, 1, 0)), l.evaluate((0, 0, 1))]
    k = next(i for i, c in enumerate(a) if c != 0)
    pts = []
    for i in range(3):
        if i == k:
            continue
        coords = [Fraction(0)] * 3
        coords[i] = a[k]
        coords[k] = -a[i]
        pts.append(ProjPoint(coords))
    A, B = pts
    from .ratpoly import BinaryForm

    comps = [BinaryForm((A[i], B[i]), 1) for i in range(3)]
    return RationalMap(comps), A, B


def line_parameter_of_point(A: ProjPoint, B: ProjPoint, p: ProjPoint):
    """(s : t) with p = s*A + t*B, for p on the line spanned by A and B."""
    for i in range(3):
        for j in range(i + 1, 3):
            det = A[i] * B[j] - A[j] * B[i]
            if det != 0:
                s = (p[i] * B[j] - p[j] * B[i]) / det
                t = (A[i] * p[j] - A[j] * p[i]) / det
                if s == 0 and t == 0:
                    raise InputError("point is not on the line")
                # exact check
                scale = next(
                    (p[k] / (s * A[k] + t * B[k]) for k in range(3) if s * A[k] + t * B[k] != 0),
                    None,
                )
                if scale is None or any(
                    scale * (s * A[k] + t * B[k]) != p[k] for k in range(3)
                ):
                    raise InputError("point is not on the line")
                return (s, t)
    raise InputError("degenerate span")


# ---------------------------------------------------------------------------
# exact division and gcd
# ---------------------------------------------------------------------------


def try_exact_div(f: HPoly, g: HPoly):
    """Quotient f/g if g divides f exactly, else None (lex long division)."""
    if g.is_zero:
        raise InputError("division by the zero polynomial")
    if f.is_zero:
        return HPoly.zero(f.variables)
    if f.degree < g.degree:
        return None
    rem = dict(f.terms)
    out = {}
    glead = max(g.terms)
    gc = g.terms[glead]
    gitems = list(g.terms.items())
    while rem:
        e = max(rem)
        c = rem[e]
        qe = tuple(a - b for a, b in zip(e, glead))
        if any(k < 0 for k in qe):
            return None
        qc = c / gc
        out[qe] = out.get(qe, Fraction(0)) + qc
        for ge, gcf in gitems:
            ne = tuple(a + b for a, b in zip(qe, ge))
            nv = rem.get(ne, Fraction(0)) - qc * gcf
            if nv == 0:
                rem.pop(ne, None)
            else:
                rem[ne] = nv
    return HPoly(f.variables, out)


def exact_div(f: HPoly, g: HPoly) -> HPoly:
    q = try_exact_div(f, g)
    if q is None:
        raise InputError("exact_div: division not exact")
    return q


def divides(g: HPoly, f: HPoly) -> bool:
    return try_exact_div(f, g) is not None


def _pseudo_rem_wrt(a: HPoly, b: HPoly, k: int) -> HPoly:
    """Pseudo-remainder of a by b with respect to variable k."""
    db = b.degree_in(k)
    lb = b.coeffs_wrt(k)[db]
    steps = a.degree_in(k) - db + 1
    cur = a
    while not cur.is_zero and cur.degree_in(k) >= db:
        ca = cur.coeffs_wrt(k)
        da = len(ca) - 1
        la = ca[da]
        shift = HPoly.variable(a.variables, k) ** (da - db)
        cur = cur * lb - b * la * shift
        steps -= 1
    if steps > 0 and not cur.is_zero:
        cur = cur * lb**steps
    return cur


def mv_gcd(f: HPoly, g: HPoly) -> HPoly:
    """Primitive gcd over Q with positive lex-leading coefficient."""
    if f.is_zero and g.is_zero:
        raise InputError("gcd undefined for two zero polynomials")
    if f.is_zero:
        return g.primitive()
    if g.is_zero:
        return f.primitive()
    if f.is_constant or g.is_constant:
        return HPoly.constant(f.variables, 1)
    nvars = len(f.variables)
    used = [i for i in range(nvars) if f.involves(i) or g.involves(i)]
    if len(used) == 1:
        k = used[0]
        pu = UPoly([c.terms.get((0,) * nvars, Fraction(0)) for c in f.coeffs_wrt(k)])
        qu = UPoly([c.terms.get((0,) * nvars, Fraction(0)) for c in g.coeffs_wrt(k)])
        h = upoly_gcd(pu, qu)
        out = {}
        for j, c in enumerate(h.coeffs):
            if c:
                e = [0] * nvars
                e[k] = j
                out[tuple(e)] = c
        return HPoly(f.variables, out).primitive()
    k = used[-1]
    fk, fc = _primitive_wrt(f, k)
    gk, gc = _primitive_wrt(g, k)
    cont = mv_gcd(fc, gc)
    a, b = (fk, gk) if fk.degree_in(k) >= gk.degree_in(k) else (gk, fk)
    while not b.is_zero:
        r = _pseudo_rem_wrt(a, b, k)
        if r.is_zero:
            a, b = b, r
            break
        if not r.involves(k):
            # nonzero remainder free of the main variable: primitive parts coprime in k
            a, b = HPoly.constant(f.variables, 1), HPoly.zero(f.variables)
            break
        a, b = b, _primitive_wrt(r, k)[0]
    pp = _primitive_wrt(a, k)[0] if a.involves(k) else HPoly.constant(f.variables, 1)
    return (cont * pp).primitive()


def _primitive_wrt(f: HPoly, k: int):
    """(primitive part wrt variable k, content wrt variable k)."""
    coeffs = [c for c in f.coeffs_wrt(k) if not c.is_zero]
    cont = coeffs[0]
    for c in coeffs[1:]:
        if cont.is_constant:
            break
        cont = mv_gcd(cont, c)
    if cont.is_constant:
        return f.primitive(), HPoly.constant(f.variables, 1)
    return exact_div(f, cont).primitive(), cont.primitive()


def squarefree_decomposition_h(f: HPoly):
    """Multivariate squarefree decomposition: list of (primitive factor, mult)."""
    if f.is_zero:
        raise InputError("squarefree decomposition of zero")
    if f.is_constant:
        return []
    partials = [p for p in f.gradient() if not p.is_zero]
    d = partials[0] if len(partials) == 1 else None
    if d is None:
        d = mv_gcd(partials[0], partials[1])
        for p in partials[2:]:
            if d.is_constant:
                break
            d = mv_gcd(d, p)
    d = mv_gcd(f, d)
    if d.is_constant:
        return [(f.primitive(), 1)]
    c = exact_div(f, d).primitive()
    out = []
    i = 1
    while not c.is_constant:
        y = mv_gcd(c, d)
        fi = exact_div(c, y)
        if not fi.is_constant:
            out.append((fi.primitive(), i))
        c = y
        d = exact_div(d, y) if not y.is_constant else d
        i += 1
    return out


def squarefree_part_h(f: HPoly) -> HPoly:
    out = HPoly.constant(f.variables, 1)
    for fac, _ in squarefree_decomposition_h(f):
        out = out * fac
    return out.primitive()


# ---------------------------------------------------------------------------
# rational maps and pullback
# ---------------------------------------------------------------------------


PARAM_VARS = ("s", "t")


class RationalMap:
    """Map P^1 -> P^(n-1) by equal-degree coprime binary forms."""

    __slots__ = ("components",)

    def __init__(self, components):
        comps = list(components)
        if not comps or all(c.is_zero for c in comps):
            raise InputError("rational map needs a nonzero component")
        degs = {c.formal_degree for c in comps}
        if len(degs) != 1:
            raise InputError("rational map components must share one degree")
        g = None
        for c in comps:
            if c.is_zero:
                continue
            u = c.dehomogenized()
            g = u if g is None else upoly_gcd(g, u)
        smult = min(c.s_multiplicity() for c in comps if not c.is_zero)
        if (g is not None and g.degree > 0) or smult > 0:
            raise InputError("rational map components share a factor")
        self.components = tuple(comps)

    @classmethod
    def from_tuples(cls, rows, degree):
        return cls([BinaryForm(r, degree) for r in rows])

    @property
    def degree(self) -> int:
        return self.components[0].formal_degree

    def evaluate(self, s, t) -> ProjPoint:
        return ProjPoint([c.evaluate(s, t) for c in self.components])


def pullback(f: HPoly, theta: RationalMap) -> BinaryForm:
    """f(theta(s,t)) as a binary form of formal degree deg(f)*deg(theta)."""
    if len(theta.components) != len(f.variables):
        raise InputError("component count does not match variable count")
    n = f.degree if f.degree is not None else 0
    target = n * theta.degree
    if f.is_zero:
        return BinaryForm((), target)
    svars = PARAM_VARS
    s_h = HPoly.variable(svars, 0)
    t_h = HPoly.variable(svars, 1)
    images = []
    for comp in theta.components:
        acc = HPoly.zero(svars)
        m = comp.formal_degree
        for i, c in enumerate(comp.coeffs):
            if c:
                acc = acc + s_h ** (m - i) * t_h**i * c
        if acc.is_zero:
            acc = HPoly.zero(svars)
        images.append(acc)
    # zero components need an explicit degree-0 placeholder times zero
    fixed = []
    for img, comp in zip(images, theta.components):
        fixed.append(img)
    composed = _substitute_allow_zero(f, fixed, svars)
    out = [Fraction(0)] * (target + 1)
    for e, c in composed.terms.items():
        out[e[1]] += c
    return BinaryForm(out, target)


def _substitute_allow_zero(f: HPoly, images, tvars):
    out = HPoly.zero(tvars)
    cache = [{} for _ in images]
    for e, c in f.terms.items():
        term = HPoly.constant(tvars, c)
        dead = False
        for i, k in enumerate(e):
            if not k:
                continue
            if images[i].is_zero:
                dead = True
                break
            cc = cache[i]
            if k not in cc:
                acc = images[i]
                p = 1
                cc[1] = acc
                while p < k:
                    acc = acc * images[i]
                    p += 1
                    cc[p] = acc
            term = term * cc[k]
        if dead or term.is_zero:
            continue
        out = term if out.is_zero else out + term
    return out


# ---------------------------------------------------------------------------
# bivariate resultants
# ---------------------------------------------------------------------------


def _specialize(f: HPoly, k: int, i1: int, i2: int, u: Fraction, v: Fraction) -> UPoly:
    """f with (var i1, var i2) = (u, v), as a UPoly in variable k."""
    out = [Fraction(0)] * (f.degree_in(k) + 1)
    for e, c in f.terms.items():
        val = c
        if e[i1]:
            val *= u ** e[i1]
        if e[i2]:
            val *= v ** e[i2]
        out[e[k]] += val
    return UPoly(out)


def bivariate_resultant(f: HPoly, g: HPoly, eliminate: int) -> BinaryForm:
    """Resultant of two ternary forms with respect to one variable.

    Returns a binary form in the two remaining variables (in index
    order).  Raises CommonFactor when the inputs share a factor that
    involves the eliminated variable.
    """
    from .errors import CommonFactor

    if f.is_zero or g.is_zero:
        raise InputError("resultant of zero")
    if len(f.variables) != 3:
        raise InputError("bivariate_resultant expects ternary forms")
    rest = [i for i in range(3) if i != eliminate]
    i1, i2 = rest
    names = (f.variables[i1], f.variables[i2])
    p, q = f.degree_in(eliminate), g.degree_in(eliminate)
    if p > 0 and q > 0:
        h = mv_gcd(f, g)
        if h.involves(eliminate):
            raise CommonFactor(render_hpoly(h))
    if p < 0 or q < 0:
        raise InputError("zero input")
    if p == 0 and q == 0:
        raise InputError("neither input involves the eliminated variable")
    if p == 0:
        out = _as_binary(f**q, i1, i2, names)
        return out
    if q == 0:
        return _as_binary(g**p, i1, i2, names)
    m, n = f.degree, g.degree
    bound = p * n + q * m - p * q
    fi, fscale = f.content_den_cleared()
    gi, gscale = g.content_den_cleared()
    # samples of Res(fi, gi) along (u, 1); skip points where a leading coeff drops
    samples = []
    u = 0
    while len(samples) < bound + 1:
        for cand in (Fraction(u), Fraction(-u)) if u else (Fraction(0),):
            pu = _specialize(fi, eliminate, i1, i2, cand, Fraction(1))
            qu = _specialize(gi, eliminate, i1, i2, cand, Fraction(1))
            if pu.degree == p and qu.degree == q:
                ai, asc = pu.int_coeffs()
                bi, bsc = qu.int_coeffs()
                val = Fraction(_int_resultant(ai, bi), asc**q * bsc**p)
                samples.append((cand, val))
            if len(samples) == bound + 1:
                break
        u += 1
    rho = _lagrange(samples)
    # undo the global clearing so the result is the resultant of f, g exactly
    corr = fscale**q * gscale**p
    coeffs = [rho.coefficient(bound - i) * corr for i in range(bound + 1)]
    return BinaryForm(coeffs, bound, names[0], names[1])


def _as_binary(h: HPoly, i1: int, i2: int, names) -> BinaryForm:
    n = h.degree if h.degree is not None else 0
    out = [Fraction(0)] * (n + 1)
    for e, c in h.terms.items():
        out[e[i2]] += c
    return BinaryForm(out, n, names[0], names[1])


def _lagrange(samples) -> UPoly:
    """Interpolating polynomial through (x_i, y_i) pairs, exact."""
    acc = UPoly.zero()
    for i, (xi, yi) in enumerate(samples):
        if yi == 0:
            continue
        num = UPoly.constant(yi)
        den = Fraction(1)
        for j, (xj, _) in enumerate(samples):
            if i != j:
                num = num * UPoly((-xj, 1))
                den *= xi - xj
        acc = acc + num * (1 / den)
    return acc
