import random
from fractions import Fraction as F

import pytest

from monoidsurf.errors import CommonFactor, InhomogeneousError, ParseError
from monoidsurf.hpoly import (
    HPoly,
    ProjPoint,
    RationalMap,
    bivariate_resultant,
    divides,
    exact_div,
    line_intersection,
    line_parameter_of_point,
    line_through,
    mv_gcd,
    parameterize_line,
    parse_graded,
    parse_hpoly,
    pullback,
    render_hpoly,
    squarefree_decomposition_h,
)
from monoidsurf.ratpoly import BinaryForm

V = ("x1", "x2", "x3")


def p(text):
    return parse_hpoly(text, V)


def rand_hpoly(rng, deg, density=0.7, bound=9):
    terms = {}
    for e1 in range(deg + 1):
        for e2 in range(deg + 1 - e1):
            if rng.random() < density:
                terms[(e1, e2, deg - e1 - e2)] = F(rng.randint(-bound, bound), rng.randint(1, 3))
    return HPoly(V, terms)


class TestParsing:
    def test_case_one_cubic(self):
        f = p("x1*x2*x3 + x2^3 + x3^3")
        assert f.degree == 3 and len(f.terms) == 3

    def test_cuspidal_cubic(self):
        assert p("x1^3 - x2^2*x3").terms == {(3, 0, 0): 1, (0, 2, 1): -1}

    def test_inhomogeneous_rejected(self):
        with pytest.raises(InhomogeneousError):
            p("x1 + x2^2")

    def test_syntax_error_position(self):
        with pytest.raises(ParseError) as exc:
            p("x1 + * x2^2")
        assert exc.value.position == 5

    def test_unknown_variable(self):
        with pytest.raises(ParseError):
            p("x1 + y")

    def test_no_implicit_multiplication(self):
        with pytest.raises(ParseError):
            p("2x1^2*x2")

    def test_rational_literals_and_parens(self):
        f = p("1/2*(x1 + x2)^2 - 3*x3^2")
        assert f.terms[(2, 0, 0)] == F(1, 2)
        assert f.terms[(1, 1, 0)] == 1
        assert f.terms[(0, 0, 2)] == -3

    def test_render_parse_roundtrip(self):
        rng = random.Random(3)
        for _ in range(100):
            h = rand_hpoly(rng, rng.randint(1, 4))
            if h.is_zero:
                continue
            assert parse_hpoly(render_hpoly(h), V) == h

    def test_graded_parse(self):
        parts = parse_graded("x^3+y^3+5*x*y*z-z^3*(x+y)", ("x", "y", "z"))
        assert sorted(parts) == [3, 4]


class TestEvaluationAndCalculus:
    def test_vanishing_at_singular_point(self):
        assert p("x1*x2*x3 + x2^3 + x3^3").evaluate((1, 0, 0)) == 0

    def test_trivial_values(self):
        assert p("x1^2 + x2^2").evaluate((0, 0, 1)) == 0
        assert p("x3^4").evaluate((1, 1, 2)) == 16

    def test_gradient(self):
        g = p("x1*x2*x3").gradient()
        assert [render_hpoly(h) for h in g] == ["x2*x3", "x1*x3", "x1*x2"]
        cusp_grad = [h.evaluate((0, 0, 1)) for h in p("x1^3 - x2^2*x3").gradient()]
        assert cusp_grad == [0, 0, 0]

    def test_euler_identity(self):
        rng = random.Random(5)
        for _ in range(20):
            f = rand_hpoly(rng, 4)
            if f.is_zero:
                continue
            acc = HPoly.zero(V)
            for i, d in enumerate(f.gradient()):
                acc = acc + HPoly.variable(V, i) * d
            assert acc == f * 4

    def test_homogeneity_preserved(self):
        rng = random.Random(8)
        a, b = rand_hpoly(rng, 3), rand_hpoly(rng, 3)
        if not (a.is_zero or b.is_zero):
            assert (a + b).degree in (3, None)
            assert (a * b).degree == 6
            assert a.partial(0).degree in (2, None)


CASE1_THETA = RationalMap(
    [BinaryForm((-1, 0, 0, -1)), BinaryForm((0, 1, 0, 0)), BinaryForm((0, 0, 1, 0))]
)


class TestPullback:
    def test_quartic_pullback_corners(self):
        # f_4 = x1^4 pulls back to s^12 + ... + t^12 along the nodal cubic
        bf = pullback(p("x1^4"), CASE1_THETA)
        assert bf.formal_degree == 12
        assert bf.coeffs[0] == 1 and bf.coeffs[12] == 1
        assert bf.coeffs[1] == 0  # the s^11 t slot carries -a_2

    def test_full_coefficient_map(self):
        # every monomial of f_4 lands where the expansion says it does
        expect = {
            (4, 0, 0): {0: 1, 3: 4, 6: 6, 9: 4, 12: 1},  # a_1 slots
            (3, 1, 0): {1: -1, 4: -3, 7: -3, 10: -1},  # a_2
            (3, 0, 1): {2: -1, 5: -3, 8: -3, 11: -1},  # a_3
            (2, 2, 0): {2: 1, 5: 2, 8: 1},  # a_4
            (2, 1, 1): {3: 1, 6: 2, 9: 1},  # a_5
            (2, 0, 2): {4: 1, 7: 2, 10: 1},  # a_6
            (1, 3, 0): {3: -1, 6: -1},  # a_7
            (1, 2, 1): {4: -1, 7: -1},  # a_8
            (1, 1, 2): {5: -1, 8: -1},  # a_9
            (1, 0, 3): {6: -1, 9: -1},  # a_10
            (0, 4, 0): {4: 1},  # a_11
            (0, 3, 1): {5: 1},  # a_12
            (0, 2, 2): {6: 1},  # a_13
            (0, 1, 3): {7: 1},  # a_14
            (0, 0, 4): {8: 1},  # a_15
        }
        for mono, slots in expect.items():
            bf = pullback(HPoly(V, {mono: 1}), CASE1_THETA)
            got = {i: c for i, c in enumerate(bf.coeffs) if c != 0}
            assert got == {k: F(v) for k, v in slots.items()}, mono

    def test_component_pullback_vanishes(self):
        f3 = p("x1*x2*x3 + x2^3 + x3^3")
        assert pullback(f3, CASE1_THETA).is_zero

    def test_line_map(self):
        theta = RationalMap([BinaryForm((1, 0)), BinaryForm((0, 1)), BinaryForm((0, 0), 1)])
        assert pullback(p("x3"), theta).is_zero
        assert list(pullback(p("x2"), theta).coeffs) == [0, 1]

    def test_vanishing_iff_divisible_on_all_nine_cones(self):
        cones = {
            "x1*x2*x3 + x2^3 + x3^3": [CASE1_THETA],
            "x1^3 - x2^2*x3": [
                RationalMap([BinaryForm((0, 1, 0, 0)), BinaryForm((1, 0, 0, 0)), BinaryForm((0, 0, 0, 1))])
            ],
            "x3*(x1*x2 + x3^2)": [
                RationalMap([BinaryForm((1, 0)), BinaryForm((0, 1)), BinaryForm((0, 0), 1)]),
                RationalMap([BinaryForm((1, 0, 0)), BinaryForm((0, 0, -1)), BinaryForm((0, 1, 0))]),
            ],
            "x3*(x1*x3 + x2^2)": [
                RationalMap([BinaryForm((1, 0)), BinaryForm((0, 1)), BinaryForm((0, 0), 1)]),
                RationalMap([BinaryForm((1, 0, 0)), BinaryForm((0, 1, 0)), BinaryForm((0, 0, -1))]),
            ],
            "x1*x2*x3": [
                RationalMap([BinaryForm((0, 0), 1), BinaryForm((1, 0)), BinaryForm((0, 1))]),
            ],
            "x2^3 - x2*x3^2": [
                RationalMap([BinaryForm((1, 0)), BinaryForm((0, 0), 1), BinaryForm((0, 1))]),
                RationalMap([BinaryForm((1, 0)), BinaryForm((0, 1)), BinaryForm((0, 1))]),
            ],
            "x2*x3^2": [
                RationalMap([BinaryForm((1, 0)), BinaryForm((0, 0), 1), BinaryForm((0, 1))]),
                RationalMap([BinaryForm((1, 0)), BinaryForm((0, 1)), BinaryForm((0, 0), 1)]),
            ],
            "x3^3": [
                RationalMap([BinaryForm((1, 0)), BinaryForm((0, 1)), BinaryForm((0, 0), 1)]),
            ],
        }
        probe = p("x1^4 + x2^4 + x3^4 + x1*x2*x3^2")
        for text, thetas in cones.items():
            f3 = p(text)
            for theta in thetas:
                # the map parameterizes a component, so f3 pulls back to zero
                assert pullback(f3, theta).is_zero
                # a generic quartic does not vanish on the component
                assert not pullback(probe, theta).is_zero

    def test_degree_multiplies(self):
        rng = random.Random(12)
        f = rand_hpoly(rng, 2)
        bf = pullback(f, CASE1_THETA)
        assert bf.formal_degree == 2 * 3


class TestBivariateResultant:
    def test_substitute_line(self):
        r = bivariate_resultant(p("x1*x2 + x3^2"), p("x3"), 2)
        assert list(r.coeffs) == [0, 1, 0]  # x1*x2

    def test_two_lines(self):
        r = bivariate_resultant(p("x1 - x2"), p("x1 - x3"), 0)
        assert list(r.coeffs) in ([1, -1], [-1, 1])  # x2 - x3 up to sign

    def test_case1_degree_twelve(self):
        f3 = p("x1*x2*x3 + x2^3 + x3^3")
        f4 = p("x1^4 + x2^4 + 2*x3^4 + x1*x2^2*x3")
        r = bivariate_resultant(f3, f4, 2)
        assert r.formal_degree == 12 and not r.is_zero

    def test_common_factor_named(self):
        with pytest.raises(CommonFactor) as exc:
            bivariate_resultant(p("x3*x1"), p("x3*x2"), 2)
        assert "x3" in str(exc.value.factor)

    def test_profile_degree_agreement(self):
        import monoidsurf.intersect as ix

        rng = random.Random(17)
        done = 0
        while done < 5:
            f = rand_hpoly(rng, 2, bound=3)
            g = rand_hpoly(rng, 3, bound=3)
            if f.is_zero or g.is_zero or not mv_gcd(f, g).is_constant:
                continue
            if f.evaluate((0, 0, 1)) == 0 or g.evaluate((0, 0, 1)) == 0:
                continue
            r = bivariate_resultant(f, g, 2)
            prof = ix.intersection_profile(f, g, rng)
            assert r.formal_degree == prof.total()
            done += 1


class TestGcdAndDivision:
    def test_visible_factor(self):
        a = p("x3") * p("x1*x2 + x3^2")
        b = p("x3") * p("x1")
        assert render_hpoly(mv_gcd(a, b)) == "x3"

    def test_three_line_factor(self):
        assert render_hpoly(mv_gcd(p("x2^3 - x2*x3^2"), p("x2"))) == "x2"

    def test_coprime_pair(self):
        assert mv_gcd(p("x1*x2*x3 + x2^3 + x3^3"), p("x1^4")).is_constant

    def test_planted_factor(self):
        g = p("x1 + x2 + x3")
        a = p("x1^2 + x2*x3") * g
        b = p("x1*x3 - x2^2") * g
        assert render_hpoly(mv_gcd(a, b)) == "x1 + x2 + x3"

    def test_exact_division(self):
        f = p("x2^3 - x2*x3^2")
        q = exact_div(f, p("x2"))
        assert q == p("x2^2 - x3^2")
        assert divides(p("x2 - x3"), f)
        assert not divides(p("x1"), f)

    def test_squarefree_decomposition(self):
        dec = squarefree_decomposition_h(p("x2*x3^2"))
        assert {(render_hpoly(h), m) for h, m in dec} == {("x2", 1), ("x3", 2)}
        dec = squarefree_decomposition_h(p("x3^3"))
        assert {(render_hpoly(h), m) for h, m in dec} == {("x3", 3)}


class TestPointsAndLines:
    def test_canonical_representative(self):
        assert ProjPoint((0, 0, -2)).coords == (0, 0, 1)
        assert ProjPoint((2, 4, 6)) == ProjPoint((1, 2, 3))

    def test_line_through_meet(self):
        l = line_through(ProjPoint((1, 0, 0)), ProjPoint((0, 1, 0)), V)
        assert render_hpoly(l) == "x3"
        assert line_intersection(p("x1"), p("x2")) == ProjPoint((0, 0, 1))

    def test_parameterize_line_roundtrip(self):
        theta, A, B = parameterize_line(p("x1 + 2*x2 - x3"))
        for s, t in ((1, 0), (0, 1), (3, -2)):
            pt = theta.evaluate(s, t)
            assert p("x1 + 2*x2 - x3").evaluate(pt.coords) == 0
        q = theta.evaluate(2, 5)
        s, t = line_parameter_of_point(A, B, q)
        assert ProjPoint((s, t)) == ProjPoint((2, 5))
