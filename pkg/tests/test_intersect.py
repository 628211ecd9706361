import random
from fractions import Fraction as F

import pytest

from monoidsurf.errors import (
    CommonFactor,
    IdenticallyZero,
    InfiniteZeroLocus,
    NotACommonZero,
)
from monoidsurf.hpoly import HPoly, ProjPoint, RationalMap, mv_gcd, parse_hpoly
from monoidsurf.intersect import (
    common_zeros,
    intersection_multiplicity_at,
    intersection_profile,
    is_transversal,
    milnor_number,
    pullback_multiplicities,
)
from monoidsurf.ratpoly import BinaryForm

V = ("x1", "x2", "x3")


def p(text):
    return parse_hpoly(text, V)


def pt(*c):
    return ProjPoint(c)


def rand_hpoly(rng, deg, bound=3):
    terms = {}
    for e1 in range(deg + 1):
        for e2 in range(deg + 1 - e1):
            if rng.random() < 0.7:
                terms[(e1, e2, deg - e1 - e2)] = rng.randint(-bound, bound)
    return HPoly(V, terms)


class TestOracle:
    def test_transversal_lines(self):
        assert intersection_multiplicity_at(p("x1"), p("x2"), pt(0, 0, 1)) == 1

    def test_tangent_conic_line(self):
        assert intersection_multiplicity_at(p("x1*x3 + x2^2"), p("x3"), pt(1, 0, 0)) == 2

    def test_extreme_basepoint_is_twelve(self):
        assert (
            intersection_multiplicity_at(p("x1*x2^2 + x3^3"), p("x1^4"), pt(0, 1, 0))
            == 12
        )

    def test_zero_off_the_locus(self):
        assert intersection_multiplicity_at(p("x1"), p("x2"), pt(1, 1, 1)) == 0

    def test_cusp_times_four(self):
        # unibranch cusp: parameter multiplicity matches the local length
        assert intersection_multiplicity_at(p("x1^3 - x2^2*x3"), p("x1^4"), pt(0, 0, 1)) == 8


class TestTransversality:
    def test_transversal(self):
        assert is_transversal(p("x1"), p("x2"), pt(0, 0, 1))

    def test_tangent(self):
        assert not is_transversal(p("x1*x3 + x2^2"), p("x3"), pt(1, 0, 0))

    def test_singular_member(self):
        # f singular at p forces dependence no matter what g does
        assert not is_transversal(p("x1*x2"), p("x1 + x2"), pt(0, 0, 1))

    def test_requires_common_zero(self):
        with pytest.raises(NotACommonZero):
            is_transversal(p("x1"), p("x2"), pt(1, 1, 1))

    def test_equivalence_with_oracle(self):
        rng = random.Random(23)
        target = pt(1, 2, 1)
        done = 0
        while done < 30:
            f = rand_hpoly(rng, rng.randint(1, 3))
            g = rand_hpoly(rng, rng.randint(1, 3))
            if f.is_zero or g.is_zero:
                continue
            # plant the common zero by subtracting the evaluation
            f = f * target[2] ** f.degree - HPoly(V, {(0, 0, f.degree): f.evaluate(target.coords)})
            g = g * target[2] ** g.degree - HPoly(V, {(0, 0, g.degree): g.evaluate(target.coords)})
            if f.is_zero or g.is_zero or not mv_gcd(f, g).is_constant:
                continue
            i = intersection_multiplicity_at(f, g, target)
            assert (i > 1) == (not is_transversal(f, g, target))
            done += 1


class TestProfile:
    def test_conic_and_chord(self):
        prof = intersection_profile(p("x1*x2 + x3^2"), p("x3"))
        pts = {e.point for e in prof.entries}
        assert pts == {pt(1, 0, 0), pt(0, 1, 0)}
        assert all(e.multiplicity == 1 for e in prof.entries)

    def test_conic_and_tangent(self):
        prof = intersection_profile(p("x1*x3 + x2^2"), p("x3"))
        assert len(prof.entries) == 1
        assert prof.entries[0].multiplicity == 2
        assert prof.entries[0].point == pt(1, 0, 0)

    def test_bezout_on_random_pairs(self):
        rng = random.Random(42)
        done = 0
        while done < 50:
            a = rand_hpoly(rng, rng.randint(1, 4))
            b = rand_hpoly(rng, rng.randint(1, 4))
            if a.is_zero or b.is_zero or not mv_gcd(a, b).is_constant:
                continue
            prof = intersection_profile(a, b, rng)
            assert prof.total() == a.degree * b.degree
            done += 1

    def test_no_real_intersections(self):
        f3 = p("x1*x2*x3 + x2^3 + x3^3")
        f4 = p("x1") * f3 + p("x1^2 + x2^2 + x3^2") ** 2
        prof = intersection_profile(f3, f4)
        assert prof.total() == 12
        assert all(e.real_count == 0 for e in prof.entries)
        assert all(e.size % 2 == 0 for e in prof.entries)

    def test_rational_points_satisfy_equations(self):
        f3 = p("x1*x2*x3 + x2^3 + x3^3")
        f4 = p("x1^4")
        prof = intersection_profile(f3, f4)
        for e in prof.rational_entries():
            assert f3.evaluate(e.point.coords) == 0
            assert f4.evaluate(e.point.coords) == 0

    def test_common_factor_rejected(self):
        with pytest.raises(CommonFactor):
            intersection_profile(p("x3*x1"), p("x3*x2"))

    def test_shear_invariance(self):
        f = p("x1*x2*x3 + x2^3 + x3^3")
        g = p("x1^2*x2^2 + x3^4 + x1*x2^3")
        sigs = []
        for seed in range(5):
            prof = intersection_profile(f, g, random.Random(seed))
            sigs.append(sorted((e.multiplicity, e.size, e.real_count) for e in prof.entries))
        assert all(s == sigs[0] for s in sigs)

    def test_three_way_agreement(self):
        # eliminant multiplicities at rational points match the oracle and,
        # where a parameterization exists, the pullback multiplicities
        theta = RationalMap(
            [BinaryForm((1, 0, 0)), BinaryForm((0, 1, 0)), BinaryForm((0, 0, -1))]
        )  # conic x1*x3 + x2^2
        conic = p("x1*x3 + x2^2")
        f4 = p("x2^2*x3^2 - x1^2*x2*x3 + x1^4")
        prof = intersection_profile(conic, f4)
        excl, entries = pullback_multiplicities(f4, theta)
        for e in prof.rational_entries():
            assert intersection_multiplicity_at(conic, f4, e.point) == e.multiplicity
        # match pullback param points to geometric points
        for pe in entries:
            if pe.is_rational:
                s, t = pe.param
                gp = theta.evaluate(s, t)
                assert prof.multiplicity_at(gp) == pe.multiplicity


class TestPullbackMultiplicities:
    def test_case2_extreme(self):
        theta = RationalMap(
            [BinaryForm((0, 1, 0, 0)), BinaryForm((1, 0, 0, 0)), BinaryForm((0, 0, 0, 1))]
        )  # (s^2 t, s^3, t^3) on the cuspidal cubic
        excl, entries = pullback_multiplicities(p("x1^4"), theta, excluded=[(0, 1), (1, 0)])
        assert dict((tuple(map(F, k)), m) for k, m in excl) == {
            (F(0), F(1)): 8,
            (F(1), F(0)): 4,
        }
        assert entries == []

    def test_no_root_at_corners_when_a1_nonzero(self):
        theta = RationalMap(
            [BinaryForm((-1, 0, 0, -1)), BinaryForm((0, 1, 0, 0)), BinaryForm((0, 0, 1, 0))]
        )
        excl, entries = pullback_multiplicities(p("x1^4"), theta, excluded=[(0, 1), (1, 0)])
        assert all(m == 0 for _, m in excl)

    def test_single_line_root(self):
        theta = RationalMap([BinaryForm((1, 0)), BinaryForm((0, 1)), BinaryForm((0, 0), 1)])
        excl, entries = pullback_multiplicities(p("x2"), theta)
        assert len(entries) == 1 and entries[0].multiplicity == 1

    def test_component_raises(self):
        theta = RationalMap([BinaryForm((1, 0)), BinaryForm((0, 1)), BinaryForm((0, 0), 1)])
        with pytest.raises(IdenticallyZero):
            pullback_multiplicities(p("x3^2"), theta)


class TestCommonZeros:
    def test_three_general_lines(self):
        pts, classes = common_zeros(list(p("x1*x2*x3").gradient()))
        assert set(pts) == {pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1)}
        assert classes == []

    def test_conjugate_pair(self):
        pts, classes = common_zeros(list(p("x3*(x1*x3 + x1^2 + x2^2)").gradient()))
        assert pts == []
        assert len(classes) == 1
        assert classes[0].size == 2 and classes[0].real_count == 0

    def test_irrational_real_pair(self):
        pts, classes = common_zeros(list(p("x3*(x1^2 - 2*x2^2)").gradient()))
        assert pts == [pt(0, 0, 1)]
        assert len(classes) == 1 and classes[0].real_count == 2

    def test_smooth_curve_has_none(self):
        pts, classes = common_zeros(list(p("x1^3 + x2^3 + x3^3 + 3*x1*x2*x3").gradient()))
        assert pts == [] and classes == []

    def test_positive_dimensional_rejected(self):
        with pytest.raises(InfiniteZeroLocus):
            common_zeros([p("x3*x1"), p("x3*x2"), p("x3*(x1 + x2)")])


class TestMilnor:
    def test_extreme_monoid_point(self):
        from monoidsurf.hpoly import APoly

        g = APoly(3, {(1, 2, 0): 1, (0, 0, 3): 1, (4, 0, 0): 1})
        assert milnor_number(g, 3) == 10

    def test_ordinary_node(self):
        from monoidsurf.hpoly import APoly

        g = APoly(2, {(2, 0): 1, (0, 2): -1, (0, 3): 1})
        assert milnor_number(g, 2) == 1
