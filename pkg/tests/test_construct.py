import random
from fractions import Fraction as F

import pytest

from monoidsurf.construct import (
    ConstructionSpec,
    build_quartic_case,
    extreme_a_monoid,
    max_real_nodes_monoid,
)
from monoidsurf.errors import (
    ConditionUnsatisfiable,
    RoundTripMismatch,
    SpecLedgerMismatch,
)
from monoidsurf.hpoly import HPoly, parse_hpoly
from monoidsurf.quartic import quartic_report
from monoidsurf.singclass import extra_singularities, verify_real_a1_signature

V = ("x1", "x2", "x3")


def spec(**kw):
    return ConstructionSpec(kind="QUARTIC_CASE", **kw)


class TestExtreme:
    def test_d4(self):
        M = extreme_a_monoid(4)
        rep = extra_singularities(M)
        assert [r.complex_type for r in rep.records] == ["A_11"]
        assert rep.records[0].location.coords == (0, 0, 1, 0)

    def test_d5(self):
        rep = extra_singularities(extreme_a_monoid(5))
        assert [r.complex_type for r in rep.records] == ["A_19"]

    def test_milnor_closed_form_d4(self):
        from monoidsurf.singclass import monoid_point_milnor

        d = 4
        assert monoid_point_milnor(extreme_a_monoid(d)) == (d * d - 3 * d + 1) * (d - 2)


class TestMaxRealNodes:
    @pytest.mark.parametrize("d,count", [(3, 3), (4, 6), (5, 10)])
    def test_counts(self, d, count):
        M = max_real_nodes_monoid(d, F(1, 4))
        rep = extra_singularities(M)
        assert sum(r.size for r in rep.records) == count == d * (d - 1) // 2
        assert all(r.m == 2 for r in rep.records)
        assert all(r.real_count == r.size for r in rep.records)

    def test_hessian_signature_d4(self):
        M = max_real_nodes_monoid(4, F(1, 4))
        rep = extra_singularities(M)
        assert all(verify_real_a1_signature(M, r) for r in rep.records if r.is_rational)


class TestQuarticBuilders:
    def test_case1_a11_both_real_representatives(self):
        for omega in (1, -1):
            rep = build_quartic_case(spec(case=1, m=0, points={"curve": [((1, omega), 12)]}))
            assert rep.label == "T_{3,3,4}"
            assert [k for k, _ in rep.other_singularities] == ["A_11"]

    def test_case1_condition_two_enforced(self):
        # alpha^m products must match beta^m products; (1:2)^12 fails it
        with pytest.raises(ConditionUnsatisfiable):
            build_quartic_case(spec(case=1, m=0, points={"curve": [((1, 2), 12)]}))

    def test_case1_condition_two_solved_by_auto(self):
        rep = build_quartic_case(
            spec(case=1, m=0, points={"curve": [((1, 2), 6), ("auto", 6)]})
        )
        assert rep.case() == 1
        assert rep.label == "T_{3,3,4}"
        assert sorted(e.multiplicity for _, e in rep.other_singularities) == [6, 6]

    def test_case2_sum_condition(self):
        pts = [((1, a), 2) for a in (-5, -3, -1, 1, 3, 5)]
        rep = build_quartic_case(spec(case=2, m=0, points={"curve": pts}))
        assert rep.label == "Q_10"
        assert sorted(k for k, _ in rep.other_singularities) == ["A_1"] * 6
        # all six nodes are real
        assert all(e.real_count == e.size for _, e in rep.other_singularities)

    def test_case2_sum_condition_violated(self):
        pts = [((1, 1), 6), ((1, 2), 6)]  # sum m_i alpha_i = 18 != 0
        with pytest.raises(ConditionUnsatisfiable):
            build_quartic_case(spec(case=2, m=0, points={"curve": pts}))

    def test_case2_m_family(self):
        rep = build_quartic_case(spec(case=2, m=2, points={"curve": [((1, 1), 4), ((1, 2), 6)]}))
        assert rep.label == "Q_11"
        rep = build_quartic_case(spec(case=2, m=3, points={"curve": [((1, 1), 9)]}))
        assert rep.label == "Q_12"

    def test_case2_extreme_shape(self):
        # one A_11 with the cusp untouched: the extreme quartic family
        rep = build_quartic_case(spec(case=2, m=0, points={"curve": [("auto", 12)]}))
        assert rep.label == "Q_10"
        assert [k for k, _ in rep.other_singularities] == ["A_11"]

    def test_case3_one_parameter_family_ratio(self):
        base = dict(
            case=3,
            vertex={"j_0": 1, "k_0": 1, "j_1": 1, "k_1": 1},
            points={"line": [((1, 1), 2)], "conic": [((1, 2), 3), ((1, 3), 3)]},
        )
        r1 = build_quartic_case(spec(**base))
        r2 = build_quartic_case(spec(**base, ratio=F(3)))
        assert r1.label == r2.label == "T_{3,5,5}"
        assert r1.monoid.top.primitive() != r2.monoid.top.primitive()

    def test_case4(self):
        rep = build_quartic_case(
            spec(
                case=4,
                vertex={"j_0": 2, "k_0": 2},
                points={"line": [((1, 1), 2)], "conic": [((1, 2), 3), ((1, 3), 3)]},
            )
        )
        assert rep.case() == 4
        assert "S series" in rep.label

    def test_case6_series(self):
        rep = build_quartic_case(
            spec(
                case=6,
                vertex={"j_1": 2, "j_2": 1, "j_3": 1},
                points={
                    "line1": [((1, 1), 2)],
                    "line2": [((1, 2), 3)],
                    "line3": [((1, 3), 2), ((1, 4), 1)],
                },
            )
        )
        assert rep.case() == 6
        assert "U series" in rep.label

    def test_case7_series(self):
        rep = build_quartic_case(
            spec(
                case=7,
                vertex={"j_0": 1, "k_0": 1},
                points={"simple": [((1, 1), 3)], "double": [((1, 2), 2), ((1, 3), 1)]},
            )
        )
        assert rep.case() == 7
        assert rep.invariants.double_line_mults == [2, 1]

    def test_ledger_violation_rejected(self):
        with pytest.raises(SpecLedgerMismatch):
            build_quartic_case(spec(case=1, m=0, points={"curve": [((1, 1), 5)]}))
        with pytest.raises(SpecLedgerMismatch):
            build_quartic_case(
                spec(case=5, vertex={"k_2": 2, "k_3": 2}, points={})
            )
        with pytest.raises(SpecLedgerMismatch):
            build_quartic_case(spec(case=2, m=1, points={"curve": [((1, 1), 11)]}))

    def test_scaling_family_gives_identical_report(self):
        rep = build_quartic_case(
            spec(case=1, m=2, points={"curve": [((1, 1), 2), ((1, 2), 3), ((2, 1), 5)]})
        )
        f3, f4 = rep.monoid.lower, rep.monoid.top
        ell = parse_hpoly("x1 - 2*x2 + 3*x3", V)
        f4b = f4 * 7 + ell * f3
        rep2 = quartic_report(f3, f4b)
        assert rep2.case() == rep.case()
        assert rep2.label == rep.label
        assert rep2.invariants.values == rep.invariants.values
        mine = sorted(
            (k, e.multiplicity, e.size, e.real_count) for k, e in rep.other_singularities
        )
        theirs = sorted(
            (k, e.multiplicity, e.size, e.real_count) for k, e in rep2.other_singularities
        )
        assert mine == theirs
