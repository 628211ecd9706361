import random
from fractions import Fraction as F

import pytest

from monoidsurf.errors import InputError
from monoidsurf.hpoly import ProjPoint, parse_hpoly
from monoidsurf.monoid import build_monoid
from monoidsurf.singclass import (
    extra_singularities,
    hessian_eigenvalue_signs,
    monoid_point_milnor,
    verify_real_a1_signature,
)

V = ("x1", "x2", "x3")


def p(text):
    return parse_hpoly(text, V)


def pt(*c):
    return ProjPoint(c)


class TestExtremeExample:
    def test_single_a11(self):
        M = build_monoid(p("x1*x2^2 + x3^3"), p("x1^4"))
        rep = extra_singularities(M)
        assert len(rep.records) == 1
        r = rep.records[0]
        assert r.complex_type == "A_11"
        assert r.location == pt(0, 0, 1, 0)
        assert r.real_type == "A_11^-"
        assert rep.a0_lines == [] and rep.cone_singular_lines == []
        assert rep.bezout_total() == 12

    def test_degree_five(self):
        lower = parse_hpoly("x1*x2^3 + x3^4", V)
        top = parse_hpoly("x1^5", V)
        M = build_monoid(lower, top)
        rep = extra_singularities(M)
        assert [r.complex_type for r in rep.records] == ["A_19"]

    def test_milnor_number(self):
        M = build_monoid(p("x1*x2^2 + x3^3"), p("x1^4"))
        assert monoid_point_milnor(M) == 10  # (d^2-3d+1)(d-2) at d=4


class TestTransversalFixture:
    def test_twelve_a0_lines(self):
        from monoidsurf.construct import ConstructionSpec, build_quartic_case

        spec = ConstructionSpec(
            kind="QUARTIC_CASE",
            case=5,
            points={
                "line1": [((1, 1), 1), ((1, 2), 1), ((1, 3), 1), ((1, 4), 1)],
                "line2": [((1, 1), 1), ((1, 2), 1), ((1, 3), 1), ((1, 4), 1)],
                "line3": [((1, 1), 1), ((1, 2), 1), ((1, 3), 1), ("auto", 1)],
            },
        )
        M = build_quartic_case(spec).monoid
        rep = extra_singularities(M)
        assert rep.records == []
        assert sum(e.size for e in rep.a0_lines) == 12


class TestBounds:
    def test_bound_and_all_nodes_at_equality(self):
        from monoidsurf.construct import max_real_nodes_monoid

        M = max_real_nodes_monoid(4, F(1, 4))
        rep = extra_singularities(M)
        assert rep.record_count() == rep.bound() == 6
        assert all(r.m == 2 for r in rep.records)
        assert all(r.real_count == r.size for r in rep.records)

    def test_ledger_total(self):
        M = build_monoid(p("x2*x3^2"), p("x1^4 + x2^4 + x3^4 + x1*x2^3"))
        rep = extra_singularities(M)
        assert rep.bezout_total() == 12
        # the double line carries base points but no extra singularities
        assert rep.cone_singular_lines
        assert all(r.m >= 2 for r in rep.records)


class TestHessian:
    def test_all_six_nodes_indefinite(self):
        from monoidsurf.construct import max_real_nodes_monoid

        M = max_real_nodes_monoid(4, F(1, 4))
        rep = extra_singularities(M)
        for r in rep.records:
            assert r.is_rational
            assert verify_real_a1_signature(M, r) is True

    def test_rejects_higher_type(self):
        M = build_monoid(p("x1*x2^2 + x3^3"), p("x1^4"))
        rep = extra_singularities(M)
        with pytest.raises(InputError):
            verify_real_a1_signature(M, rep.records[0])  # an A_11, not an A_1

    def test_signature_counts(self):
        # x1^2 + x2^2 + x3^2 - x0^2 = 0 at a smooth point is not meaningful;
        # instead check the raw eigenvalue-sign helper on a definite form
        W = ("x0", "x1", "x2", "x3")
        Q = parse_hpoly("x0^2 + x1^2 + x2^2 + x3^2", W)
        pos, neg, zero = hessian_eigenvalue_signs(Q, ProjPoint((1, 0, 0, 0)))
        assert (pos, neg, zero) == (3, 0, 0)
        Qm = parse_hpoly("x0*x1 + x2^2 - x3^2", W)
        pos, neg, zero = hessian_eigenvalue_signs(Qm, ProjPoint((1, 0, 0, 0)))
        assert zero == 1 and pos == 1 and neg == 1


class TestRealityFlags:
    def test_conjugate_records(self):
        f3 = p("x1*x2*x3 + x2^3 + x3^3")
        f4 = p("x1") * f3 + p("x1^2 + x2^2 + x3^2") ** 2
        M = build_monoid(f3, f4)
        rep = extra_singularities(M)
        assert rep.records and all(r.real_count == 0 for r in rep.records)
        assert all(r.real_type is None for r in rep.records)
        assert all(r.complex_type == "A_1" for r in rep.records)
        assert rep.bezout_total() == 12
