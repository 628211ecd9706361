import random
from fractions import Fraction as F

import pytest

from monoidsurf.errors import InputError, NotSquarefree
from monoidsurf.linalg import det
from monoidsurf.ratpoly import (
    BinaryForm,
    UPoly,
    count_real_roots,
    isolate_real_roots,
    rational_roots,
    refine_isolating_interval,
    resultant,
    simplest_rational_in,
    squarefree_decomposition,
    squarefree_part,
    sylvester_matrix,
    upoly_gcd,
)


def u(*coeffs):
    return UPoly(coeffs)


def rand_poly(rng, deg, bound=9):
    coeffs = [rng.randint(-bound, bound) for _ in range(deg)]
    coeffs.append(rng.choice([1, -1, 2, 3, -2]))
    return UPoly(coeffs)


class TestGcd:
    def test_shared_root(self):
        assert upoly_gcd(u(-1, 0, 1), u(-1, 1)) == u(-1, 1)

    def test_coprime_by_euclid(self):
        # s^3+1 = s*(s^2+1) + (1-s); s^2+1 = (-s-1)(1-s) + 2 -> gcd 1
        assert upoly_gcd(u(1, 0, 0, 1), u(1, 0, 1)) == u(1)

    def test_gcd_with_zero_is_monic(self):
        assert upoly_gcd(u(2, 4), UPoly.zero()) == u(F(1, 2), 1)

    def test_both_zero_rejected(self):
        with pytest.raises(InputError):
            upoly_gcd(UPoly.zero(), UPoly.zero())

    def test_planted_common_factor(self):
        rng = random.Random(7)
        for _ in range(60):
            g = rand_poly(rng, rng.randint(1, 4), 4)
            p = rand_poly(rng, rng.randint(0, 4), 4)
            q = rand_poly(rng, rng.randint(0, 4), 4)
            h = upoly_gcd(p * g, q * g)
            assert (h % g.monic()).is_zero or upoly_gcd(p, q).degree > 0


class TestResultant:
    def test_degree_one_orientation(self):
        a, b = F(3), F(7)
        assert resultant(u(-a, 1), u(-b, 1)) == b - a

    def test_common_roots_vanish(self):
        assert resultant(u(-2, 0, 1), u(-2, 0, 1)) == 0

    def test_sylvester_value(self):
        # independent oracle: determinant of the Sylvester matrix
        assert resultant(u(1, 0, 1), u(-1, 0, 0, 1)) == 2

    def test_against_sylvester_determinant(self):
        rng = random.Random(1)
        for _ in range(200):
            p = UPoly(
                [F(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(rng.randint(1, 5))]
                + [F(rng.choice([1, 2, -3]))]
            )
            q = UPoly(
                [F(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(rng.randint(1, 5))]
                + [F(rng.choice([1, -2, 5]))]
            )
            swap_sign = F(-1) ** (p.degree * q.degree)
            assert resultant(p, q) == swap_sign * det(sylvester_matrix(p, q))

    def test_zero_iff_common_factor(self):
        rng = random.Random(9)
        for _ in range(40):
            g = rand_poly(rng, rng.randint(1, 3), 3)
            p = rand_poly(rng, rng.randint(1, 3), 3)
            q = rand_poly(rng, rng.randint(1, 3), 3)
            assert resultant(p * g, q * g) == 0
            r = resultant(p, q)
            assert (r == 0) == (upoly_gcd(p, q).degree >= 1)


class TestSquarefree:
    def test_constructed_input(self):
        p = u(2, 1) * u(-1, 1) * u(-1, 1)
        assert squarefree_decomposition(p) == [(u(2, 1), 1), (u(-1, 1), 2)]

    def test_pure_power(self):
        assert squarefree_decomposition(UPoly.monomial(12)) == [(u(0, 1), 12)]

    def test_expanded_product(self):
        p = (u(1, 0, 1) ** 3) * u(-3, 1)
        assert squarefree_decomposition(p) == [(u(-3, 1), 1), (u(1, 0, 1), 3)]

    def test_reconstruction_exact(self):
        rng = random.Random(3)
        for _ in range(50):
            p = rand_poly(rng, rng.randint(1, 4), 3) * rand_poly(rng, rng.randint(0, 3), 3)
            if p.degree < 1:
                continue
            dec = squarefree_decomposition(p)
            prod = UPoly.constant(1)
            for fac, mult in dec:
                prod = prod * fac**mult
            assert prod.monic() == p.monic()
            # factors pairwise coprime and squarefree
            for i, (a, _) in enumerate(dec):
                assert upoly_gcd(a, a.derivative()).degree == 0
                for b, _ in dec[i + 1 :]:
                    assert upoly_gcd(a, b).degree == 0

    def test_zero_rejected(self):
        with pytest.raises(InputError):
            squarefree_decomposition(UPoly.zero())


class TestSturm:
    def test_no_real_roots(self):
        assert count_real_roots(u(1, 0, 1)) == 0

    def test_sqrt2_positive_only(self):
        assert count_real_roots(u(-2, 0, 1), 0, None) == 1

    def test_three_roots(self):
        assert count_real_roots(u(0, -1, 0, 1)) == 3

    def test_open_interval_excludes_endpoints(self):
        assert count_real_roots(u(0, -1, 0, 1), -1, 1) == 1  # only 0

    def test_rejects_repeated_roots(self):
        with pytest.raises(NotSquarefree):
            count_real_roots(u(1, -2, 1))  # (s-1)^2

    def test_isolation_examples(self):
        ivs = isolate_real_roots(u(F(-1, 2), 1))
        assert len(ivs) == 1 and ivs[0][0] < F(1, 2) < ivs[0][1]
        assert isolate_real_roots(u(1, 0, 1)) == []
        ivs = isolate_real_roots(u(-2, 0, 1))
        assert len(ivs) == 2
        neg = refine_isolating_interval(u(-2, 0, 1), ivs[0], F(1, 4))
        pos = refine_isolating_interval(u(-2, 0, 1), ivs[1], F(1, 4))
        assert -2 < neg[0] < neg[1] < -1
        assert 1 < pos[0] < pos[1] < 2

    def test_count_matches_isolation_on_random(self):
        rng = random.Random(11)
        done = 0
        for _ in range(200):
            p = squarefree_part(rand_poly(rng, rng.randint(1, 12)))
            if p.degree < 1:
                continue
            assert count_real_roots(p) == len(isolate_real_roots(p))
            done += 1
        assert done >= 150

    def test_refinement_width(self):
        p = u(-2, 0, 1)
        iv = isolate_real_roots(p)[1]
        lo, hi = refine_isolating_interval(p, iv, F(1, 1000))
        assert hi - lo < F(1, 1000)
        assert p(lo) * p(hi) < 0


class TestRationalRoots:
    def test_simplest_rational(self):
        assert simplest_rational_in(F(1, 3), F(1, 2)) == F(2, 5)
        assert simplest_rational_in(F(-1), F(1)) == 0
        assert simplest_rational_in(F(5, 2), F(7, 2)) == 3

    def test_exact_recovery(self):
        p = UPoly.from_roots([1, 2, 3])
        assert rational_roots(p) == [F(1), F(2), F(3)]
        q = u(-2, 0, 1) * u(F(1, 3), 1)
        assert rational_roots(q) == [F(-1, 3)]

    def test_large_denominators(self):
        p = UPoly.from_roots([F(22, 7), F(-13, 11)]) * u(3, 0, 1)
        assert rational_roots(p) == [F(-13, 11), F(22, 7)]


class TestBinaryForm:
    def test_factor_conventions(self):
        bf = BinaryForm.from_linear_factors([((1, 0), 2), ((0, 1), 3), ((2, 1), 1)])
        assert bf.formal_degree == 6
        assert bf.s_multiplicity() == 3  # root (0:1)
        assert bf.t_multiplicity() == 2  # root (1:0)
        assert bf.multiplicity_at(2, 1) == 1
        assert bf.multiplicity_at(1, 1) == 0

    def test_zero_form_keeps_degree(self):
        z = BinaryForm((), 5)
        assert z.is_zero and z.formal_degree == 5

    def test_evaluate(self):
        bf = BinaryForm.from_linear_factors([((1, 2), 1)])  # 2s - t
        assert bf.evaluate(1, 2) == 0
        assert bf.evaluate(1, 0) == 2
