import random

import numpy as np
import pytest

from flatpoly.errors import BudgetError
from flatpoly.mahler import mahler_jensen, mahler_log, riesz_mahler
from flatpoly.poly import build_polynomial, newman_from_support
from flatpoly.riesz import make_plan


class TestBasics:
    def test_constant(self):
        assert mahler_log([3.0]).value == pytest.approx(3.0, abs=1e-12)
        assert mahler_jensen([3.0]).value == pytest.approx(3.0, abs=1e-15)

    def test_monomial(self):
        assert mahler_log([0.0, 1.0]).value == pytest.approx(1.0, abs=1e-12)

    def test_root_outside(self):
        assert mahler_jensen([-2.0, 1.0]).value == pytest.approx(2.0, abs=1e-12)
        assert mahler_log([-2.0, 1.0]).value == pytest.approx(2.0, abs=1e-9)

    def test_root_inside_empty_product(self):
        assert mahler_jensen([-0.5, 1.0]).value == pytest.approx(1.0, abs=1e-12)
        assert mahler_log([-0.5, 1.0]).value == pytest.approx(1.0, abs=1e-9)

    def test_zero_polynomial_rejected(self):
        with pytest.raises(ValueError):
            mahler_log([0.0, 0.0])
        with pytest.raises(ValueError):
            mahler_jensen([0.0])

    def test_degree_budget(self):
        coeffs = np.zeros(3000)
        coeffs[0] = coeffs[-1] = 1.0
        with pytest.raises(BudgetError):
            mahler_jensen(coeffs)


class TestCrossMethod:
    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_singer_polynomials(self, p, singer_cache):
        P = build_polynomial(singer_cache(p))
        log_rep = mahler_log(P)
        jen_rep = mahler_jensen(P)
        assert abs(log_rep.value - jen_rep.value) < 1e-6
        assert log_rep.method == "log-integral"
        assert jen_rep.method == "jensen"

    def test_chain_m_le_l1_le_one(self, singer_cache):
        for p in (2, 3, 5, 7, 11, 13):
            rep = mahler_log(build_polynomial(singer_cache(p)))
            assert rep.value <= rep.l1 + 1e-8
            assert rep.l1 <= 1.0 + 1e-8

    def test_circle_root_polynomial(self):
        # 1 + z has its only root on the unit circle; M = 1 exactly
        rep = mahler_log([1.0, 1.0])
        assert rep.value == pytest.approx(1.0, abs=1e-6)
        assert mahler_jensen([1.0, 1.0]).value == pytest.approx(1.0, abs=1e-9)


class TestAlgebra:
    def test_multiplicativity_random_newman_pairs(self):
        rng = random.Random(5)
        for _ in range(5):
            sa = sorted(rng.sample(range(65), rng.randrange(2, 8)))
            sb = sorted(rng.sample(range(65), rng.randrange(2, 8)))
            A = newman_from_support(sa)
            B = newman_from_support(sb)
            ca = A.coefficient_array()[: A.degree + 1]
            cb = B.coefficient_array()[: B.degree + 1]
            product = np.convolve(ca, cb)
            lhs = mahler_log(product).value
            rhs = mahler_jensen(A).value * mahler_jensen(B).value
            assert abs(lhs - rhs) < 1e-6

    def test_scale_invariance(self, singer_cache):
        P = build_polynomial(singer_cache(2))
        coeffs = P.coefficient_array()
        base = mahler_log(coeffs, grid_size=2**12).value
        for c in (0.25, 3.0):
            scaled = mahler_log(c * coeffs, grid_size=2**12).value
            assert abs(scaled - c * base) < 1e-8


class TestRieszMahler:
    def test_single_stage_consistency(self, singer_cache):
        plan = make_plan([2, 3])
        factor = mahler_log(build_polynomial(singer_cache(2))).value
        assert riesz_mahler(plan, 1) == pytest.approx(factor**2, abs=1e-12)

    def test_two_stage_product(self, singer_cache):
        plan = make_plan([2, 3])
        f1 = mahler_log(build_polynomial(singer_cache(2))).value
        f2 = mahler_log(build_polynomial(singer_cache(3))).value
        assert riesz_mahler(plan, 2) == pytest.approx((f1 * f2) ** 2, abs=1e-6)

    def test_partial_products_nonincreasing(self):
        plan = make_plan([2, 3, 5])
        values = [riesz_mahler(plan, k) for k in (1, 2, 3)]
        assert values[0] >= values[1] >= values[2] > 0

    def test_substitution_invariance(self, singer_cache):
        # M(P(z^N)) = M(P): z -> z^N preserves the circle average of log|P|
        P = build_polynomial(singer_cache(2))
        N = 5
        plain = P.coefficient_array()[: P.degree + 1]
        substituted = np.zeros(N * P.degree + 1)
        for s in P.support:
            substituted[N * s] = P.scale
        a = mahler_log(plain, grid_size=2**14).value
        b = mahler_log(substituted, grid_size=2**14).value
        assert abs(a - b) < 1e-9

    def test_stage_bounds(self):
        plan = make_plan([2, 3])
        with pytest.raises(ValueError):
            riesz_mahler(plan, 3)
        with pytest.raises(ValueError):
            riesz_mahler(plan, 0)
