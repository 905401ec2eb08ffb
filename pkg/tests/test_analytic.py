"""
Tests for the numerical check of the zeta(2k+1) formula
"""
from fractions import Fraction as F

import mpmath
import pytest

from rtz.errors import DomainError, NumericConvergenceError
from rtz.services import analytic
from rtz.services.analytic import (
    check_ramanujan_identity,
    eval_G,
    parse_alpha,
    ramanujan_sum_coefficients,
)
from rtz.services.ramfam import build_classic


class TestParseAlpha:

    @pytest.mark.parametrize('text, scale', [
        ('pi', F(1)),
        ('2pi', F(2)),
        ('pi/2', F(1, 2)),
        ('3/4*pi', F(3, 4)),
        ('PI', F(1)),
    ])
    def test_pi_forms(self, text, scale):
        with mpmath.workdps(40):
            value = parse_alpha(text)
            expected = mpmath.pi * scale.numerator / scale.denominator
            assert abs(value - expected) < mpmath.mpf(10) ** -35

    def test_rationals(self):
        assert parse_alpha('1/2') == mpmath.mpf(1) / 2
        assert parse_alpha(F(3, 4)) == mpmath.mpf(3) / 4
        assert parse_alpha(2) == 2

    @pytest.mark.parametrize('text', ['-1', '0', 'e', 'pi pi'])
    def test_rejects(self, text):
        with pytest.raises(DomainError):
            parse_alpha(text)


class TestSeries:

    def test_guards(self):
        with pytest.raises(DomainError):
            eval_G(0, 1, 10)
        with pytest.raises(DomainError):
            eval_G(1, 1, 0)
        with pytest.raises(DomainError):
            eval_G(1, -1, 10)

    def test_tail_bound_covers_truncation(self):
        with mpmath.workdps(40):
            short = eval_G(2, mpmath.mpf(1) / 4, 5)
            long = eval_G(2, mpmath.mpf(1) / 4, 400)
            assert abs(short.value - long.value) <= short.tail_bound

    def test_finite_sum_matches_classic(self):
        for k in range(1, 9):
            R = build_classic(k)
            coeffs = ramanujan_sum_coefficients(k).coeffs
            for m, c in enumerate(coeffs):
                assert c == (-1) ** (k + 1) * (-1) ** m * R.coeff(2 * m)


class TestIdentity:

    @pytest.mark.parametrize('k', [1, 2, 3, 5])
    @pytest.mark.parametrize('alpha', ['pi', '1', 'pi/2', '2'])
    def test_holds(self, k, alpha):
        result = check_ramanujan_identity(k, alpha, 300, 30)
        assert result.within_bound
        assert result.residual < mpmath.mpf(10) ** -25
        assert result.series_start == 1

    @pytest.mark.parametrize('k', [1, 2, 3])
    @pytest.mark.parametrize('alpha', ['pi/2', 'pi', '2pi'])
    def test_fifty_digits(self, k, alpha):
        result = check_ramanujan_identity(k, alpha, 300, 50)
        assert result.residual < mpmath.mpf(10) ** -40

    def test_self_dual_point_k1(self):
        # 2 G_1(pi) = 7 pi^2 / 180
        result = check_ramanujan_identity(1, 'pi', 300, 30)
        with mpmath.workdps(40):
            assert abs(result.lhs - 7 * mpmath.pi ** 2 / 360) < mpmath.mpf(10) ** -28

    def test_printed_sign_misses(self):
        result = check_ramanujan_identity(1, 'pi', 300, 30, diagnostic=True)
        assert result.printed_sign_residual > result.error_bound

    def test_beta(self):
        result = check_ramanujan_identity(1, '2', 200, 20)
        with mpmath.workdps(30):
            assert abs(result.beta - mpmath.pi ** 2 / 2) < mpmath.mpf(10) ** -20

    def test_wrong_finite_sum_raises(self, monkeypatch):
        monkeypatch.setattr(analytic, '_finite_sum', lambda k, a, b: mpmath.mpf(1))
        with pytest.raises(NumericConvergenceError) as info:
            check_ramanujan_identity(1, 'pi', 100, 20)
        assert info.value.partial
        assert info.value.digits == 20

    def test_bad_arguments(self):
        with pytest.raises(DomainError):
            check_ramanujan_identity(0, 'pi', 100, 20)
        with pytest.raises(DomainError):
            check_ramanujan_identity(1, 'pi', 100, 0)

    @pytest.mark.parametrize('k', [1, 2, 3])
    def test_swapping_alpha_and_beta(self, k):
        forward = check_ramanujan_identity(k, 'pi/2', 300, 50)
        backward = check_ramanujan_identity(k, '2pi', 300, 50)
        with mpmath.workdps(60):
            assert abs(forward.beta - backward.alpha) < mpmath.mpf(10) ** -50
            assert forward.residual < mpmath.mpf(10) ** -40
            assert backward.residual < mpmath.mpf(10) ** -40
            gap = abs(forward.residual - backward.residual)
            assert gap <= forward.error_bound + backward.error_bound

    @pytest.mark.parametrize('terms', [2, 4, 8, 16])
    def test_doubling_terms_stays_inside_bound(self, terms):
        coarse = check_ramanujan_identity(2, 'pi/2', terms, 40)
        fine = check_ramanujan_identity(2, 'pi/2', 2 * terms, 40)
        assert fine.residual <= coarse.error_bound
        assert fine.error_bound <= coarse.error_bound
