"""
Tests for exact rationals, Bernoulli numbers and the pi enclosure
"""
import math
import random
import threading
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rtz.errors import DomainError, PrecisionExhausted, UndecidedComparison
from rtz.services import exactnum
from rtz.services.exactnum import (
    BernoulliCache,
    as_rational,
    bernoulli_bound_check,
    bernoulli_number,
    bernoulli_polynomial,
    bernoulli_table,
    check_bernoulli_bounds,
    convolution_identity_check,
    pi_enclosure,
)
from rtz.services.polycore import DensePoly

PI_50 = F('3.14159265358979323846264338327950288419716939937510')

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=60)


def is_canonical(x) -> bool:
    return (isinstance(x, F) and x.denominator > 0
            and math.gcd(abs(x.numerator), x.denominator) == 1)


class TestBernoulliNumbers:

    def test_first_values(self):
        assert bernoulli_table(4) == [F(1), F(-1, 2), F(1, 6), F(0), F(-1, 30)]

    @pytest.mark.parametrize('m, value', [
        (6, F(1, 42)),
        (8, F(-1, 30)),
        (10, F(5, 66)),
        (12, F(-691, 2730)),
        (14, F(7, 6)),
    ])
    def test_known_even_values(self, m, value):
        assert bernoulli_number(m) == value

    def test_odd_indices_vanish(self):
        assert all(bernoulli_number(m) == 0 for m in range(3, 101, 2))

    def test_even_signs_alternate(self):
        for m in range(1, 101):
            b = bernoulli_number(2 * m)
            assert (b > 0) == (m % 2 == 1)

    def test_negative_index_rejected(self):
        with pytest.raises(DomainError):
            bernoulli_number(-1)

    def test_cache_is_consistent_under_threads(self):
        cache = BernoulliCache()
        barrier = threading.Barrier(8)

        def work(m):
            barrier.wait()
            return cache.get(m)

        with ThreadPoolExecutor(max_workers=8) as pool:
            values = list(pool.map(work, [40, 60, 20, 80, 60, 40, 10, 80]))
        assert values == [bernoulli_number(m) for m in [40, 60, 20, 80, 60, 40, 10, 80]]


class TestBernoulliPolynomials:

    def test_value_at_zero(self):
        for m in range(0, 30):
            assert bernoulli_polynomial(m, 0) == bernoulli_number(m)

    def test_half_argument(self):
        for m in range(0, 61):
            expected = (F(2) ** (1 - m) - 1) * bernoulli_number(m)
            assert bernoulli_polynomial(m, F(1, 2)) == expected

    def test_value_at_one(self):
        assert bernoulli_polynomial(1, 1) == F(1, 2)
        for m in range(2, 30):
            assert bernoulli_polynomial(m, 1) == bernoulli_number(m)

    def test_b2_at_half(self):
        assert bernoulli_polynomial(2, F(1, 2)) == F(-1, 12)


class TestRationals:

    def test_float_refused(self):
        with pytest.raises(DomainError):
            as_rational(0.5)

    def test_string_form(self):
        assert as_rational('-3/6') == F(-1, 2)

    @settings(max_examples=100, deadline=None)
    @given(a=rationals, b=rationals, m=st.integers(min_value=0, max_value=12))
    def test_results_are_canonical(self, a, b, m):
        produced = [a + b, a - b, a * b, bernoulli_polynomial(m, a),
                    as_rational(f"{-3 * a.numerator}/{3 * a.denominator}")]
        if b:
            produced.append(a / b)
        produced.extend((DensePoly((a, b, 1)) * DensePoly((b, a))).coeffs)
        produced.extend(DensePoly((a, 0, b, 1)).derivative().coeffs)
        assert all(is_canonical(x) for x in produced)


class TestPiEnclosure:

    @pytest.mark.parametrize('digits', [1, 10, 20, 45])
    def test_brackets_pi(self, digits):
        lo, hi = pi_enclosure(digits)
        assert lo < PI_50 + F(1, 10**50)
        assert hi > PI_50
        assert hi - lo <= F(1, 10**digits)

    def test_bad_digits(self):
        with pytest.raises(DomainError):
            pi_enclosure(0)


class TestBernoulliBounds:

    def test_first_cases(self):
        for m in range(1, 11):
            result = bernoulli_bound_check(m)
            assert result.lower_ok and result.upper_ok
            assert check_bernoulli_bounds(m)

    @pytest.mark.slow
    def test_up_to_200(self):
        assert all(check_bernoulli_bounds(m) for m in range(1, 201))

    def test_ladder_exhaustion(self, monkeypatch):
        def undecided(m, lo, hi, digits):
            raise UndecidedComparison("forced", digits=digits)

        monkeypatch.setattr(exactnum, '_decide_bounds', undecided)
        with pytest.raises(PrecisionExhausted):
            bernoulli_bound_check(3, start_digits=5, max_doublings=2)

    def test_m_must_be_positive(self):
        with pytest.raises(DomainError):
            bernoulli_bound_check(0)


class TestConvolutionIdentity:

    def test_printed_factor_fails_at_m2(self):
        result = convolution_identity_check(2, 0, 0, diagnostic=True)
        assert result.lhs == F(5, 6)
        assert result.equal
        assert result.printed_rhs == F(-7, 6)
        assert result.printed_equal is False

    def test_without_diagnostic(self):
        result = convolution_identity_check(3, F(1, 3), F(2, 5))
        assert result.printed_rhs is None
        assert result.printed_equal is None

    @settings(max_examples=50, deadline=None)
    @given(
        m=st.integers(min_value=1, max_value=40),
        a=st.fractions(min_value=-3, max_value=3, max_denominator=50),
        b=st.fractions(min_value=-3, max_value=3, max_denominator=50),
    )
    def test_corrected_form_holds(self, m, a, b):
        assert convolution_identity_check(m, a, b).equal

    @pytest.mark.slow
    def test_corrected_form_on_grid(self):
        rng = random.Random(20)
        pairs = [
            (F(rng.randint(-20, 20), rng.randint(1, 20)), F(rng.randint(-20, 20), rng.randint(1, 20)))
            for _ in range(50)
        ]
        for m in range(1, 41):
            for a, b in pairs:
                assert convolution_identity_check(m, a, b).equal, (m, a, b)
