"""
Tests for the numeric root finder
"""
from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rtz.errors import DomainError, NumericConvergenceError
from rtz.services import rootfinder
from rtz.services.polycore import DensePoly, classify_unit_circle, halve_even_poly
from rtz.services.ramfam import build_H
from rtz.services.rootfinder import format_root, numeric_roots
from tests.conftest import poly


def test_unit_roots():
    roots = numeric_roots(poly(1, 0, 1), 30)
    assert len(roots) == 2
    with mpmath.workdps(60):
        for root in roots:
            assert root.radius < mpmath.mpf(10) ** -30
            assert abs(abs(root.value) - 1) < mpmath.mpf(10) ** -30
            assert not root.is_real()


def test_roots_at_origin_are_exact():
    roots = numeric_roots(poly(0, 0, -2, 1), 25)
    zeros = [r for r in roots if r.value == 0]
    assert len(zeros) == 2
    assert all(r.radius == 0 for r in zeros)
    other = [r for r in roots if r.value != 0][0]
    with mpmath.workdps(50):
        assert abs(other.value - 2) < mpmath.mpf(10) ** -25
    assert other.is_real()


def test_quarter_circle_roots():
    roots = numeric_roots(poly(1, 0, 4), 30)
    with mpmath.workdps(60):
        for root in roots:
            assert abs(root.modulus - mpmath.mpf(1) / 2) < mpmath.mpf(10) ** -30


def test_order_is_deterministic():
    p = DensePoly.from_roots([3, -1, F(1, 2)]) * poly(1, 1, 1)
    first = [format_root(r) for r in numeric_roots(p, 20)]
    second = [format_root(r) for r in numeric_roots(p, 20)]
    assert first == second


def test_constant_rejected():
    with pytest.raises(DomainError):
        numeric_roots(DensePoly.constant(3), 20)


def test_ladder_exhaustion_reports_partial(monkeypatch):
    def never(coeffs, dps, target):
        return [mpmath.mpc(1)], [mpmath.mpf(1)], False

    monkeypatch.setattr(rootfinder, '_find_at', never)
    with pytest.raises(NumericConvergenceError) as info:
        numeric_roots(poly(-1, 1), 20, max_doublings=1)
    assert info.value.partial
    assert info.value.digits == 60


def test_format_root_keys():
    root = numeric_roots(poly(-1, 1), 10)[0]
    assert set(format_root(root)) == {'re', 'im', 'radius'}


def test_step_off_critical_point():
    coeffs = [mpmath.mpf(1), mpmath.mpf(0), mpmath.mpf(1)]
    with mpmath.workdps(30):
        first = rootfinder._step_off_critical(coeffs, mpmath.mpc(0))
        second = rootfinder._step_off_critical(coeffs, mpmath.mpc(0))
        w, p, dp = first
        assert w != 0 and dp != 0
        assert abs(w) <= mpmath.mpf(10) ** -14
        assert first == second


def test_start_on_critical_point_still_converges(monkeypatch):
    # z = 0 is the critical point of z^2 + 1
    monkeypatch.setattr(rootfinder, '_initial_points',
                        lambda coeffs, n: [mpmath.mpc(0), mpmath.mpc(0, 2)])
    roots = numeric_roots(poly(1, 0, 1), 20)
    with mpmath.workdps(40):
        assert sorted(mpmath.nint(r.value.imag) for r in roots) == [-1, 1]
        assert all(abs(r.modulus - 1) < mpmath.mpf(10) ** -20 for r in roots)


@pytest.mark.parametrize('k, n', [(2, 2), (3, 2), (4, 3), (5, 2), (6, 4)])
def test_certified_circle_roots_agree_numerically(k, n):
    H, _ = build_H(k, n)
    assert classify_unit_circle(halve_even_poly(H)).all_on_circle
    slack = mpmath.mpf(10) ** -20
    with mpmath.workdps(60):
        for root in numeric_roots(H, 30):
            assert abs(root.modulus - 1) < root.radius + slack, (k, n, format_root(root))


@settings(max_examples=25, deadline=None)
@given(cosines=st.lists(
    st.fractions(min_value=-1, max_value=1, max_denominator=9).filter(lambda c: abs(c) != 1),
    min_size=1, max_size=4, unique=True))
def test_unit_circle_products_agree_numerically(cosines):
    g = DensePoly.constant(1)
    for c in cosines:
        g = g * poly(1, -2 * c, 1)
    assert classify_unit_circle(g).all_on_circle
    slack = mpmath.mpf(10) ** -20
    with mpmath.workdps(60):
        for root in numeric_roots(g, 30):
            assert abs(root.modulus - 1) < root.radius + slack
