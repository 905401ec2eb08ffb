"""
Numerical Check of Ramanujan's Formula for zeta(2k+1)

G_k(x) = x^-k (zeta(2k+1)/2 + sum_{n>=1} n^(-2k-1) / (e^(2xn) - 1))

For alpha > 0 and beta = pi^2 / alpha:

    G_k(alpha) = (-1)^k G_k(beta)
                 - 2^(2k) sum_{j=0}^{k+1} (-1)^j b_j b_{k+1-j} alpha^(k+1-j) beta^j

with b_j = B_2j / (2j)!. The series starts at n = 1 (the n = 0 term is
singular). Literature often prints the finite-sum sign as (-1)^(j-1); that
form is evaluated alongside as a diagnostic and does not hold.
"""

import math
import re
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from rtz.errors import DomainError, NumericConvergenceError
from rtz.logger import get_logger
from rtz.services.exactnum import as_rational, bernoulli_number
from rtz.services.polycore import DensePoly

logger = get_logger(__name__)

GUARD_DIGITS = 10

_PI_FORM = re.compile(r'^\s*(?:(\d+)(?:/(\d+))?\s*\*?\s*)?pi\s*(?:/\s*(\d+))?\s*$', re.IGNORECASE)


@dataclass(frozen=True)
class SeriesValue:
    value: mpmath.mpf
    tail_bound: mpmath.mpf
    terms: int


@dataclass(frozen=True)
class IdentityResidual:
    k: int
    alpha: mpmath.mpf
    beta: mpmath.mpf
    terms_used: int
    lhs: mpmath.mpf
    rhs: mpmath.mpf
    residual: mpmath.mpf
    error_bound: mpmath.mpf
    printed_sign_residual: mpmath.mpf
    precision_digits: int
    series_start: int = 1

    @property
    def within_bound(self) -> bool:
        return self.residual <= self.error_bound


def parse_alpha(text) -> mpmath.mpf:
    """'pi', '2pi', 'pi/2', '3/4*pi' or a plain rational, at the current precision"""
    if isinstance(text, Fraction):
        value = mpmath.mpf(text.numerator) / text.denominator
    elif not isinstance(text, str):
        value = mpmath.mpf(text)
    else:
        match = _PI_FORM.match(text)
        if match:
            num, den, div = match.groups()
            scale = Fraction(int(num or 1), int(den or 1)) / int(div or 1)
            value = mpmath.pi * scale.numerator / scale.denominator
        else:
            try:
                r = as_rational(text.strip())
            except (ValueError, ZeroDivisionError):
                raise DomainError(f"cannot read alpha from {text!r}")
            value = mpmath.mpf(r.numerator) / r.denominator
    if value <= 0:
        raise DomainError(f"alpha must be positive, got {text!r}")
    return value


def _tail_bound(k: int, x, terms: int):
    """
    Bound on sum_{n>terms} n^(-2k-1) / (e^(2xn) - 1): the first omitted
    term times a geometric factor.
    """
    e = -2 * k - 1
    first_n = terms + 1
    y = 2 * x * first_n
    first = mpmath.mpf(first_n) ** e * mpmath.exp(-y) / (1 - mpmath.exp(-y))
    growth = max(mpmath.mpf(1), (mpmath.mpf(first_n + 1) / first_n) ** e)
    ratio = mpmath.exp(-2 * x) * growth
    if ratio >= 1:
        raise DomainError(f"{terms} terms too few for a tail bound at x={x}")
    return first / (1 - ratio)


def eval_G(k: int, x, terms: int) -> SeriesValue:
    """G_k(x) truncated after `terms` series terms, with a bound on what was dropped"""
    if k == 0:
        raise DomainError("k must be nonzero")
    if terms < 1:
        raise DomainError(f"terms must be >= 1, got {terms}")
    x = mpmath.mpf(x)
    if x <= 0:
        raise DomainError(f"x must be positive, got {x}")
    series = mpmath.fsum(
        mpmath.mpf(n) ** (-2 * k - 1) / mpmath.expm1(2 * x * n)
        for n in range(1, terms + 1)
    )
    scale = x ** (-k)
    value = scale * (mpmath.zeta(2 * k + 1) / 2 + series)
    return SeriesValue(value=value, tail_bound=abs(scale) * _tail_bound(k, x, terms), terms=terms)


def ramanujan_sum_coefficients(k: int) -> DensePoly:
    """
    sum_j (-1)^j b_j b_{k+1-j} alpha^(k+1-j) beta^j divided by beta^(k+1), as
    an exact polynomial in u = alpha / beta. With z^2 = -u it equals
    (-1)^(k+1) R_{2k+1}(z).
    """
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    b = [bernoulli_number(2 * j) / math.factorial(2 * j) for j in range(k + 2)]
    return DensePoly((-1) ** (k + 1 - m) * b[k + 1 - m] * b[m] for m in range(k + 2))


def _finite_sum(k: int, alpha, beta):
    u = alpha / beta
    total = mpmath.mpf(0)
    for m, c in enumerate(ramanujan_sum_coefficients(k).coeffs):
        if c:
            total += mpmath.mpf(c.numerator) / c.denominator * u**m
    return total * beta ** (k + 1)


def check_ramanujan_identity(k: int, alpha, terms: int, precision_digits: int,
                              diagnostic: bool = False) -> IdentityResidual:
    """
    Both sides at alpha and beta = pi^2/alpha with precision_digits + guard
    digits. Raises NumericConvergenceError when the residual is above the
    truncation plus rounding bound.
    """
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    if precision_digits < 1:
        raise DomainError(f"precision_digits must be positive, got {precision_digits}")
    with mpmath.mp.workdps(precision_digits + GUARD_DIGITS):
        a = parse_alpha(alpha)
        b = mpmath.pi ** 2 / a
        left = eval_G(k, a, terms)
        right_g = eval_G(k, b, terms)
        finite = _finite_sum(k, a, b)
        weight = mpmath.mpf(2) ** (2 * k)
        lhs = left.value
        rhs = (-1) ** k * right_g.value - weight * finite
        printed = (-1) ** k * right_g.value + weight * finite
        residual = abs(lhs - rhs)
        rounding = mpmath.mpf(10) ** (-precision_digits) * (1 + abs(lhs) + abs(rhs))
        bound = left.tail_bound + right_g.tail_bound + rounding
        result = IdentityResidual(
            k=k, alpha=+a, beta=+b, terms_used=terms,
            lhs=+lhs, rhs=+rhs, residual=+residual, error_bound=+bound,
            printed_sign_residual=abs(lhs - printed),
            precision_digits=precision_digits,
        )
    if not result.within_bound:
        raise NumericConvergenceError(
            f"identity residual {mpmath.nstr(result.residual, 5)} above bound "
            f"{mpmath.nstr(result.error_bound, 5)} (k={k})",
            partial=[result], digits=precision_digits)
    if diagnostic:
        logger.warning("series summed from n = 1; the n = 0 term of the printed sum is singular")
    if diagnostic and result.printed_sign_residual > result.error_bound:
        logger.warning("printed (-1)^(j-1) sign misses by %s at k=%d alpha=%s",
                       mpmath.nstr(result.printed_sign_residual, 5), k, mpmath.nstr(result.alpha, 10))
    return result
