"""
Unit-Circle Criteria

Exact predicates for the coefficient conditions that place every zero of a
reciprocal polynomial on |z| = 1:

- Lakatos: |a_m| >= sum_i |a_i - a_m| (a_m the leading coefficient)
- Schinzel with d = 1: |A_{k-1}| >= min_c sum_j |c A_j - A_{k-1}|

plus the closed form for the half-argument Bernoulli sum and a transcript
of the coefficient-estimate chain. No tolerances: every comparison is
between Fractions.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

from rtz.errors import DomainError
from rtz.logger import get_logger
from rtz.services.exactnum import HALF, as_rational, bernoulli_number, bernoulli_polynomial
from rtz.services.polycore import DensePoly, is_self_inversive
from rtz.services.ramfam import CoeffTable, c_constant, coefficient_table, g_n_bound

logger = get_logger(__name__)


@dataclass(frozen=True)
class CriterionReport:
    lakatos_holds: bool
    lakatos_strict: bool
    schinzel_min: Fraction
    schinzel_argmin_c: Fraction
    schinzel_holds: bool
    schinzel_strict: bool
    c_constant_value: Optional[Fraction] = None
    chain_checks: Dict[str, object] = field(default_factory=dict)


# ============================================================================
# LAKATOS
# ============================================================================

def lakatos_check(p: DensePoly) -> Tuple[bool, bool]:
    """(holds, strict) for |a_m| >= sum_{i=0}^{m} |a_i - a_m|"""
    if p.is_zero():
        raise DomainError("Lakatos check on the zero polynomial")
    if not is_self_inversive(p):
        raise DomainError(f"Lakatos check needs a reciprocal polynomial, got {p}")
    top = p.lead
    spread = sum((abs(a - top) for a in p.coeffs), Fraction(0))
    return abs(top) >= spread, abs(top) > spread


def table_polynomial(table: CoeffTable) -> DensePoly:
    """G(w) = sum_j A_j w^(k-1-j), so that H(z) = G(z^2)"""
    return DensePoly(reversed(table.A))


# ============================================================================
# SCHINZEL (d = 1)
# ============================================================================

def _values(A) -> Tuple[Fraction, ...]:
    values = A.A if isinstance(A, CoeffTable) else tuple(as_rational(a) for a in A)
    if not values:
        raise DomainError("empty coefficient table")
    if any(a == 0 for a in values):
        raise DomainError(f"zero entry in coefficient table {values}")
    return values


def schinzel_sum(A, c) -> Fraction:
    """F(c) = sum_j |c A_j - A_{k-1}|"""
    values = _values(A)
    c = as_rational(c)
    last = values[-1]
    return sum((abs(c * a - last) for a in values), Fraction(0))


def schinzel_min_over_c(A) -> Tuple[Fraction, Fraction]:
    """
    Exact minimum of F over real c.

    F(c) = sum_j |A_j| * |c - A_{k-1}/A_j| is convex and piecewise linear,
    so it is minimized at a weighted median of the breakpoints A_{k-1}/A_j
    with weights |A_j|. Ties resolve to the smallest minimizer.
    """
    values = _values(A)
    last = values[-1]
    points = sorted((last / a, abs(a)) for a in values)
    total = sum(w for _, w in points)
    running = Fraction(0)
    for c, w in points:
        running += w
        if 2 * running >= total:
            return schinzel_sum(values, c), c
    raise AssertionError("weighted median not reached")  # unreachable


def schinzel_criterion_check(table: CoeffTable, n: Optional[int] = None,
                             chain_c=None) -> CriterionReport:
    """
    Both criteria for H given its coefficient table. Lakatos runs on G
    (H with w = z^2) since H itself has zero odd coefficients. With n the
    constant c_{n,k} is attached; with chain_c the inequality chain too.
    """
    low, argmin = schinzel_min_over_c(table)
    bound = abs(table.last)
    holds, strict = lakatos_check(table_polynomial(table))
    chain = {}
    c_value = None
    if n is not None:
        c_value = c_constant(table.k, n)
        if chain_c is not None:
            chain = inequality_chain_check(table.k, n, chain_c)
    return CriterionReport(
        lakatos_holds=holds,
        lakatos_strict=strict,
        schinzel_min=low,
        schinzel_argmin_c=argmin,
        schinzel_holds=low <= bound,
        schinzel_strict=low < bound,
        c_constant_value=c_value,
        chain_checks=chain,
    )


# ============================================================================
# HALF-ARGUMENT BERNOULLI SUM
# ============================================================================

@dataclass(frozen=True)
class HalfSumIdentity:
    k: int
    lhs: Fraction
    rhs: Fraction
    signed_sum: Fraction
    signed_rhs: Fraction
    bracketed_lhs: Fraction
    bracketed_rhs: Fraction

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs

    @property
    def signed_equal(self) -> bool:
        return self.signed_sum == self.signed_rhs

    @property
    def bracketed_equal(self) -> bool:
        return self.bracketed_lhs == self.bracketed_rhs


def _half_difference(m: int) -> Fraction:
    return bernoulli_polynomial(m, HALF) - bernoulli_number(m)


def identity_5_15_check(k: int) -> HalfSumIdentity:
    """
    sum_{j=0}^{k-1} C(2k+2, 2j+2) d_{2j+2} d_{2k-2j} with d_m = B_m(1/2) - B_m(0)
    against 4(2k+1)(1 - 2^(-2k-2)) B_{2k+2}, in absolute value and signed.
    """
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    signed = sum(
        (math.comb(2 * k + 2, 2 * j + 2) * _half_difference(2 * j + 2) * _half_difference(2 * k - 2 * j)
         for j in range(k)),
        Fraction(0),
    )
    core = 4 * (2 * k + 1) * (1 - Fraction(1, 2**(2 * k + 2))) * bernoulli_number(2 * k + 2)
    lhs = sum(
        (abs(math.comb(2 * k + 2, 2 * j + 2) * _half_difference(2 * j + 2) * _half_difference(2 * k - 2 * j))
         for j in range(k)),
        Fraction(0),
    )
    return HalfSumIdentity(
        k=k,
        lhs=lhs,
        rhs=abs((-1) ** k * core),
        signed_sum=signed,
        signed_rhs=-core,
        bracketed_lhs=(-1) ** (k - 1) * signed,
        bracketed_rhs=(-1) ** k * core,
    )


# ============================================================================
# COEFFICIENT-ESTIMATE CHAIN (diagnostic transcript)
# ============================================================================

def admissible_c_bound(k: int, n: int, table: Optional[CoeffTable] = None) -> Fraction:
    """Largest c for which (1+k)|A_{k-1}| exceeds the upper estimate of sum c|A_j|"""
    table = table or coefficient_table(k, n)
    num = 3 * (1 + k) * (2**(2 * k) - 1) * math.factorial(2 * k + 2) * abs(table.last)
    den = ((2 * k + 1) * (n**(k + 1) - 1) ** 2 * (2**(2 * k + 2) - 1)
           * abs(bernoulli_number(2 * k + 2)))
    return num / den


def inequality_chain_check(k: int, n: int, c) -> Dict[str, object]:
    """
    Each link of the estimate, evaluated exactly at the given c:

    a  sum c|A_j| <= 2^(2k+2) c/(2k+2)! * g-bound * (2k+1)(1 - 2^(-2k-2))|B_{2k+2}|
    b  (1+k)|A_{k-1}| > sum c|A_j|
    c  c < c_{n,k}
    d  exact admissible bound for c, and whether it exceeds c_{n,k}
    e  c|A_j| - |A_{k-1}| > 0 for every j
    f  sum_j |c A_j - A_{k-1}| <= |A_{k-1}|
    """
    c = as_rational(c)
    if c <= 0:
        raise DomainError(f"c must be positive, got {c}")
    table = coefficient_table(k, n)
    weighted = c * sum((abs(a) for a in table.A), Fraction(0))
    upper = (Fraction(2**(2 * k + 2), math.factorial(2 * k + 2)) * c * g_n_bound(k, n)
             * (2 * k + 1) * (1 - Fraction(1, 2**(2 * k + 2))) * abs(bernoulli_number(2 * k + 2)))
    constant = c_constant(k, n)
    exact_bound = admissible_c_bound(k, n, table)
    last = abs(table.last)
    at_c = schinzel_sum(table, c)
    checks = {
        'c': c,
        'sum_abs_A': weighted,
        'upper_estimate': upper,
        'a_sum_below_upper': weighted <= upper,
        'a_strict': weighted < upper,
        'b_last_dominates': (1 + k) * last > weighted,
        'c_below_constant': c < constant,
        'c_constant': constant,
        'd_admissible_bound': exact_bound,
        'd_bound_exceeds_constant': exact_bound > constant,
        'e_sign_step': all(c * abs(a) - last > 0 for a in table.A),
        'f_schinzel_sum': at_c,
        'f_holds': at_c <= last,
    }
    if not checks['e_sign_step']:
        logger.debug("sign step fails at k=%d n=%d c=%s", k, n, c)
    return checks
