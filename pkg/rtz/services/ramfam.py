"""
Polynomial Families and Named Quantities

Constructors for the classic Ramanujan polynomial, the Ramanujan-type family
in (k, n), its Lalin-Rogers special case, the reduced cofactor H, the
one-variable generalization R^(l) and the scalar helpers f_n, g_n, D(j) and
c_{n,k} used by the coefficient estimates.

Indexing: H(z) = sum_{j=0}^{k-1} A_j z^(2k-2-2j), so A_0 is the leading
coefficient and A_{k-1} the constant term.
"""

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Tuple

import mpmath

from rtz.config import Config
from rtz.errors import DomainError
from rtz.services.exactnum import as_rational, bernoulli_number
from rtz.services.polycore import DensePoly, reciprocity_kind


class Variant(str, Enum):
    CLASSIC = 'Classic'
    LALIN_ROGERS = 'LalinRogers'
    RAMANUJAN_TYPE = 'RamanujanType'
    GENERALIZED = 'Generalized'


# ============================================================================
# FAMILY SPECIFICATION
# ============================================================================

@dataclass(frozen=True)
class FamilySpec:
    variant: Variant
    k: int
    n: Optional[int] = None
    ell: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, 'variant', Variant(self.variant))
        self.validate()

    def validate(self):
        if not isinstance(self.k, int) or self.k < 1:
            raise DomainError(f"k must be a positive integer, got {self.k!r}")
        needs_n = self.variant is Variant.RAMANUJAN_TYPE
        needs_ell = self.variant is Variant.GENERALIZED
        if needs_n != (self.n is not None):
            raise DomainError(f"{self.variant.value} {'needs' if needs_n else 'takes no'} n")
        if needs_ell != (self.ell is not None):
            raise DomainError(f"{self.variant.value} {'needs' if needs_ell else 'takes no'} ell")
        if needs_n and self.n < 2:
            raise DomainError(f"n must be >= 2, got {self.n}")
        if needs_ell and self.ell < 1:
            raise DomainError(f"ell must be >= 1, got {self.ell}")

    @property
    def label(self) -> str:
        parts = [f"k={self.k}"]
        if self.n is not None:
            parts.append(f"n={self.n}")
        if self.ell is not None:
            parts.append(f"ell={self.ell}")
        return f"{self.variant.value}({', '.join(parts)})"

    def sort_key(self) -> Tuple[int, int, int]:
        return (self.k, self.n or 0, self.ell or 0)

    def to_dict(self) -> dict:
        return {'variant': self.variant.value, 'k': self.k, 'n': self.n, 'ell': self.ell}


@dataclass(frozen=True)
class CoeffTable:
    """A_0 .. A_{k-1} of H, plus the sign every entry should carry"""

    A: Tuple[Fraction, ...]
    sign: int

    @property
    def k(self) -> int:
        return len(self.A)

    @property
    def last(self) -> Fraction:
        return self.A[-1]

    def is_reciprocal(self) -> bool:
        return self.A == tuple(reversed(self.A))

    def sign_pattern_ok(self) -> bool:
        return all((a > 0) - (a < 0) == self.sign for a in self.A)


# ============================================================================
# HELPERS
# ============================================================================

def _check_k(k):
    if not isinstance(k, int) or k < 1:
        raise DomainError(f"k must be a positive integer, got {k!r}")


def _check_n(n):
    if not isinstance(n, int) or n < 2:
        raise DomainError(f"n must be an integer >= 2, got {n!r}")


def _b(j: int) -> Fraction:
    """B_{2j} / (2j)!"""
    return bernoulli_number(2 * j) / math.factorial(2 * j)


def _weight(n: int, a: int, b: int) -> int:
    return (n**a - 1) * (n**b - 1)


# ============================================================================
# CONSTRUCTORS
# ============================================================================

def build_classic(k: int) -> DensePoly:
    """R_{2k+1}(z) = sum_{j=0}^{k+1} b_j b_{k+1-j} z^(2k+2-2j), b_j = B_2j/(2j)!"""
    _check_k(k)
    terms = {2 * k + 2 - 2 * j: _b(j) * _b(k + 1 - j) for j in range(k + 2)}
    return DensePoly.from_dict(terms)


def build_ramanujan_type(k: int, n: int) -> DensePoly:
    _check_k(k)
    _check_n(n)
    terms = {}
    for j in range(1, k + 1):
        e = 2 * k + 2 - 2 * j
        terms[e] = _weight(n, 2 * j, e) * _b(j) * _b(k + 1 - j) * n**e
    return DensePoly.from_dict(terms)


def build_lalin_rogers(k: int) -> DensePoly:
    """Same weights as the n = 2 Ramanujan-type polynomial, plain powers of z"""
    _check_k(k)
    terms = {}
    for j in range(1, k + 1):
        e = 2 * k + 2 - 2 * j
        terms[e] = _weight(2, 2 * j, e) * _b(j) * _b(k + 1 - j)
    return DensePoly.from_dict(terms)


def coefficient_table(k: int, n: int) -> CoeffTable:
    _check_k(k)
    _check_n(n)
    values = tuple(
        _weight(n, 2 * j + 2, 2 * k - 2 * j) * _b(j + 1) * _b(k - j)
        for j in range(k)
    )
    return CoeffTable(A=values, sign=(-1) ** (k + 1))


def build_H(k: int, n: int) -> Tuple[DensePoly, CoeffTable]:
    """H with R_{2k+1,n}(z/n) = z^2 H(z)"""
    table = coefficient_table(k, n)
    H = DensePoly.from_dict({2 * k - 2 - 2 * j: a for j, a in enumerate(table.A)})
    return H, table


def build_generalized(k: int, ell: int) -> DensePoly:
    """R^(l)(Z) = sum_j (-1)^((l+1)j) (b_j b_{k+1-j})^l Z^j"""
    _check_k(k)
    if not isinstance(ell, int) or ell < 1:
        raise DomainError(f"ell must be a positive integer, got {ell!r}")
    terms = {
        j: (-1) ** ((ell + 1) * j) * (_b(j) * _b(k + 1 - j)) ** ell
        for j in range(k + 2)
    }
    return DensePoly.from_dict(terms)


def generalized_reciprocity(k: int, ell: int) -> str:
    return reciprocity_kind(build_generalized(k, ell))


# ============================================================================
# COEFFICIENT ESTIMATES
# ============================================================================

def f_n_eval(k: int, n: int, x):
    """
    f_n(x) = (n^(x+2) - 1)(n^(2k-x) - 1) on 0 <= x <= 2k-2.

    Exact for integer x. Other rationals are evaluated in mpmath with guard
    digits and return an mpf; those values never reach a verdict.
    """
    _check_k(k)
    _check_n(n)
    x = as_rational(x)
    if x < 0 or x > 2 * k - 2:
        raise DomainError(f"x={x} outside [0, {2 * k - 2}]")
    if x.denominator == 1:
        x = int(x)
        return Fraction(_weight(n, x + 2, 2 * k - x))
    with mpmath.mp.workdps(Config.PRECISION_DIGITS + 10):
        xv = mpmath.mpf(x.numerator) / x.denominator
        return +((mpmath.power(n, xv + 2) - 1) * (mpmath.power(n, 2 * k - xv) - 1))


def g_n_eval(k: int, n: int, x):
    """f_n(x) / f_2(x)"""
    num = f_n_eval(k, n, x)
    den = f_n_eval(k, 2, x)
    if isinstance(num, Fraction):
        return num / den
    with mpmath.mp.workdps(Config.PRECISION_DIGITS + 10):
        return +(num / den)


def g_n_bound(k: int, n: int) -> Fraction:
    _check_k(k)
    _check_n(n)
    return Fraction((n**(k + 1) - 1) ** 2, 3 * (2**(2 * k) - 1))


def d_value(k: int, n: int, j: int, c=1) -> Fraction:
    """D(j) = 2^(2k) c / (2k+2)! * g_n(2j), j = 0 .. k-1"""
    if not 0 <= j <= k - 1:
        raise DomainError(f"j={j} outside 0..{k - 1}")
    c = as_rational(c)
    return Fraction(2**(2 * k), math.factorial(2 * k + 2)) * c * g_n_eval(k, n, 2 * j)


def c_constant(k: int, n: int) -> Fraction:
    _check_k(k)
    _check_n(n)
    num = (1 + k) * (n**(2 * k) - 1) * (n**2 - 1) * (2**(2 * k) - 1) * 3 * (2**(2 * k + 1) - 1)
    den = 2**(2 * k) * (2 * k + 1) * (n**(k + 1) - 1) ** 2 * (2**(2 * k + 2) - 1)
    return Fraction(num, den)
