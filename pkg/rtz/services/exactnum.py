"""
Exact Rational Arithmetic and Bernoulli Numbers

BigRational is fractions.Fraction: canonical (reduced, positive denominator)
by construction, immutable and safe to share between threads.

Conventions:
- B_1 = -1/2, so that B_m(0) = B_m for every m.
- Bernoulli numbers come from the recurrence sum_{j<=m} C(m+1, j) B_j = 0.
"""

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import mpmath

from rtz.config import Config
from rtz.errors import DomainError, PrecisionExhausted, UndecidedComparison
from rtz.logger import get_logger

logger = get_logger(__name__)

BigRational = Fraction

HALF = Fraction(1, 2)


def as_rational(value) -> Fraction:
    """Coerce int / Fraction / 'p/q' string to a Fraction; floats are refused"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise DomainError(f"refusing inexact value {value!r}")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise DomainError(f"cannot read {value!r} as a rational")


def binomial(n: int, k: int) -> int:
    return math.comb(n, k)


def factorial(n: int) -> int:
    return math.factorial(n)


# ============================================================================
# BERNOULLI NUMBERS
# ============================================================================

class BernoulliCache:
    """
    Append-only table of Bernoulli numbers.

    Reads of computed entries are lock-free; extension runs under a lock so
    concurrent callers always observe the same values.
    """

    def __init__(self):
        self._values: List[Fraction] = [Fraction(1)]
        self._lock = threading.Lock()

    def __len__(self):
        return len(self._values)

    def get(self, m: int) -> Fraction:
        if m < 0:
            raise DomainError(f"Bernoulli index must be >= 0, got {m}")
        values = self._values
        if m < len(values):
            return values[m]
        with self._lock:
            self._extend_to(m)
        return self._values[m]

    def _extend_to(self, m: int):
        values = list(self._values)
        for n in range(len(values), m + 1):
            if n >= 3 and n % 2 == 1:
                values.append(Fraction(0))
                continue
            # C(n+1, n) B_n = -sum_{j<n} C(n+1, j) B_j
            acc = Fraction(0)
            for j, b in enumerate(values):
                if b:
                    acc += math.comb(n + 1, j) * b
            values.append(-acc / (n + 1))
        # publish the longer list in one assignment
        self._values = values


_CACHE = BernoulliCache()


def bernoulli_number(m: int) -> Fraction:
    """B_m with B_1 = -1/2"""
    return _CACHE.get(m)


def bernoulli_table(max_index: int) -> List[Fraction]:
    if max_index < 0:
        raise DomainError(f"max index must be >= 0, got {max_index}")
    bernoulli_number(max_index)
    return [bernoulli_number(i) for i in range(max_index + 1)]


def bernoulli_polynomial(m: int, x) -> Fraction:
    """B_m(x) = sum_j C(m, j) B_j x^(m-j), evaluated exactly"""
    if m < 0:
        raise DomainError(f"Bernoulli polynomial degree must be >= 0, got {m}")
    x = as_rational(x)
    total = Fraction(0)
    # Horner over descending powers of x
    for j in range(m + 1):
        total = total * x + math.comb(m, j) * bernoulli_number(j)
    return total


# ============================================================================
# PI ENCLOSURES AND THE BERNOULLI BOUNDS
# ============================================================================

def _mpf_to_fraction(value) -> Fraction:
    man, exp = value.man_exp
    if exp >= 0:
        return Fraction(man * 2**exp)
    return Fraction(man, 2**(-exp))


def pi_enclosure(digits: int) -> Tuple[Fraction, Fraction]:
    """
    Rational lo < pi < hi with hi - lo <= 10^-digits.

    mpmath rounds pi correctly at its working precision; the enclosure is
    widened by 8 ulps on each side.
    """
    if digits < 1:
        raise DomainError(f"digits must be positive, got {digits}")
    bits = int(digits * 3.33) + 16
    with mpmath.mp.workprec(bits):
        center = _mpf_to_fraction(+mpmath.mp.pi)
    # pi < 4, so one ulp at this precision is at most 2^(2-bits)
    slack = Fraction(8 * 4, 2**bits)
    return center - slack, center + slack


@dataclass(frozen=True)
class BoundCheck:
    m: int
    lower_ok: bool
    upper_ok: bool
    pi_digits: int

    @property
    def holds(self) -> bool:
        return self.lower_ok and self.upper_ok


def _decide_bounds(m: int, lo: Fraction, hi: Fraction, digits: int) -> BoundCheck:
    b = abs(bernoulli_number(2 * m))
    two_fact = 2 * math.factorial(2 * m)
    # 2(2m)!/(2 pi)^(2m) is largest at pi = lo, smallest at pi = hi
    lower_max = Fraction(two_fact) / (2 * lo) ** (2 * m)
    lower_min = Fraction(two_fact) / (2 * hi) ** (2 * m)
    factor = 1 - Fraction(2) ** (1 - 2 * m)
    upper_min = Fraction(two_fact) / ((2 * hi) ** (2 * m) * factor)
    upper_max = Fraction(two_fact) / ((2 * lo) ** (2 * m) * factor)

    if lower_max < b:
        lower_ok = True
    elif lower_min >= b:
        lower_ok = False
    else:
        raise UndecidedComparison(f"lower bound undecided for m={m}", digits=digits)

    if b < upper_min:
        upper_ok = True
    elif b >= upper_max:
        upper_ok = False
    else:
        raise UndecidedComparison(f"upper bound undecided for m={m}", digits=digits)

    return BoundCheck(m=m, lower_ok=lower_ok, upper_ok=upper_ok, pi_digits=digits)


def bernoulli_bound_check(m: int, start_digits: Optional[int] = None,
                          max_doublings: Optional[int] = None) -> BoundCheck:
    """
    Decide 2(2m)!/(2pi)^(2m) < |B_2m| < 2(2m)!/((2pi)^(2m)(1 - 2^(1-2m)))
    with exact rational arithmetic on a pi enclosure, doubling its width in
    digits until both comparisons are decided.
    """
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m}")
    digits = start_digits or Config.PI_START_DIGITS
    cap = Config.MAX_DOUBLINGS if max_doublings is None else max_doublings
    for _ in range(cap + 1):
        lo, hi = pi_enclosure(digits)
        try:
            return _decide_bounds(m, lo, hi, digits)
        except UndecidedComparison:
            logger.debug("Bernoulli bound m=%d undecided at %d digits", m, digits)
            digits *= 2
    raise PrecisionExhausted(f"Bernoulli bound for m={m} undecided", last_digits=digits // 2)


def check_bernoulli_bounds(m: int) -> bool:
    return bernoulli_bound_check(m).holds


# ============================================================================
# CONVOLUTION OF BERNOULLI POLYNOMIALS
# ============================================================================

@dataclass(frozen=True)
class ConvolutionCheck:
    m: int
    a: Fraction
    b: Fraction
    lhs: Fraction
    rhs: Fraction
    printed_rhs: Optional[Fraction] = None

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs

    @property
    def printed_equal(self) -> Optional[bool]:
        if self.printed_rhs is None:
            return None
        return self.lhs == self.printed_rhs


def convolution_identity_check(m: int, a, b, diagnostic: bool = False) -> ConvolutionCheck:
    """
    sum_j C(m,j) B_j(a) B_{m-j}(b) = m(a+b-1) B_{m-1}(a+b) - (m-1) B_m(a+b)

    The literature prints the factor as (a+b+1); with B_1 = -1/2 that form
    already fails at m=2, a=b=0, so the (a+b-1) form is checked. Diagnostic
    mode also reports the printed form's value.
    """
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m}")
    a = as_rational(a)
    b = as_rational(b)
    s = a + b
    lhs = sum(
        (math.comb(m, j) * bernoulli_polynomial(j, a) * bernoulli_polynomial(m - j, b)
         for j in range(m + 1)),
        Fraction(0),
    )
    tail = (m - 1) * bernoulli_polynomial(m, s)
    rhs = m * (s - 1) * bernoulli_polynomial(m - 1, s) - tail
    printed = None
    if diagnostic:
        printed = m * (s + 1) * bernoulli_polynomial(m - 1, s) - tail
        if printed != lhs:
            logger.warning(
                "convolution identity: printed (a+b+1) form fails at m=%d a=%s b=%s "
                "(lhs=%s, printed rhs=%s)", m, a, b, lhs, printed)
    return ConvolutionCheck(m=m, a=a, b=b, lhs=lhs, rhs=rhs, printed_rhs=printed)
