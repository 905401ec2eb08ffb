"""
Univariate Polynomials over the Rationals

DensePoly wraps a sympy Poly over QQ in the variable z and exposes its
coefficients low degree first as Fractions, trailing zeros trimmed; the zero
polynomial has no coefficients. Everything here is exact.

Components:
- DensePoly arithmetic, evaluation, derivative, exact division
- gcd, squarefree test and squarefree decomposition (sympy)
- self-inversive structure: reciprocity, even-part halving,
  the circle-to-interval transform t = w + 1/w
- Sturm chains and exact real-root counting (sympy)
- unit-circle census of a reciprocal polynomial
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

import sympy
from sympy import QQ, Poly

from rtz.errors import DomainError
from rtz.services.exactnum import as_rational

Z = sympy.Symbol('z')


def _to_sympy(c: Fraction) -> sympy.Rational:
    return sympy.Rational(c.numerator, c.denominator)


def _to_fraction(value) -> Fraction:
    r = sympy.Rational(value)
    return Fraction(int(r.p), int(r.q))


class DensePoly:
    """Immutable univariate polynomial over QQ"""

    __slots__ = ('poly', 'coeffs')

    def __init__(self, coeffs: Iterable = ()):
        values = [as_rational(c) for c in coeffs]
        rep = [_to_sympy(c) for c in reversed(values)] or [0]
        self._assign(Poly.from_list(rep, Z, domain=QQ))

    def _assign(self, p: Poly):
        object.__setattr__(self, 'poly', p)
        coeffs = () if p.is_zero else tuple(_to_fraction(c) for c in reversed(p.all_coeffs()))
        object.__setattr__(self, 'coeffs', coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("DensePoly is immutable")

    def __reduce__(self):
        return DensePoly, (self.coeffs,)

    @classmethod
    def from_sympy(cls, p: Poly) -> 'DensePoly':
        out = cls.__new__(cls)
        out._assign(p.set_domain(QQ))
        return out

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls):
        return cls(())

    @classmethod
    def constant(cls, c):
        return cls((c,))

    @classmethod
    def monomial(cls, degree: int, c=1):
        return cls([0] * degree + [c])

    @classmethod
    def from_roots(cls, roots: Iterable, lead=1):
        p = cls.constant(lead)
        for r in roots:
            p = p * cls((-as_rational(r), 1))
        return p

    @classmethod
    def from_dict(cls, terms: Dict[int, object]):
        if not terms:
            return cls.zero()
        top = max(terms)
        return cls(terms.get(i, 0) for i in range(top + 1))

    # ------------------------------------------------------------------
    # basic properties
    # ------------------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial"""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def coeff(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def low_order(self) -> int:
        """Multiplicity of the root z = 0"""
        if self.is_zero():
            raise DomainError("zero polynomial has no root multiplicity")
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return 0

    def __call__(self, x):
        return _to_fraction(self.poly.eval(_to_sympy(as_rational(x))))

    def __eq__(self, other):
        if isinstance(other, DensePoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"DensePoly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        return str(self.poly.as_expr())

    # ------------------------------------------------------------------
    # arithmetic
    # ------------------------------------------------------------------

    def __neg__(self):
        return DensePoly.from_sympy(-self.poly)

    def __add__(self, other):
        return DensePoly.from_sympy(self.poly + _coerce(other).poly)

    __radd__ = __add__

    def __sub__(self, other):
        return DensePoly.from_sympy(self.poly - _coerce(other).poly)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, DensePoly):
            return DensePoly.from_sympy(self.poly * other.poly)
        return DensePoly.from_sympy(self.poly.mul_ground(_to_sympy(as_rational(other))))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return DensePoly.from_sympy(self.poly ** e)

    def divmod(self, divisor: 'DensePoly') -> Tuple['DensePoly', 'DensePoly']:
        if divisor.is_zero():
            raise DomainError("polynomial division by zero")
        q, r = self.poly.div(divisor.poly)
        return DensePoly.from_sympy(q), DensePoly.from_sympy(r)

    def __floordiv__(self, divisor):
        return self.divmod(divisor)[0]

    def __mod__(self, divisor):
        return self.divmod(divisor)[1]

    def exact_div(self, divisor: 'DensePoly') -> 'DensePoly':
        q, r = self.divmod(divisor)
        if not r.is_zero():
            raise DomainError(f"{divisor} does not divide {self}")
        return q

    # ------------------------------------------------------------------
    # transforms
    # ------------------------------------------------------------------

    def derivative(self) -> 'DensePoly':
        return DensePoly.from_sympy(self.poly.diff(Z))

    def monic(self) -> 'DensePoly':
        if self.is_zero():
            return self
        return DensePoly.from_sympy(self.poly.monic())

    def compose_scale(self, c) -> 'DensePoly':
        """p(c*z)"""
        inner = Poly(_to_sympy(as_rational(c)) * Z, Z, domain=QQ)
        return DensePoly.from_sympy(self.poly.compose(inner))

    def reversed(self) -> 'DensePoly':
        """z^deg p(1/z)"""
        return DensePoly(reversed(self.coeffs))

    def integer_primitive(self) -> Tuple[int, ...]:
        """Integer coefficients of the primitive multiple with positive lead"""
        if self.is_zero():
            return ()
        _, integral = self.poly.clear_denoms(convert=True)
        _, prim = integral.primitive()
        ints = [int(c) for c in reversed(prim.all_coeffs())]
        if ints[-1] < 0:
            ints = [-i for i in ints]
        return tuple(ints)

    def is_even(self) -> bool:
        return all(c == 0 for c in self.coeffs[1::2])


def _coerce(value) -> DensePoly:
    if isinstance(value, DensePoly):
        return value
    return DensePoly.constant(value)


# ============================================================================
# GCD AND SQUAREFREE STRUCTURE
# ============================================================================

def poly_gcd(p: DensePoly, q: DensePoly) -> DensePoly:
    """Monic gcd over QQ"""
    if p.is_zero() and q.is_zero():
        raise DomainError("gcd of two zero polynomials is undefined")
    return DensePoly.from_sympy(p.poly.gcd(q.poly)).monic()


def is_squarefree(p: DensePoly) -> bool:
    if p.is_zero():
        raise DomainError("squarefree test on the zero polynomial")
    return p.poly.is_sqf


def squarefree_part(p: DensePoly) -> DensePoly:
    if p.is_zero():
        raise DomainError("squarefree part of the zero polynomial")
    if p.is_constant():
        return p
    return DensePoly.from_sympy(p.poly.sqf_part())


def squarefree_decomposition(p: DensePoly) -> List[Tuple[DensePoly, int]]:
    """
    Pairwise coprime monic squarefree (factor, multiplicity) pairs with
    p = lead * prod factor^multiplicity, ordered by multiplicity. Constant
    factors are dropped.
    """
    if p.is_zero():
        raise DomainError("squarefree decomposition of the zero polynomial")
    _, factors = p.poly.sqf_list()
    out = [(DensePoly.from_sympy(f).monic(), mult) for f, mult in factors if f.degree() > 0]
    return sorted(out, key=lambda pair: pair[1])


# ============================================================================
# SELF-INVERSIVE STRUCTURE
# ============================================================================

RECIPROCAL = 'reciprocal'
ANTI_RECIPROCAL = 'anti-reciprocal'
NEITHER = 'neither'


def reciprocity_kind(p: DensePoly) -> str:
    if p.is_zero():
        raise DomainError("reciprocity of the zero polynomial")
    rev = p.reversed().coeffs
    # a trailing zero coefficient shortens the reversal: never palindromic
    if len(rev) != len(p.coeffs):
        return NEITHER
    if rev == p.coeffs:
        return RECIPROCAL
    if all(a == -b for a, b in zip(rev, p.coeffs)):
        return ANTI_RECIPROCAL
    return NEITHER


def is_self_inversive(p: DensePoly) -> bool:
    """Real reciprocal condition a_i = a_{deg - i}"""
    if p.is_zero():
        raise DomainError("self-inversive test on the zero polynomial")
    return reciprocity_kind(p) == RECIPROCAL


def halve_even_poly(p: DensePoly) -> DensePoly:
    """G with p(z) = G(z^2)"""
    if p.is_zero():
        raise DomainError("cannot halve the zero polynomial")
    if not p.is_even():
        odd = [i for i in range(1, len(p.coeffs), 2) if p.coeffs[i]]
        raise DomainError(f"odd-degree terms present at degrees {odd}")
    return DensePoly(p.coeffs[0::2])


def _strip_root(p: DensePoly, root: int) -> Tuple[DensePoly, int]:
    factor = DensePoly((-root, 1))
    count = 0
    while p.degree > 0 and p(root) == 0:
        p = p.exact_div(factor)
        count += 1
    return p, count


def _chebyshev_like(s: int) -> List[DensePoly]:
    """T_m(t) with w^m + w^-m = T_m(w + 1/w), m = 0..s"""
    t = DensePoly((0, 1))
    basis = [DensePoly.constant(2), t]
    while len(basis) <= s:
        basis.append(t * basis[-1] - basis[-2])
    return basis[:s + 1]


@dataclass(frozen=True)
class IntervalTransform:
    """Result of circle_to_interval; g = (w-1)^a (w+1)^b * reduced"""

    q: DensePoly
    reduced: DensePoly
    cofactors: Dict[int, int] = field(default_factory=dict)

    @property
    def at_plus_one(self) -> int:
        return self.cofactors.get(1, 0)

    @property
    def at_minus_one(self) -> int:
        return self.cofactors.get(-1, 0)


def circle_to_interval(g: DensePoly) -> IntervalTransform:
    """
    Strip the roots w = +1 and w = -1, then write the remaining reciprocal
    part of degree 2s as w^s q(w + 1/w). Roots of g on |w| = 1 other than
    +-1 correspond two-to-one to roots of q in the open interval (-2, 2).
    """
    if g.is_zero() or not is_self_inversive(g):
        raise DomainError("circle_to_interval needs a nonzero reciprocal polynomial")
    reduced, plus = _strip_root(g, 1)
    reduced, minus = _strip_root(reduced, -1)
    # multiplicity at +1 is even and the remainder stays reciprocal
    if not is_self_inversive(reduced) or reduced.degree % 2:
        raise DomainError(f"reduced factor {reduced} lost reciprocity")
    s = reduced.degree // 2
    basis = _chebyshev_like(s)
    q = DensePoly.constant(reduced.coeff(s))
    for m in range(1, s + 1):
        q = q + basis[m] * reduced.coeff(s + m)
    cofactors = {}
    if plus:
        cofactors[1] = plus
    if minus:
        cofactors[-1] = minus
    return IntervalTransform(q=q, reduced=reduced, cofactors=cofactors)


def cauchy_bound(p: DensePoly) -> Fraction:
    """1 + max |a_i / a_n|: every root has strictly smaller modulus"""
    if p.degree < 1:
        raise DomainError("root bound needs degree >= 1")
    lead = abs(p.lead)
    return 1 + max(abs(c) / lead for c in p.coeffs[:-1])


# ============================================================================
# STURM CHAINS
# ============================================================================

def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class SturmChain:
    chain: Tuple[DensePoly, ...]

    @classmethod
    def build(cls, p: DensePoly) -> 'SturmChain':
        """p0 = squarefree part of p, p1 = p0', p_{i+1} = -rem(p_{i-1}, p_i)"""
        if p.is_zero():
            raise DomainError("Sturm chain of the zero polynomial")
        return cls(tuple(DensePoly.from_sympy(f) for f in p.poly.sturm()))

    def variations(self, x) -> int:
        signs = [_sign(f(x)) for f in self.chain]
        signs = [s for s in signs if s]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_chain(p: DensePoly) -> SturmChain:
    return SturmChain.build(p)


def count_real_roots_in(q: DensePoly, a, b, chain: Optional[SturmChain] = None) -> int:
    """
    Distinct real roots of q in the open interval (a, b). Without a chain
    sympy counts on [a, b]; the endpoints are required to be nonroots, so
    both counts agree.
    """
    a, b = as_rational(a), as_rational(b)
    if q.is_zero():
        raise DomainError("root count of the zero polynomial")
    if not a < b:
        raise DomainError(f"empty interval ({a}, {b})")
    if q(a) == 0 or q(b) == 0:
        raise DomainError(
            f"endpoint is a root of q on ({a}, {b}); perturb the endpoints "
            f"(see widen_to_nonroots)")
    if q.is_constant():
        return 0
    if chain is None:
        return int(q.poly.count_roots(_to_sympy(a), _to_sympy(b)))
    return chain.variations(a) - chain.variations(b)


def widen_to_nonroots(q: DensePoly, a, b, step=Fraction(1, 10**6)) -> Tuple[Fraction, Fraction]:
    """Push a down and b up by exact nudges until neither is a root of q"""
    a, b = as_rational(a), as_rational(b)
    while q(a) == 0:
        a -= step
    while q(b) == 0:
        b += step
    return a, b


def count_real_roots_with_multiplicity(p: DensePoly, a, b) -> int:
    """Real roots of p in (a, b) counted with multiplicity"""
    total = 0
    if p.is_constant():
        return total
    for factor, mult in squarefree_decomposition(p):
        total += mult * count_real_roots_in(factor, a, b)
    return total


# ============================================================================
# UNIT-CIRCLE CENSUS OF A RECIPROCAL POLYNOMIAL
# ============================================================================

@dataclass(frozen=True)
class CircleCensus:
    """Roots of a reciprocal g, counted with multiplicity, by location"""

    degree: int
    on_circle: int          # nonreal, |w| = 1
    real_positive_off: int  # real w > 0, w != 1
    real_negative_off: int  # real w < 0, w != -1
    nonreal_off: int        # nonreal, |w| != 1
    at_plus_one: int
    at_minus_one: int
    squarefree: bool

    @property
    def total(self) -> int:
        return (self.on_circle + self.real_positive_off + self.real_negative_off
                + self.nonreal_off + self.at_plus_one + self.at_minus_one)

    @property
    def all_on_circle(self) -> bool:
        return self.on_circle + self.at_plus_one + self.at_minus_one == self.degree


def classify_unit_circle(g: DensePoly) -> CircleCensus:
    transform = circle_to_interval(g)
    on = pos = neg = nonreal = 0
    for factor, mult in squarefree_decomposition(transform.q):
        bound = max(cauchy_bound(factor), Fraction(3))
        chain = SturmChain.build(factor)
        inside = count_real_roots_in(factor, -2, 2, chain)
        above = count_real_roots_in(factor, 2, bound, chain)
        below = count_real_roots_in(factor, -bound, -2, chain)
        on += 2 * mult * inside
        pos += 2 * mult * above
        neg += 2 * mult * below
        nonreal += 2 * mult * (factor.degree - inside - above - below)
    return CircleCensus(
        degree=g.degree,
        on_circle=on,
        real_positive_off=pos,
        real_negative_off=neg,
        nonreal_off=nonreal,
        at_plus_one=transform.at_plus_one,
        at_minus_one=transform.at_minus_one,
        squarefree=is_squarefree(g) if g.degree > 0 else True,
    )
