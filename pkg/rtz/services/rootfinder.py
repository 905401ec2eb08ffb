"""
Numeric Root Finder (cross-check only)

Aberth-Ehrlich simultaneous iteration in mpmath. Inclusion radii come from
the Weierstrass corrections: the disk around z_i of radius deg * |W_i| with
W_i = p(z_i) / (a_n prod_{j != i} (z_i - z_j)) contains a root of p, and
disjoint disks contain exactly one root each.

Nothing here feeds a verdict; results are compared against the exact
pipeline and reported.
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence

import mpmath

from rtz.config import Config
from rtz.errors import DomainError, NumericConvergenceError
from rtz.logger import get_logger
from rtz.services.polycore import DensePoly

logger = get_logger(__name__)

GUARD_DIGITS = 10


@dataclass(frozen=True)
class NumericRoot:
    value: mpmath.mpc
    radius: mpmath.mpf

    @property
    def modulus(self):
        return abs(self.value)

    def is_real(self) -> bool:
        """Inclusion disk meets the real axis"""
        return abs(self.value.imag) <= self.radius


def _to_mpf(c):
    return mpmath.mpf(c.numerator) / c.denominator


def _horner_with_derivative(coeffs, z):
    p = coeffs[-1]
    dp = mpmath.mpc(0)
    for c in reversed(coeffs[:-1]):
        dp = dp * z + p
        p = p * z + c
    return p, dp


def _initial_points(coeffs, n):
    lead = abs(coeffs[-1])
    # Fujiwara-style radius: max |a_i / a_n|^(1/(n-i))
    radius = max(
        (abs(coeffs[i]) / lead) ** (mpmath.mpf(1) / (n - i))
        for i in range(n) if coeffs[i]
    )
    offset = mpmath.mpf('0.4')
    return [
        radius * mpmath.expj(2 * mpmath.pi * j / n + offset)
        for j in range(n)
    ]


def _weierstrass_radii(coeffs, roots):
    n = len(roots)
    lead = coeffs[-1]
    radii = []
    for i, z in enumerate(roots):
        p, _ = _horner_with_derivative(coeffs, z)
        denom = lead
        for j, w in enumerate(roots):
            if j != i:
                denom *= (z - w)
        if denom == 0:
            radii.append(mpmath.inf)
        else:
            radii.append(n * abs(p / denom))
    return radii


def _step_off_critical(coeffs, z):
    """
    Move z off a critical point of p by a small offset relative to |z|,
    trying eight fixed directions in turn; None if every one is critical.
    """
    scale = max(abs(z), 1) * mpmath.mpf(10) ** (-(mpmath.mp.dps // 2))
    for turn in range(8):
        w = z + scale * mpmath.expj(mpmath.pi * turn / 4 + mpmath.mpf('0.3'))
        p, dp = _horner_with_derivative(coeffs, w)
        if dp != 0:
            return w, p, dp
    return None


def _aberth(coeffs, max_iter):
    n = len(coeffs) - 1
    roots = _initial_points(coeffs, n)
    tol = mpmath.mpf(10) ** (-(mpmath.mp.dps - 5))
    for _ in range(max_iter):
        biggest = mpmath.mpf(0)
        for i in range(n):
            z = roots[i]
            p, dp = _horner_with_derivative(coeffs, z)
            if p == 0:
                continue
            if dp == 0:
                moved = _step_off_critical(coeffs, z)
                if moved is None:
                    continue
                z, p, dp = moved
            ratio = p / dp
            repulsion = mpmath.fsum(1 / (z - roots[j]) for j in range(n) if j != i)
            step = ratio / (1 - ratio * repulsion)
            roots[i] = z - step
            biggest = max(biggest, abs(step))
        if biggest < tol * max(1, max(abs(r) for r in roots)):
            return roots, True
    return roots, False


def _find_at(coeffs_exact, dps, target):
    with mpmath.mp.workdps(dps):
        coeffs = [_to_mpf(c) for c in coeffs_exact]
        n = len(coeffs) - 1
        roots, converged = _aberth(coeffs, max_iter=50 * n + 200)
        # rounding slack at working precision
        slack = mpmath.mpf(10) ** (-(dps - 3))
        radii = [r + slack for r in _weierstrass_radii(coeffs, roots)]
        ok = converged and all(r < target for r in radii)
        return [+r for r in roots], radii, ok


def numeric_roots(p: DensePoly, precision_digits: int,
                  max_doublings: Optional[int] = None,
                  start_digits: Optional[int] = None) -> List[NumericRoot]:
    """
    All deg(p) roots with inclusion radii below 10^-precision_digits.
    Roots at z = 0 are split off exactly (radius 0). Working precision
    starts at precision_digits + guard digits and doubles on failure.
    """
    if p.is_zero() or p.degree < 1:
        raise DomainError("numeric_roots needs a polynomial of degree >= 1")
    if precision_digits < 1:
        raise DomainError(f"precision_digits must be positive, got {precision_digits}")
    cap = Config.MAX_DOUBLINGS if max_doublings is None else max_doublings

    zeros = p.low_order()
    core = DensePoly(p.coeffs[zeros:])
    found: List[NumericRoot] = [
        NumericRoot(mpmath.mpc(0), mpmath.mpf(0)) for _ in range(zeros)
    ]
    if core.degree < 1:
        return found

    target = mpmath.mpf(10) ** (-precision_digits)
    dps = max(start_digits or 0, precision_digits + GUARD_DIGITS)
    roots, radii = [], []
    for attempt in range(cap + 1):
        roots, radii, ok = _find_at(core.coeffs, dps, target)
        if ok:
            found.extend(NumericRoot(z, r) for z, r in zip(roots, radii))
            return _ordered(found)
        logger.debug("root finder missed 1e-%d at %d digits (attempt %d)",
                     precision_digits, dps, attempt + 1)
        dps *= 2
    raise NumericConvergenceError(
        f"roots of a degree-{p.degree} polynomial not certified to 1e-{precision_digits}",
        partial=roots, radii=radii, digits=dps // 2)


def _ordered(roots: Sequence[NumericRoot]) -> List[NumericRoot]:
    """Deterministic order: by argument, then modulus"""
    return sorted(
        roots,
        key=lambda r: (float(mpmath.arg(r.value)) if r.value != 0 else -4.0,
                       float(abs(r.value))),
    )


def format_root(root: NumericRoot, digits: int = 20) -> dict:
    return {
        're': mpmath.nstr(root.value.real, digits),
        'im': mpmath.nstr(root.value.imag, digits),
        'radius': mpmath.nstr(root.radius, 3),
    }
