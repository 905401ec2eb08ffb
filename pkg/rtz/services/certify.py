"""
Zero-Location Certification

Staged pipelines over exact rationals. Each stage is recorded as
{'passed': bool, ...details} under `stages`; the first failing stage ends the
run with verdict Failed and its tag in `failed_stage`, witness values
attached. Numeric roots are an optional cross-check and never touch a
verdict.

Pipelines:
- RamanujanTypeCertifier: R_{2k+1,n} has a double root at 0 and every other
  root simple on |z| = 1/n (certified on H, whose roots are n times those)
- certify_lalin_rogers: the n = 2 certificate read on |z| = 1
- ClassicCertifier: exact real / unit-circle partition of R_{2k+1}
- GeneralizedProbe: evidence for or against unit-circle zeros of R^(l)
"""

import dataclasses
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional

import mpmath

from rtz.config import Config
from rtz.logger import get_logger
from rtz.services.criteria import CriterionReport, schinzel_criterion_check
from rtz.services.polycore import (
    ANTI_RECIPROCAL,
    RECIPROCAL,
    CircleCensus,
    DensePoly,
    cauchy_bound,
    classify_unit_circle,
    count_real_roots_in,
    count_real_roots_with_multiplicity,
    halve_even_poly,
    is_self_inversive,
    is_squarefree,
    reciprocity_kind,
    squarefree_decomposition,
)
from rtz.services.ramfam import (
    FamilySpec,
    Variant,
    build_classic,
    build_generalized,
    build_H,
    build_lalin_rogers,
    build_ramanujan_type,
)
from rtz.services.rootfinder import format_root, numeric_roots

logger = get_logger(__name__)

THEOREM_HOLDS = 'TheoremHolds'
VACUOUSLY_TRUE = 'VacuouslyTrue'
FAILED = 'Failed'
CONSISTENT = 'ConsistentWithConjecture'
COUNTEREXAMPLE = 'CounterexampleCandidate'

PASSING_VERDICTS = (THEOREM_HOLDS, VACUOUSLY_TRUE, CONSISTENT)


# ============================================================================
# REPORT TYPES
# ============================================================================

@dataclass(frozen=True)
class Certificate:
    family: FamilySpec
    verdict: str
    failed_stage: Optional[str] = None
    origin_multiplicity: Optional[int] = None
    reciprocal: Optional[bool] = None
    sign_pattern_ok: Optional[bool] = None
    squarefree_H: Optional[bool] = None
    h_at_1: Optional[Fraction] = None
    h_at_minus1: Optional[Fraction] = None
    circle_count: Optional[int] = None
    real_count: Optional[int] = None
    off_circle_nonreal_count: Optional[int] = None
    census: Optional[CircleCensus] = None
    criteria: Optional[CriterionReport] = None
    stages: Dict[str, dict] = field(default_factory=dict)
    witness: Dict[str, object] = field(default_factory=dict)
    numeric_crosscheck: Optional[dict] = None

    @property
    def passed(self) -> bool:
        return self.verdict in PASSING_VERDICTS


@dataclass(frozen=True)
class ClassicReport:
    family: FamilySpec
    verdict: str
    failed_stage: Optional[str] = None
    degree: Optional[int] = None
    squarefree: Optional[bool] = None
    census: Optional[CircleCensus] = None
    circle_count: Optional[int] = None
    real_count: Optional[int] = None
    unit_real_count: Optional[int] = None
    off_circle_nonreal_count: Optional[int] = None
    sturm_real_count: Optional[int] = None
    stages: Dict[str, dict] = field(default_factory=dict)
    witness: Dict[str, object] = field(default_factory=dict)
    numeric_crosscheck: Optional[dict] = None

    @property
    def passed(self) -> bool:
        return self.verdict in PASSING_VERDICTS


@dataclass(frozen=True)
class ConjectureReport:
    family: FamilySpec
    verdict: str
    reciprocity: str = ''
    forced_unit_root: bool = False
    squarefree: Optional[bool] = None
    repeated_nonreal: Optional[bool] = None
    census: Optional[CircleCensus] = None
    circle_count: Optional[int] = None
    real_count: Optional[int] = None
    off_circle_nonreal_count: Optional[int] = None
    stages: Dict[str, dict] = field(default_factory=dict)
    witness: Dict[str, object] = field(default_factory=dict)
    numeric_crosscheck: Optional[dict] = None

    @property
    def passed(self) -> bool:
        return self.verdict in PASSING_VERDICTS


# ============================================================================
# NUMERIC CROSS-CHECK
# ============================================================================

def _coefficient_digits(p: DensePoly) -> int:
    return max(len(str(abs(c))) for c in p.integer_primitive())


def start_digits(p: DensePoly, precision_digits: int) -> int:
    """First rung of the numeric precision ladder"""
    return max(30, precision_digits, _coefficient_digits(p) // 4)


def numeric_block(p: DensePoly, precision_digits: int) -> dict:
    """Roots of p with inclusion radii and the largest | |z| - 1 | over nonreal roots"""
    roots = numeric_roots(p, precision_digits, start_digits=start_digits(p, precision_digits))
    threshold = mpmath.mpf(10) ** (-max(1, precision_digits - 10))
    worst = mpmath.mpf(0)
    nonreal = 0
    with mpmath.mp.workdps(2 * precision_digits + 20):
        for root in roots:
            if root.is_real():
                continue
            nonreal += 1
            worst = max(worst, abs(root.modulus - 1))
    return {
        'precision_digits': precision_digits,
        'nonreal_count': nonreal,
        'max_modulus_deviation': mpmath.nstr(worst, 5),
        'deviation_threshold': mpmath.nstr(threshold, 3),
        'within_threshold': bool(worst < threshold),
        'roots': [format_root(r) for r in roots],
    }


# ============================================================================
# RAMANUJAN-TYPE CERTIFICATION
# ============================================================================

class RamanujanTypeCertifier:
    """Certifies the zero location of R_{2k+1,n}"""

    def __init__(self, numeric: bool = False, precision_digits: Optional[int] = None):
        self.numeric = numeric
        self.precision_digits = precision_digits or Config.PRECISION_DIGITS

    def certify(self, k: int, n: int) -> Certificate:
        family = FamilySpec(Variant.RAMANUJAN_TYPE, k, n=n)
        stages: Dict[str, dict] = {}
        fields = {'family': family, 'stages': stages}

        def fail(stage, **witness):
            logger.warning("%s failed at stage %s: %s", family.label, stage, witness)
            return Certificate(verdict=FAILED, failed_stage=stage, witness=witness, **fields)

        # Stage 1: build R and H, check R(z/n) = z^2 H(z)
        R = build_ramanujan_type(k, n)
        H, table = build_H(k, n)
        identity_ok = R.compose_scale(Fraction(1, n)) == DensePoly.monomial(2) * H
        stages['factorization'] = {'passed': identity_ok}
        if not identity_ok:
            return fail('factorization', R=R, H=H)

        # Stage 2: z = 0 is a double root
        origin = R.low_order()
        fields['origin_multiplicity'] = origin
        stages['origin'] = {'passed': origin == 2, 'multiplicity': origin}
        if origin != 2:
            return fail('origin', origin_multiplicity=origin)

        # Stage 3: A_j = A_{k-1-j} and sign(A_j) = (-1)^(k+1)
        fields['reciprocal'] = table.is_reciprocal()
        fields['sign_pattern_ok'] = table.sign_pattern_ok()
        stages['coefficients'] = {
            'passed': fields['reciprocal'] and fields['sign_pattern_ok'],
            'A': list(table.A),
            'sign': table.sign,
        }
        if not stages['coefficients']['passed']:
            return fail('coefficients', A=list(table.A), expected_sign=table.sign)

        # Stage 4: H(1) and H(-1) nonzero, H(1) carries the common sign
        h1, hm1 = H(1), H(-1)
        fields['h_at_1'] = h1
        fields['h_at_minus1'] = hm1
        sign_law = (h1 > 0) - (h1 < 0) == table.sign
        stages['unit_values'] = {'passed': h1 != 0 and hm1 != 0 and sign_law,
                                 'h_at_1': h1, 'h_at_minus1': hm1}
        if not stages['unit_values']['passed']:
            return fail('unit_values', h_at_1=h1, h_at_minus1=hm1)

        # Stage 5: H squarefree
        squarefree = is_squarefree(H)
        fields['squarefree_H'] = squarefree
        stages['squarefree'] = {'passed': squarefree}
        if not squarefree:
            return fail('squarefree', H=H)

        # Stage 6: G(w) = H(sqrt w) self-inversive, census on |w| = 1
        G = halve_even_poly(H)
        if not is_self_inversive(G):
            stages['circle'] = {'passed': False, 'reason': 'G not self-inversive'}
            return fail('circle', G=G)
        census = classify_unit_circle(G)
        circle = 2 * (census.on_circle + census.at_minus_one)
        real = 2 * (census.real_positive_off + census.at_plus_one)
        off = 2 * (census.real_negative_off + census.nonreal_off)
        fields.update(census=census, circle_count=circle, real_count=real,
                      off_circle_nonreal_count=off)
        circle_ok = census.at_plus_one == 0 and circle == 2 * k - 2
        stages['circle'] = {'passed': circle_ok, 'circle_count': circle,
                            'real_count': real, 'off_circle_nonreal_count': off}
        if not circle_ok:
            return fail('circle', census=census)
        logger.debug("%s: %d roots of H on the unit circle", family.label, circle)

        fields['criteria'] = schinzel_criterion_check(table, n)
        if self.numeric and H.degree > 0:
            fields['numeric_crosscheck'] = numeric_block(H, self.precision_digits)

        verdict = VACUOUSLY_TRUE if k == 1 else THEOREM_HOLDS
        return Certificate(verdict=verdict, **fields)


def certify_ramanujan_type(k: int, n: int, numeric: bool = False,
                           precision_digits: Optional[int] = None) -> Certificate:
    return RamanujanTypeCertifier(numeric, precision_digits).certify(k, n)


def certify_lalin_rogers(k: int, numeric: bool = False,
                         precision_digits: Optional[int] = None) -> Certificate:
    """
    R^LR_{2k+1}(z) = R_{2k+1,2}(z/2) = z^2 H(z) with H the n = 2 cofactor, so
    the n = 2 certificate places every nonzero root on |z| = 1. The identity
    with z^2 H is checked exactly before the stages are reused.
    """
    family = FamilySpec(Variant.LALIN_ROGERS, k)
    R = build_lalin_rogers(k)
    H, _ = build_H(k, 2)
    scaled = R == DensePoly.monomial(2) * H
    if not scaled:
        logger.warning("%s failed at stage scaling", family.label)
        return Certificate(family=family, verdict=FAILED, failed_stage='scaling',
                           stages={'scaling': {'passed': False}}, witness={'R': R, 'H': H})
    base = certify_ramanujan_type(k, 2, numeric, precision_digits)
    stages = {'scaling': {'passed': True, 'radius': 1}, **base.stages}
    return dataclasses.replace(base, family=family, stages=stages)


# ============================================================================
# CLASSIC PARTITION
# ============================================================================

class ClassicCertifier:
    """Exact real / unit-circle partition of the roots of R_{2k+1}"""

    def __init__(self, precision_digits: Optional[int] = None, numeric: bool = True):
        self.precision_digits = precision_digits or Config.PRECISION_DIGITS
        self.numeric = numeric

    def certify(self, k: int) -> ClassicReport:
        family = FamilySpec(Variant.CLASSIC, k)
        stages: Dict[str, dict] = {}
        fields = {'family': family, 'stages': stages}

        def fail(stage, **witness):
            logger.warning("%s failed at stage %s: %s", family.label, stage, witness)
            return ClassicReport(verdict=FAILED, failed_stage=stage, witness=witness, **fields)

        R = build_classic(k)
        fields['degree'] = R.degree
        fields['squarefree'] = is_squarefree(R)
        reciprocal = is_self_inversive(R)
        stages['self_inversive'] = {'passed': reciprocal}
        if not reciprocal:
            return fail('self_inversive', R=R)

        census = classify_unit_circle(halve_even_poly(R))
        circle = 2 * (census.on_circle + census.at_minus_one)
        unit_real = 2 * census.at_plus_one
        real = 2 * census.real_positive_off + unit_real
        off = 2 * (census.real_negative_off + census.nonreal_off)
        fields.update(census=census, circle_count=circle, real_count=real,
                      unit_real_count=unit_real, off_circle_nonreal_count=off)
        conserved = circle + real + off == R.degree
        stages['partition'] = {'passed': conserved and off == 0, 'circle_count': circle,
                               'real_count': real, 'off_circle_nonreal_count': off}
        if not stages['partition']['passed']:
            return fail('partition', census=census)

        # independent count of real roots straight from R
        bound = cauchy_bound(R)
        sturm_real = count_real_roots_with_multiplicity(R, -bound, bound)
        fields['sturm_real_count'] = sturm_real
        stages['real_count'] = {'passed': sturm_real == real, 'sturm_real_count': sturm_real}
        if sturm_real != real:
            return fail('real_count', sturm_real_count=sturm_real, census_real_count=real)

        if self.numeric:
            fields['numeric_crosscheck'] = numeric_block(R, self.precision_digits)
        return ClassicReport(verdict=THEOREM_HOLDS, **fields)


def certify_classic(k: int, precision_digits: Optional[int] = None,
                    numeric: bool = True) -> ClassicReport:
    return ClassicCertifier(precision_digits, numeric).certify(k)


# ============================================================================
# GENERALIZED PROBE
# ============================================================================

def _nonreal_root_count(factor: DensePoly) -> int:
    bound = cauchy_bound(factor)
    return factor.degree - count_real_roots_in(factor, -bound, bound)


class GeneralizedProbe:
    """
    Evidence for the claim that non-real zeros of R^(l) are simple and lie on
    |Z| = 1. Real zeros are inventoried, not judged. The verdict is
    ConsistentWithConjecture or CounterexampleCandidate, never a proof.
    """

    def __init__(self, precision_digits: Optional[int] = None):
        self.precision_digits = precision_digits or Config.PRECISION_DIGITS

    def certify(self, k: int, ell: int) -> ConjectureReport:
        family = FamilySpec(Variant.GENERALIZED, k, ell=ell)
        stages: Dict[str, dict] = {}
        fields = {'family': family, 'stages': stages}
        witness: Dict[str, object] = {}

        P = build_generalized(k, ell)
        kind = reciprocity_kind(P)
        fields['reciprocity'] = kind
        stages['reciprocity'] = {'passed': True, 'kind': kind}

        reduced = P
        if kind == ANTI_RECIPROCAL:
            # P(1) = -P(1): Z = 1 is forced, the quotient is reciprocal
            reduced = P.exact_div(DensePoly((-1, 1)))
            fields['forced_unit_root'] = True
            kind = reciprocity_kind(reduced)

        # simplicity of the non-real zeros, exactly
        fields['squarefree'] = is_squarefree(P)
        repeated = [
            (factor, mult) for factor, mult in squarefree_decomposition(P)
            if mult > 1 and _nonreal_root_count(factor) > 0
        ]
        fields['repeated_nonreal'] = bool(repeated)
        stages['simplicity'] = {'passed': not repeated, 'squarefree': fields['squarefree']}
        if repeated:
            witness['repeated_factors'] = [(f, m) for f, m in repeated]

        if kind == RECIPROCAL:
            census = classify_unit_circle(reduced)
            forced = 1 if fields.get('forced_unit_root') else 0
            fields.update(
                census=census,
                circle_count=census.on_circle,
                real_count=(census.real_positive_off + census.real_negative_off
                            + census.at_plus_one + census.at_minus_one + forced),
                off_circle_nonreal_count=census.nonreal_off,
            )
            stages['circle'] = {'passed': census.nonreal_off == 0, 'exact': True}
            if census.nonreal_off:
                witness['census'] = census
        else:
            stages['circle'] = {'passed': True, 'exact': False,
                                'reason': 'not reciprocal; numeric evidence only'}

        block = numeric_block(P, self.precision_digits)
        fields['numeric_crosscheck'] = block
        if not stages['circle']['exact']:
            stages['circle']['passed'] = block['within_threshold']
            if not block['within_threshold']:
                witness['numeric'] = block['roots']

        candidate = not all(stage['passed'] for stage in stages.values())
        if candidate:
            logger.warning("%s: counterexample candidate %s", family.label, witness)
        verdict = COUNTEREXAMPLE if candidate else CONSISTENT
        return ConjectureReport(verdict=verdict, witness=witness, **fields)


def probe_generalized(k: int, ell: int, precision_digits: Optional[int] = None) -> ConjectureReport:
    return GeneralizedProbe(precision_digits).certify(k, ell)


def certify_family(spec: FamilySpec, numeric: bool = False,
                   precision_digits: Optional[int] = None):
    """Dispatch on the family variant"""
    if spec.variant is Variant.RAMANUJAN_TYPE:
        return certify_ramanujan_type(spec.k, spec.n, numeric, precision_digits)
    if spec.variant is Variant.CLASSIC:
        return certify_classic(spec.k, precision_digits, numeric)
    if spec.variant is Variant.GENERALIZED:
        return probe_generalized(spec.k, spec.ell, precision_digits)
    return certify_lalin_rogers(spec.k, numeric, precision_digits)
