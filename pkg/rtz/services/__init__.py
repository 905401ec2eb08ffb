"""
rtz - Exact Zero-Location Services

Components:
- exactnum: rationals, Bernoulli numbers and polynomials, pi enclosures
- polycore: polynomials over QQ (sympy), gcd / squarefree, Sturm counting, unit-circle census
- rootfinder: Aberth-Ehrlich numeric roots with inclusion radii (cross-check)
- ramfam: the Ramanujan polynomial families and their coefficient tables
- criteria: Lakatos and Schinzel criteria, coefficient-estimate transcript
- certify: staged certification pipelines and the generalized R^(l) check
- analytic: numerical check of the zeta(2k+1) formula
"""

__version__ = "1.0.0"
__all__ = [
    'DensePoly',
    'FamilySpec',
    'Variant',
    'RamanujanTypeCertifier',
    'ClassicCertifier',
    'GeneralizedProbe',
    'certify_ramanujan_type',
    'certify_lalin_rogers',
    'certify_classic',
    'probe_generalized',
    'schinzel_criterion_check',
    'identity_5_15_check',
    'check_ramanujan_identity',
]

from .analytic import check_ramanujan_identity
from .certify import (
    ClassicCertifier,
    GeneralizedProbe,
    RamanujanTypeCertifier,
    certify_classic,
    certify_lalin_rogers,
    certify_ramanujan_type,
    probe_generalized,
)
from .criteria import identity_5_15_check, schinzel_criterion_check
from .polycore import DensePoly
from .ramfam import FamilySpec, Variant
