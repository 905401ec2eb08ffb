"""
rtz command line

Range scans over (k, n, ell) with exact certificates as output.

Exit codes: 0 all checks passed, 1 a mathematical check failed (witness on
stderr), 2 usage error, 3 precision or resource exhaustion.
"""

import functools
import sys
import time
from typing import Callable, List, Optional

import click
from joblib import Parallel, delayed

from rtz import __version__
from rtz.config import Config
from rtz.errors import RTZError
from rtz.logger import configure_logging, get_logger
from rtz.reports import poly_terms, render, sort_key, to_jsonable
from rtz.services.analytic import check_ramanujan_identity
from rtz.services.certify import (
    certify_classic,
    certify_ramanujan_type,
    probe_generalized,
)
from rtz.services.criteria import identity_5_15_check, schinzel_criterion_check
from rtz.services.exactnum import as_rational, bernoulli_table, convolution_identity_check
from rtz.services.ramfam import (
    FamilySpec,
    Variant,
    build_classic,
    build_generalized,
    build_H,
    build_lalin_rogers,
    build_ramanujan_type,
    coefficient_table,
    generalized_reciprocity,
)

logger = get_logger(__name__)

VERIFY_COLUMNS = ['variant', 'k', 'n', 'verdict', 'origin_multiplicity', 'circle_count',
                  'real_count', 'h_at_1', 'schinzel_min', 'failed_stage']
CLASSIC_COLUMNS = ['variant', 'k', 'verdict', 'circle_count', 'real_count', 'unit_real_count',
                   'off_circle_nonreal_count', 'squarefree']
CONJECTURE_COLUMNS = ['variant', 'k', 'ell', 'verdict', 'reciprocity', 'circle_count',
                      'real_count', 'off_circle_nonreal_count', 'squarefree']
CRITERIA_COLUMNS = ['k', 'n', 'lakatos', 'schinzel_min', 'schinzel_argmin_c',
                    'last_coefficient', 'c_constant', 'verdict']
IDENTITY_COLUMNS = ['which', 'k', 'm', 'alpha', 'lhs', 'rhs', 'residual', 'verdict']
EXPAND_COLUMNS = ['variant', 'k', 'n', 'ell', 'terms']
BERNOULLI_COLUMNS = ['index', 'value']

WHICH_ALIASES = {'zeta': 'eq1.2', 'half-sum': 'eq5.15'}


# ============================================================================
# PARAMETER TYPES
# ============================================================================

class IntRange(click.ParamType):
    """Inclusive range 'a..b' or a single integer"""

    name = 'range'

    def __init__(self, minimum: int, cap_key: Optional[str] = None):
        self.minimum = minimum
        self.cap_key = cap_key

    def convert(self, value, param, ctx):
        if isinstance(value, range):
            return value
        text = str(value).strip()
        try:
            if '..' in text:
                lo, hi = (int(part) for part in text.split('..', 1))
            else:
                lo = hi = int(text)
        except ValueError:
            self.fail(f"{value!r} is not an integer or a range a..b", param, ctx)
        if lo > hi:
            self.fail(f"empty range {text}", param, ctx)
        if lo < self.minimum:
            self.fail(f"values must be >= {self.minimum}, got {lo}", param, ctx)
        cap = getattr(Config, self.cap_key) if self.cap_key else None
        if cap is not None and hi > cap:
            self.fail(f"values must be <= {cap}, got {hi}", param, ctx)
        return range(lo, hi + 1)


class Rational(click.ParamType):
    name = 'rational'

    def convert(self, value, param, ctx):
        try:
            return as_rational(str(value))
        except (ValueError, ZeroDivisionError):
            self.fail(f"{value!r} is not a rational p/q", param, ctx)


K_RANGE = IntRange(1, 'MAX_K')
N_RANGE = IntRange(2, 'MAX_N')
ELL_RANGE = IntRange(1, 'MAX_ELL')


# ============================================================================
# SHARED PLUMBING
# ============================================================================

def output_options(func):
    """--precision, --format, --jobs, --output, --timings"""
    options = [
        click.option('--precision', type=click.IntRange(min=1), default=None,
                     help='Working precision in decimal digits (default RTZ_PRECISION_DIGITS).'),
        click.option('--format', 'fmt', type=click.Choice(['table', 'json', 'csv']),
                     default='table', show_default=True),
        click.option('--jobs', type=click.IntRange(min=1), default=None,
                     help='Parallel workers (default RTZ_JOBS).'),
        click.option('--output', type=click.Path(dir_okay=False, writable=True), default=None),
        click.option('--timings', is_flag=True, help='Record elapsed_ms per report.'),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def handles_errors(func):
    """Map library errors to exit codes"""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except RTZError as exc:
            click.echo(f"error: {exc}", err=True)
            raise click.exceptions.Exit(exc.exit_code)
    return wrapper


def timed(task: Callable, timings: bool, *args) -> dict:
    start = time.perf_counter()
    report = task(*args)
    if timings:
        report['elapsed_ms'] = round((time.perf_counter() - start) * 1000, 3)
    return report


def run_grid(task: Callable, items: List[tuple], jobs: Optional[int], timings: bool) -> List[dict]:
    jobs = jobs or Config.JOBS
    if jobs == 1 or len(items) < 2:
        reports = [timed(task, timings, *item) for item in items]
    else:
        reports = Parallel(n_jobs=jobs)(delayed(timed)(task, timings, *item) for item in items)
    return sorted(reports, key=sort_key)


def emit(ctx, command: str, reports: List[dict], fmt: str, columns: List[str],
         output: Optional[str]):
    text = render(fmt, command, reports, columns)
    if output:
        with open(output, 'w', encoding='utf-8', newline='') as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)
    failing = [r for r in reports if r.get('passed') is False]
    if failing:
        first = failing[0]
        click.echo(f"check failed: {first.get('family') or first.get('which')} "
                   f"witness={first.get('witness')}", err=True)
        ctx.exit(1)


def _precision(value: Optional[int]) -> int:
    return value or Config.PRECISION_DIGITS


# ============================================================================
# TASKS (module level so worker processes can import them)
# ============================================================================

def verify_task(k: int, n: int, numeric: bool, precision: int) -> dict:
    certificate = certify_ramanujan_type(k, n, numeric=numeric, precision_digits=precision)
    report = {'kind': 'certificate', **to_jsonable(certificate)}
    report['passed'] = certificate.passed
    return report


def classic_task(k: int, numeric: bool, precision: int) -> dict:
    result = certify_classic(k, precision_digits=precision, numeric=numeric)
    report = {'kind': 'classic', **to_jsonable(result)}
    report['passed'] = result.passed
    return report


def conjecture_task(k: int, ell: int, precision: int) -> dict:
    result = probe_generalized(k, ell, precision_digits=precision)
    report = {'kind': 'conjecture', **to_jsonable(result)}
    report['passed'] = result.passed
    return report


def criteria_task(k: int, n: int, chain_c) -> dict:
    table = coefficient_table(k, n)
    result = schinzel_criterion_check(table, n, chain_c=chain_c)
    passed = result.schinzel_holds and result.schinzel_strict
    return {
        'kind': 'criteria',
        'family': FamilySpec(Variant.RAMANUJAN_TYPE, k, n=n).to_dict(),
        'criteria': to_jsonable(result),
        'schinzel_min': str(result.schinzel_min),
        'schinzel_argmin_c': str(result.schinzel_argmin_c),
        'last_coefficient': str(abs(table.last)),
        'lakatos': f"{result.lakatos_holds}/{result.lakatos_strict}",
        'c_constant': str(result.c_constant_value),
        'verdict': 'SchinzelHolds' if passed else 'SchinzelFails',
        'passed': passed,
    }


def zeta_task(k: int, alpha: str, terms: int, precision: int, diagnostic: bool) -> dict:
    result = check_ramanujan_identity(k, alpha, terms, precision, diagnostic=diagnostic)
    report = {'kind': 'identity', 'which': 'eq1.2', **to_jsonable(result)}
    report['alpha'] = alpha
    report['verdict'] = 'Holds' if result.within_bound else 'Fails'
    report['passed'] = result.within_bound
    return report


def half_sum_task(k: int) -> dict:
    result = identity_5_15_check(k)
    report = {'kind': 'identity', 'which': 'eq5.15', **to_jsonable(result)}
    report['equal'] = result.equal
    report['signed_equal'] = result.signed_equal
    report['bracketed_equal'] = result.bracketed_equal
    report['verdict'] = 'Holds' if result.equal else 'Fails'
    report['passed'] = result.equal
    return report


def convolution_task(m: int, a, b, diagnostic: bool) -> dict:
    result = convolution_identity_check(m, a, b, diagnostic=diagnostic)
    report = {'kind': 'identity', 'which': 'convolution', **to_jsonable(result)}
    report['equal'] = result.equal
    report['printed_equal'] = result.printed_equal
    report['verdict'] = 'Holds' if result.equal else 'Fails'
    report['passed'] = result.equal
    return report


def expand_task(variant: str, k: int, n: Optional[int], ell: Optional[int]) -> dict:
    report = {'kind': 'expansion', 'variant': variant, 'k': k, 'n': n, 'ell': ell}
    if variant == 'classic':
        report['terms'] = poly_terms(build_classic(k))
    elif variant == 'lalin-rogers':
        report['terms'] = poly_terms(build_lalin_rogers(k))
    elif variant == 'ramanujan-type':
        report['terms'] = poly_terms(build_ramanujan_type(k, n))
    elif variant == 'generalized':
        report['terms'] = poly_terms(build_generalized(k, ell), var='Z')
        report['reciprocity'] = generalized_reciprocity(k, ell)
    else:
        H, table = build_H(k, n)
        report['terms'] = poly_terms(H)
        # both indexings: j = 0..k-1 here, j + 1 in the original sum over j = 1..k
        report['A'] = [
            {'j': j, 'source_j': j + 1, 'exponent': 2 * k - 2 - 2 * j, 'value': str(a)}
            for j, a in enumerate(table.A)
        ]
    return report


# ============================================================================
# COMMANDS
# ============================================================================

@click.group()
@click.version_option(__version__, prog_name='rtz')
@click.option('--log-level', default=None,
              type=click.Choice(['DEBUG', 'INFO', 'WARNING', 'ERROR'], case_sensitive=False),
              help='Logging level on stderr (default RTZ_LOG_LEVEL).')
@handles_errors
def cli(log_level):
    """Exact zero-location checks for Ramanujan-type polynomials."""
    Config.validate()
    configure_logging((log_level or Config.LOG_LEVEL).upper())


@cli.command()
@click.option('--k', 'ks', type=K_RANGE, required=True)
@click.option('--n', 'ns', type=N_RANGE, required=True)
@click.option('--numeric/--no-numeric', default=False, help='Attach numeric roots of H.')
@output_options
@click.pass_context
@handles_errors
def verify(ctx, ks, ns, numeric, precision, fmt, jobs, output, timings):
    """Certify R_{2k+1,n}: double root at 0, other roots simple on |z| = 1/n."""
    items = [(k, n, numeric, _precision(precision)) for k in ks for n in ns]
    reports = run_grid(verify_task, items, jobs, timings)
    emit(ctx, 'verify', reports, fmt, VERIFY_COLUMNS, output)


@cli.command()
@click.option('--k', 'ks', type=K_RANGE, required=True)
@click.option('--numeric/--no-numeric', default=True, help='Attach numeric roots of R.')
@output_options
@click.pass_context
@handles_errors
def classic(ctx, ks, numeric, precision, fmt, jobs, output, timings):
    """Exact real / unit-circle partition of the roots of R_{2k+1}."""
    items = [(k, numeric, _precision(precision)) for k in ks]
    reports = run_grid(classic_task, items, jobs, timings)
    emit(ctx, 'classic', reports, fmt, CLASSIC_COLUMNS, output)


@cli.command()
@click.option('--k', 'ks', type=K_RANGE, required=True)
@click.option('--ell', 'ells', type=ELL_RANGE, required=True)
@output_options
@click.pass_context
@handles_errors
def conjecture(ctx, ks, ells, precision, fmt, jobs, output, timings):
    """Probe the unit-circle conjecture for R^(l)."""
    items = [(k, ell, _precision(precision)) for k in ks for ell in ells]
    reports = run_grid(conjecture_task, items, jobs, timings)
    emit(ctx, 'conjecture', reports, fmt, CONJECTURE_COLUMNS, output)


@cli.command()
@click.option('--k', 'ks', type=K_RANGE, required=True)
@click.option('--n', 'ns', type=N_RANGE, required=True)
@click.option('--c', 'chain_c', type=Rational(), default=None,
              help='Also transcribe the coefficient-estimate chain at this c.')
@output_options
@click.pass_context
@handles_errors
def criteria(ctx, ks, ns, chain_c, precision, fmt, jobs, output, timings):
    """Lakatos and Schinzel criteria on the coefficients of H."""
    items = [(k, n, chain_c) for k in ks for n in ns]
    reports = run_grid(criteria_task, items, jobs, timings)
    emit(ctx, 'criteria', reports, fmt, CRITERIA_COLUMNS, output)


@cli.command()
@click.option('--which', required=True,
              type=click.Choice(['eq1.2', 'eq5.15', 'convolution', *WHICH_ALIASES]),
              help='eq1.2 (alias zeta), eq5.15 (alias half-sum) or convolution.')
@click.option('--k', 'ks', type=K_RANGE, default='1')
@click.option('--alpha', 'alphas', multiple=True, default=('pi',), show_default=True,
              help="pi, 2pi, pi/2 or a rational; repeatable.")
@click.option('--terms', type=click.IntRange(min=1), default=300, show_default=True)
@click.option('--m', 'ms', type=IntRange(1), default='1')
@click.option('--a', type=Rational(), default='0')
@click.option('--b', type=Rational(), default='0')
@click.option('--diagnostic', is_flag=True, help='Also evaluate the forms as printed in the literature.')
@output_options
@click.pass_context
@handles_errors
def identity(ctx, which, ks, alphas, terms, ms, a, b, diagnostic,
             precision, fmt, jobs, output, timings):
    """Check the zeta(2k+1) formula, the half-argument sum or the convolution identity."""
    which = WHICH_ALIASES.get(which, which)
    if which == 'eq1.2':
        items = [(k, alpha, terms, _precision(precision), diagnostic) for k in ks for alpha in alphas]
        reports = run_grid(zeta_task, items, jobs, timings)
    elif which == 'eq5.15':
        reports = run_grid(half_sum_task, [(k,) for k in ks], jobs, timings)
    else:
        reports = run_grid(convolution_task, [(m, a, b, diagnostic) for m in ms], jobs, timings)
    emit(ctx, 'identity', reports, fmt, IDENTITY_COLUMNS, output)


@cli.command()
@click.option('--variant', type=click.Choice(
    ['ramanujan-type', 'classic', 'lalin-rogers', 'generalized', 'H']),
    default='ramanujan-type', show_default=True)
@click.option('--k', 'ks', type=K_RANGE, required=True)
@click.option('--n', 'ns', type=N_RANGE, default='2')
@click.option('--ell', 'ells', type=ELL_RANGE, default='1')
@output_options
@click.pass_context
@handles_errors
def expand(ctx, variant, ks, ns, ells, precision, fmt, jobs, output, timings):
    """Print exact coefficient tables."""
    uses_n = variant in ('ramanujan-type', 'H')
    uses_ell = variant == 'generalized'
    items = [
        (variant, k, n if uses_n else None, ell if uses_ell else None)
        for k in ks
        for n in (ns if uses_n else [None])
        for ell in (ells if uses_ell else [None])
    ]
    reports = run_grid(expand_task, items, jobs, timings)
    emit(ctx, 'expand', reports, fmt, EXPAND_COLUMNS, output)


@cli.command()
@click.option('--max', 'max_index', type=click.IntRange(min=0), required=True)
@click.option('--format', 'fmt', type=click.Choice(['table', 'json', 'csv']),
              default='table', show_default=True)
@click.option('--output', type=click.Path(dir_okay=False, writable=True), default=None)
@click.pass_context
@handles_errors
def bernoulli(ctx, max_index, fmt, output):
    """B_0 .. B_max with B_1 = -1/2."""
    reports = [
        {'kind': 'bernoulli', 'index': i, 'value': str(value)}
        for i, value in enumerate(bernoulli_table(max_index))
    ]
    emit(ctx, 'bernoulli', reports, fmt, BERNOULLI_COLUMNS, output)


def main(args=None):
    """Console entry point; errors raised while click parses options land here"""
    try:
        cli(args=args, prog_name='rtz')
    except RTZError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(exc.exit_code)


if __name__ == '__main__':
    sys.exit(main())
