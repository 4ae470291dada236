"""
composable-qm command line
verify, solve, star, gns and witness subcommands. JSON reports go to stdout, a human summary and
logs to stderr. Exit code 0 iff every check in the report passed.
"""

import dataclasses
import json
import logging
import sys
import time
from fractions import Fraction
from functools import wraps
from typing import Optional

import click

from composability import check_composed_leibniz, check_composition_law, check_monoid
from config import get_config
from errors import ComposableError
from gns_norm import (
    State, density_rank, gns_construct, hyperbolic_cstar_witness, maximally_mixed_state, pure_state,
    random_complex_matrices, random_state, representation_errors,
)
from identities import FAIL, IDENTITIES, PASS, IdentityReport, applicable_identities, run_suite
from matrices import from_json
from phase_space import format_polynomial
from poly_parser import parse_poly, parse_scalar
from realizations import (
    corrupt_alpha_scale, elliptic_pair, hyperbolic_pair, moyal_alpha, moyal_sigma, moyal_star,
    moyal_pair, parabolic_pair, parabolic_symmetric_pair, with_x,
)
from report_notifier import log_errors, log_performance, notifier
from sampling import Sampler
from solver import (
    derive_four_product_coefficients, derive_single_product, derive_two_product_coefficients,
    reduce_vanishing_cases,
)

logger = logging.getLogger(__name__)

EXPECTED = (ComposableError, click.ClickException, click.exceptions.Exit)
CLASSES = ('elliptic', 'hyperbolic', 'hyperbolic-split', 'parabolic', 'parabolic-symmetric', 'moyal')
LAW_CHECKS = {
    'composition-law': check_composition_law,
    'composed-leibniz': check_composed_leibniz,
    'monoid': check_monoid,
}


@dataclasses.dataclass
class Report:
    command: str
    seed: Optional[int] = None
    checks: list = dataclasses.field(default_factory=list)
    extra: dict = dataclasses.field(default_factory=dict)
    wall_time: Optional[float] = None
    schema_version: int = get_config().REPORT_SCHEMA_VERSION

    @property
    def status(self):
        return PASS if all(check['status'] == PASS for check in self.checks) else FAIL

    @property
    def passed(self):
        return self.status == PASS

    def to_dict(self, timing=False):
        result = dict(self.extra)
        result.update({
            'schema_version': self.schema_version,
            'command': self.command,
            'seed': self.seed,
            'checks': self.checks,
            'status': self.status,
        })
        if timing and self.wall_time is not None:
            result['wall_time'] = round(self.wall_time, 3)
        return result

    def to_json(self, timing=False):
        return json.dumps(self.to_dict(timing), sort_keys=True, indent=2, ensure_ascii=False)


# ===== HELPERS =====

def configure_logging(verbose=False):
    level = logging.DEBUG if verbose else getattr(logging, get_config().LOG_LEVEL, logging.INFO)
    logging.basicConfig(level=level, format='%(asctime)s - %(levelname)s - %(name)s - %(message)s',
                        stream=sys.stderr, force=True)


def reports_errors(func):
    """ComposableError -> one-line stderr message and exit code 1"""
    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except ComposableError as e:
            logger.debug(f"{type(e).__name__} in {func.__name__}", exc_info=True)
            click.echo(f"error: {e}", err=True)
            raise click.exceptions.Exit(1)
    return wrapper


def command_echo(ctx):
    options = [f"--{name.replace('_', '-')}={value}" for name, value in sorted(ctx.params.items())
               if value not in (None, False) and name not in ('json_path', 'trace_path')]
    return ' '.join([ctx.info_name] + options)


def parse_hbar(text):
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise click.BadParameter(f"{text!r} is not a rational number", param_hint='--hbar')
    return value


def build_pair(name, hbar=None, corrupt=None):
    settings = get_config()
    if name == 'elliptic':
        pair = elliptic_pair(parse_hbar(hbar or settings.DEFAULT_HBAR))
    elif name == 'hyperbolic':
        pair = hyperbolic_pair()
    elif name == 'hyperbolic-split':
        pair = hyperbolic_pair(split=True)
    elif name == 'parabolic':
        pair = parabolic_pair()
    elif name == 'parabolic-symmetric':
        pair = parabolic_symmetric_pair()
    else:
        pair = moyal_pair(None if hbar is None else parse_hbar(hbar))

    if corrupt == 'alpha-scale':
        pair = corrupt_alpha_scale(pair)
    elif corrupt == 'x':
        pair = with_x(pair, pair.x + 1)
    return pair


def summarize(report):
    for check in report.checks:
        mark = '✓' if check['status'] == PASS else '✗'
        line = f"{mark} {check['name']} [{check.get('realization', '')}] {check.get('samples', 0)} samples"
        if check.get('max_error') is not None:
            line += f", max error {check['max_error']:.3e}"
        click.echo(line, err=True)
        if check.get('counterexample'):
            counterexample = check['counterexample']
            click.echo(f"    counterexample ({counterexample['part']}):", err=True)
            click.echo(f"      inputs: {json.dumps(counterexample['inputs'], ensure_ascii=False)}", err=True)
            click.echo(f"      lhs:    {json.dumps(counterexample['lhs'], ensure_ascii=False)}", err=True)
            click.echo(f"      rhs:    {json.dumps(counterexample['rhs'], ensure_ascii=False)}", err=True)
    if report.wall_time is not None:
        click.echo(f"{report.status.upper()} in {report.wall_time:.2f}s", err=True)
    else:
        click.echo(report.status.upper(), err=True)


def emit(ctx, report, json_path=None, timing=False, stdout=True):
    """Print the report, remember it for run(), and exit non-zero on failure"""
    text = report.to_json(timing)
    if stdout:
        click.echo(text)
    if json_path:
        with open(json_path, 'w', encoding='utf-8') as handle:
            handle.write(text + '\n')
    summarize(report)
    notifier.notify_report(report.to_dict())
    if isinstance(ctx.obj, dict):
        ctx.obj['report'] = report
    if not report.passed:
        ctx.exit(1)


# ===== COMMANDS =====

@click.group()
@click.option('-v', '--verbose', is_flag=True, help='Debug logging on stderr')
@click.pass_context
def cli(ctx, verbose):
    """Exact verification of two-product composability (Lie-Jordan) structures"""
    configure_logging(verbose)
    ctx.ensure_object(dict)


@cli.command()
@click.option('--class', 'class_name', type=click.Choice(CLASSES), default='elliptic', show_default=True)
@click.option('--identity', type=click.Choice(sorted(IDENTITIES) + sorted(LAW_CHECKS) + ['all']),
              default=None, help='Single check; default runs composition law, monoid and all identities')
@click.option('--samples', type=int, default=None, help='Samples per check')
@click.option('--seed', type=int, default=None, envvar='COMPOSABLE_QM_SEED',
              help='Random seed (env COMPOSABLE_QM_SEED)')
@click.option('--hbar', default=None, help='Rational hbar; Moyal stays formal when omitted')
@click.option('--corrupt', type=click.Choice(['alpha-scale', 'x']), default=None,
              help='Negative control: rescale alpha or shift x')
@click.option('--timing', is_flag=True, help='Include wall time in the JSON report')
@click.option('--json', 'json_path', type=click.Path(dir_okay=False), default=None,
              help='Also write the report to this file')
@click.pass_context
@log_errors(context='verify', expected=EXPECTED)
@log_performance(threshold_seconds=120.0)
@reports_errors
def verify(ctx, class_name, identity, samples, seed, hbar, corrupt, timing, json_path):
    """Check composition laws and algebraic identities on random samples"""
    settings = get_config()
    seed = settings.DEFAULT_SEED if seed is None else seed
    pair = build_pair(class_name, hbar, corrupt)
    logger.info(f"Verifying {pair.name} (x = {pair.x}) with seed {seed}")
    start = time.perf_counter()

    reports = []
    if identity is None:
        reports.append(check_composition_law(pair, samples, seed, settings))
        reports.append(check_monoid(pair, samples, seed, settings))
        reports.extend(run_suite(pair, None, samples, seed, settings))
    elif identity == 'all':
        reports.extend(run_suite(pair, applicable_identities(pair), samples, seed, settings))
    elif identity in LAW_CHECKS:
        reports.append(LAW_CHECKS[identity](pair, samples, seed, settings))
    else:
        if identity not in applicable_identities(pair):
            raise click.UsageError(f"{identity} does not apply to the {class_name} class")
        reports.extend(run_suite(pair, [identity], samples, seed, settings))

    report = Report(command_echo(ctx), seed, [r.to_dict() for r in reports],
                    extra={'realization': pair.name, 'composition_class': pair.composition_class.value})
    report.wall_time = time.perf_counter() - start
    emit(ctx, report, json_path, timing)


@cli.command()
@click.option('--system', type=click.Choice(['two-product', 'four-product', 'single-product']),
              default='two-product', show_default=True)
@click.option('--assume', type=click.Choice(['tau0', 'alpha0']), default=None,
              help='Vanishing product for the four-product reduction')
@click.option('--trace', 'trace_path', type=click.Path(dir_okay=False), default=None,
              help='Write the derivation trace to this file')
@click.option('--json', 'json_path', type=click.Path(dir_okay=False), default=None)
@click.pass_context
@log_errors(context='solve', expected=EXPECTED)
@reports_errors
def solve(ctx, system, assume, trace_path, json_path):
    """Derive the bipartite product coefficients symbolically"""
    if assume and system != 'four-product':
        raise click.UsageError('--assume applies to --system four-product only')

    if system == 'two-product':
        result = derive_two_product_coefficients()
    elif system == 'four-product':
        result = derive_four_product_coefficients()
    else:
        result = derive_single_product()

    trace = result.pop('trace')
    checks = []
    if system == 'single-product':
        checks.append(_check('inconsistency', system, not result['consistent']))
    else:
        checks.append(_check('round-trip', system, result['round_trip']))
    if assume:
        result['reduction'] = reduce_vanishing_cases(assume)
        checks.append(_check('nontrivial-branch', assume, result['reduction']['reduced_family'] is not None))

    if trace_path:
        with open(trace_path, 'w', encoding='utf-8') as handle:
            json.dump(trace, handle, sort_keys=True, indent=2, ensure_ascii=False)
        logger.info(f"Wrote {len(trace)} trace steps to {trace_path}")

    emit(ctx, Report(command_echo(ctx), None, checks, extra=result), json_path)


def _check(name, realization, ok):
    return IdentityReport(name, realization, samples=1, status=PASS if ok else FAIL).to_dict()


@cli.command()
@click.argument('f')
@click.argument('g')
@click.option('--hbar', default=None, help='Rational hbar; formal h when omitted')
@click.option('--product', type=click.Choice(['star', 'alpha', 'sigma']), default='star', show_default=True)
@click.pass_context
@reports_errors
def star(ctx, f, g, hbar, product):
    """Print F * G (or the Moyal bracket / symmetrized product) for two polynomials"""
    left, right = parse_poly(f), parse_poly(g)
    dimension = max(left.dimension, right.dimension)
    left, right = left.with_dimension(dimension), right.with_dimension(dimension)
    operation = {'star': moyal_star, 'alpha': moyal_alpha, 'sigma': moyal_sigma}[product]
    result = operation(left, right, hbar=None if hbar is None else parse_hbar(hbar))
    text = format_polynomial(result)
    click.echo(text)
    ctx.obj['report'] = Report(command_echo(ctx), extra={'result': text})


@cli.command()
@click.option('--dim', type=click.IntRange(min=1), default=2, show_default=True, help='Matrix size n of M_n')
@click.option('--state', 'state_spec', default='random', show_default=True,
              help="'pure', 'mixed', 'random' or a JSON file with density matrix rows")
@click.option('--rank', type=click.IntRange(min=1), default=None, help='Rank of a random state')
@click.option('--samples', type=int, default=None, help='Random matrices A tested against the representation')
@click.option('--seed', type=int, default=None, envvar='COMPOSABLE_QM_SEED')
@click.option('--json', 'json_path', type=click.Path(dir_okay=False), default=None)
@click.pass_context
@log_errors(context='gns', expected=EXPECTED)
@reports_errors
def gns(ctx, dim, state_spec, rank, samples, seed, json_path):
    """GNS representation of M_n from a state, with numeric consistency checks"""
    settings = get_config()
    seed = settings.DEFAULT_SEED if seed is None else seed
    samples = settings.DEFAULT_SAMPLES if samples is None else samples
    sampler = Sampler(seed, settings)

    state = _load_state(state_spec, dim, rank, sampler)
    representation = gns_construct(state, settings.RANK_TOLERANCE)
    elements = random_complex_matrices(sampler, state.n, max(samples, 1))
    errors = representation_errors(representation, state, elements)

    realization = f"M{state.n}"
    tolerances = {
        'phi_error': settings.STATE_TOLERANCE,
        'multiplicativity_error': settings.STATE_TOLERANCE,
        'star_error': settings.STATE_TOLERANCE,
        'cstar_error': settings.NORM_TOLERANCE,
        'norm_bound_error': settings.NORM_TOLERANCE,
    }
    checks = []
    for name, tolerance in tolerances.items():
        check = IdentityReport(name.replace('_error', ''), realization, samples=len(elements), seed=seed,
                               max_error=float(errors[name]))
        check.status = PASS if errors[name] <= tolerance else FAIL
        checks.append(check.to_dict())

    extra = {
        'hilbert_dim': representation.hilbert_dim,
        'gram_rank': representation.rank,
        'density_rank': density_rank(state, settings.RANK_TOLERANCE),
        'n': state.n,
    }
    emit(ctx, Report(command_echo(ctx), seed, checks, extra=extra), json_path)


def _load_state(spec, dim, rank, sampler):
    if spec == 'pure':
        return pure_state(dim)
    if spec == 'mixed':
        return maximally_mixed_state(dim)
    if spec == 'random':
        return random_state(sampler, dim, rank)
    try:
        with open(spec, encoding='utf-8') as handle:
            rows = json.load(handle)
    except (OSError, json.JSONDecodeError) as e:
        raise click.BadParameter(f"cannot read state file: {e}", param_hint='--state')
    if isinstance(rows, dict):
        rows = rows.get('density', rows.get('rows'))
    return State.from_density(from_json(rows, parse_scalar))


@cli.command()
@click.option('--json', 'json_path', type=click.Path(dir_okay=False), default=None)
@click.pass_context
@reports_errors
def witness(ctx, json_path):
    """Hyperbolic C* failure: x = 1 + j has x* x = 0 but ||x||^2 = 4"""
    result = hyperbolic_cstar_witness()
    check = _check('cstar-identity-fails', 'hyperbolic-split-matrices', not result['cstar_identity_holds'])
    emit(ctx, Report(command_echo(ctx), None, [check], extra={'witness': result}), json_path)


def run(argv):
    """Run a command line and return its Report (None if it stopped on an error)"""
    obj = {}
    cli.main(args=list(argv), prog_name='composable-qm', standalone_mode=False, obj=obj)
    return obj.get('report')


if __name__ == '__main__':
    cli()
