import logging
import sys
from functools import wraps

import click

from src.config import Config
from src.services import flat_aut, flat_group, knot_invariants, nil_aut, nil_group
from src.services.excel_export import generate_verification_workbook
from src.services.expressions import ExpressionError
from src.services.flat_aut import AutomorphismError, WeightOrbitError
from src.services.knot_invariants import FiniteModuleError
from src.services.nil_aut import KStructureError
from src.services.nil_group import GammaParameterError
from src.services.reports import (
    build_report,
    default_report_path,
    render,
    render_result,
    write_text,
)
from src.services.verification import (
    ConfigError,
    RunConfig,
    exit_code,
    gamma_claims,
    run_suite,
    verify_all,
)

logger = logging.getLogger('solvknot')

USAGE_ERROR = 2

# Bad input: unparseable words, invalid parameters, bad run configuration.
INPUT_ERRORS = (ExpressionError, GammaParameterError, ConfigError)
# Query arguments that parse but do not meet the query's precondition.
PRECONDITION_ERRORS = (AutomorphismError, WeightOrbitError, KStructureError, FiniteModuleError)


def _exit_on(errors: tuple):
    def decorator(f):
        @wraps(f)
        def decorated_function(*args, **kwargs):
            try:
                return f(*args, **kwargs)
            except errors as exc:
                click.echo(f'error: {exc}', err=True)
                sys.exit(USAGE_ERROR)
        return decorated_function
    return decorator


usage_errors = _exit_on(INPUT_ERRORS)
query_errors = _exit_on(INPUT_ERRORS + PRECONDITION_ERRORS)


def _emit(ctx, title: str, data):
    click.echo(render_result(title, data, ctx.obj['format']), nl=False)


@click.group()
@click.option('--log-level', default=None, help='Logging level (default from SOLVKNOT_LOG_LEVEL).')
@click.option('--format', 'fmt', type=click.Choice(['json', 'md']), default=None,
              help='Output format for query commands.')
@click.pass_context
@usage_errors
def cli(ctx, log_level, fmt):
    """Exact verification of the G(+-) and pi(e, eta) knot group families"""
    logging.basicConfig(level=(log_level or Config.LOG_LEVEL).upper(), stream=sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s')
    config = RunConfig.defaults()
    ctx.obj = {'config': config, 'format': fmt or config.output_format}


@cli.command()
@click.option('--config', 'config_path', type=click.Path(dir_okay=False), default=None,
              help='Flat KEY=value run configuration file.')
@click.option('--format', 'fmt', type=click.Choice(['json', 'md', 'markdown']), default=None)
@click.option('--output', type=click.Path(dir_okay=False), default=None,
              help='Write the report here instead of stdout.')
@click.option('--save', is_flag=True, help='Also write the report under SOLVKNOT_REPORT_DIR.')
@click.option('--xlsx', type=click.Path(dir_okay=False), default=None,
              help='Also write a Claims/Verdicts workbook.')
@click.option('--radius', type=int, default=None, help='Search radius for bounded checks.')
@click.option('--seed', type=int, default=None, help='Seed of the random oracles.')
@click.option('--gamma-params', default=None, help='Comma separated e:eta pairs.')
@click.pass_context
@usage_errors
def verify(ctx, config_path, fmt, output, save, xlsx, radius, seed, gamma_params):
    """Run every verification suite and print the claim report"""
    config = ctx.obj['config']
    if config_path:
        config = RunConfig.from_file(config_path, base=config)
    config = config.with_overrides(output_format=fmt, search_radius=radius, random_seed=seed,
                                   gamma_params=gamma_params)
    records = verify_all(config)
    report = build_report(records, config)
    text = render(report, config.output_format)
    if output:
        write_text(output, text)
    else:
        click.echo(text, nl=False)
    if save:
        path = write_text(default_report_path(config.output_format), text)
        logger.info('report saved to %s', path)
    if xlsx:
        generate_verification_workbook(report, xlsx)
    ctx.exit(exit_code(records))


# G6 queries ------------------------------------------------------------------

@cli.group()
def g6():
    """Queries on G6 and its automorphisms"""


@g6.command('out-table')
@click.option('--full', is_flag=True, help='Include the multiplication table.')
@click.pass_context
@usage_errors
def g6_out_table(ctx, full):
    data = flat_aut.out_g6_summary()
    if full:
        data['table'] = flat_aut.out_g6().to_json()
    _emit(ctx, 'Out(G6)', data)


@g6.command('centralizer')
@click.argument('expression')
@click.pass_context
@query_errors
def g6_centralizer(ctx, expression):
    phi = flat_aut.aut_from_word(expression)
    _emit(ctx, f'centralizer of {expression}', flat_aut.describe(flat_aut.centralizer(phi)))


@g6.command('normalizer')
@click.argument('expression')
@click.pass_context
@query_errors
def g6_normalizer(ctx, expression):
    phi = flat_aut.aut_from_word(expression)
    witness = flat_aut.inverting_element(phi)
    data = flat_aut.describe(flat_aut.normalizer_cyclic(phi))
    data['inverting_witness'] = witness.to_json() if witness is not None else None
    _emit(ctx, f'normalizer of <{expression}>', data)


@g6.command('orbit')
@click.argument('family')
@click.argument('word')
@click.pass_context
@query_errors
def g6_orbit(ctx, family, word):
    """Weight orbit normal form of g t for g in the commutator subgroup"""
    data = flat_aut.weight_orbit_normal_form(flat_group.g6_eval(word), family)
    data['n'] = data['lambda']
    data['strict_normal_form'] = flat_aut.orbit_normal_form(data['lambda'], family)
    _emit(ctx, f'weight orbit of {word}', data)


@g6.command('meridianal')
@click.argument('expression')
@click.pass_context
@query_errors
def g6_meridianal(ctx, expression):
    phi = flat_aut.aut_from_word(expression)
    table = flat_aut.out_g6()
    _emit(ctx, f'meridianal test for {expression}', {
        'expression': expression,
        'meridianal': flat_aut.is_meridianal(phi),
        'outer_class': table.label(table.class_of(phi)),
        'h1_action': flat_aut.h1_action(phi).to_json(),
    })


@g6.command('order')
@click.argument('expression')
@click.pass_context
@query_errors
def g6_order(ctx, expression):
    phi = flat_aut.aut_from_word(expression)
    table = flat_aut.out_g6()
    _emit(ctx, f'order of {expression}', {
        'expression': expression,
        'order': flat_aut.format_order(flat_aut.element_order(phi)),
        'outer_order': table.group.element_order(table.class_of(phi)),
    })


# Gamma queries ---------------------------------------------------------------

@cli.group()
@click.option('--e', 'e', type=int, required=True)
@click.option('--eta', type=int, required=True)
@click.pass_context
@usage_errors
def gamma(ctx, e, eta):
    """Queries on Gamma(e, eta) and its automorphisms"""
    ctx.obj['gamma'] = nil_group.gamma_build(e, eta)


@gamma.command('out-table')
@click.pass_context
@usage_errors
def gamma_out_table(ctx):
    group = ctx.obj['gamma']
    _emit(ctx, f'Out({group.label})', nil_aut.out_gamma(group, Config.OUT_CLOSURE_BOUND).to_json())


@gamma.command('meridianal')
@click.argument('expression', required=False)
@click.pass_context
@query_errors
def gamma_meridianal(ctx, expression):
    """Meridianal classes, or the meridianal test for one automorphism"""
    group = ctx.obj['gamma']
    if expression is None:
        _emit(ctx, f'meridianal classes of {group.label}', nil_aut.meridianal_classes_gamma(group))
        return
    phi = nil_aut.aut_from_word(group, expression)
    _emit(ctx, f'meridianal test for {expression}', {
        'expression': expression,
        'meridianal': nil_aut.is_meridianal_gamma(phi),
        'h1_action': nil_aut.h1_action(phi).to_json(),
    })


@gamma.command('orbit')
@click.argument('word')
@click.option('--radius', type=int, default=None)
@click.pass_context
@query_errors
def gamma_orbit(ctx, word, radius):
    group = ctx.obj['gamma']
    radius = radius or ctx.obj['config'].search_radius
    data = nil_aut.weight_orbit_normal_form_gamma(group, nil_group.gamma_eval(group, word), radius)
    _emit(ctx, f'weight orbit of {word}', data)


@gamma.command('k')
@click.argument('m', type=int)
@click.argument('n', type=int)
@click.pass_context
@query_errors
def gamma_k(ctx, m, n):
    """Solved parameters of k[m,n] and, when integral, its generator images"""
    group = ctx.obj['gamma']
    data = nil_aut.k_parameter_report(group, m, n)
    if data['integral']:
        data['automorphism'] = nil_aut.k_make(group, m, n).to_json()
    _emit(ctx, f'k[{m},{n}] in {group.label}', data)


@gamma.command('verify')
@click.pass_context
@usage_errors
def gamma_verify(ctx):
    """Run the suite of one Gamma(e, eta)"""
    group, config = ctx.obj['gamma'], ctx.obj['config']
    config = config.with_overrides(gamma_params=[group.key])
    records = run_suite(f'gamma({group.e},{group.eta})', lambda: gamma_claims(group.e, group.eta, config))
    click.echo(render(build_report(records, config), ctx.obj['format']), nl=False)
    ctx.exit(exit_code(records))


# Knot verdicts ---------------------------------------------------------------

@cli.command()
@click.pass_context
@usage_errors
def verdicts(ctx):
    """Doubly slice verdicts for the configured knot groups"""
    descriptors = knot_invariants.default_descriptors(ctx.obj['config'].gamma_params)
    _emit(ctx, 'doubly slice verdicts', knot_invariants.verdict_table(descriptors))


@cli.command('doubly-slice')
@click.argument('descriptor')
@click.pass_context
@query_errors
def doubly_slice(ctx, descriptor):
    knot = knot_invariants.parse_descriptor(descriptor)
    verdict = knot_invariants.doubly_slice_verdict(knot)
    data = verdict.to_json()
    data['verdict'] = 'doubly slice' if verdict.doubly_slice else 'not doubly slice'
    _emit(ctx, f'{knot.label}', data)


if __name__ == '__main__':
    cli()
