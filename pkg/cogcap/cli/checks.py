import click

from . import cli
from .. import settings
from ..validation import CHECK_GROUPS, run_checks
from .decorators import reports_errors, sampling_options
from .errors import SUCCESS, VALIDATION_FAILURE, generate_error
from .output import write_csv


@cli.command('validate', help='Run the closed-form versus Monte Carlo '
                              'check suite; exit 1 on any failure.')
@reports_errors
@sampling_options
@click.option('--check', type=click.Choice(list(CHECK_GROUPS)),
              multiple=True, help='Run only the given check groups.')
@click.option('--output', type=click.File('w'), default='-',
              help='Report file, standard output by default.')
def validate(mc_samples, seed, workers, check, output):
    ctx = click.get_current_context()
    results = run_checks(
        settings['MC_SAMPLES'] if mc_samples is None else mc_samples,
        settings['MC_SEED'] if seed is None else seed,
        settings['MC_WORKERS'] if workers is None else workers,
        check)
    rows = [(result.name, 'PASS' if result.passed else 'FAIL', result.detail)
            for result in results]
    write_csv(output, ('check', 'status', 'detail'), rows)
    failed = sum(not result.passed for result in results)
    if failed:
        ctx.exit(generate_error(VALIDATION_FAILURE,
                                f'{failed} of {len(results)} checks failed'))
    ctx.exit(SUCCESS.code)
