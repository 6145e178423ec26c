import click
import numpy as np

from . import cli
from ..distributions import ratio_law
from .decorators import reports_errors, scenario_options
from .output import format_number, write_csv
from .params import FLOAT_LIST, RANGE


@cli.command('eval', help='Evaluate the CDF or PDF of the gain ratio '
                          'g1 / max g0i on a grid.')
@reports_errors
@click.argument('kind', type=click.Choice(['cdf', 'pdf']))
@scenario_options
@click.option('--x', type=FLOAT_LIST, multiple=True,
              help='Grid points, repeatable or comma-separated.')
@click.option('--x-range', type=RANGE, default=None,
              help='Evenly spaced grid start:stop:points.')
@click.option('--output', type=click.File('w'), default='-',
              help='CSV file, standard output by default.')
def evaluate(kind, scenario, x, x_range, output):
    grid = [value for group in x for value in group]
    if x_range is not None:
        grid.extend(x_range)
    if not grid:
        raise click.UsageError('give grid points with --x or --x-range')
    law = ratio_law(scenario)
    grid = np.array(grid)
    values = law.cdf(grid) if kind == 'cdf' else law.pdf(grid)
    rows = [(format_number(point), format_number(value))
            for point, value in zip(grid, values)]
    write_csv(output, ('x', 'value'), rows)
