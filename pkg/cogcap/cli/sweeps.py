import logging
import os
import re

import click

from . import cli
from .. import settings
from ..capacity import awgn_capacity, capacity
from ..distributions import has_closed_form
from ..models import Constraint
from ..presets import PRESETS, Curve, alpha_grid_db
from ..units import db_to_linear
from .decorators import reports_errors, sampling_options, scenario_options
from .output import format_number, write_csv
from .params import RANGE


logger = logging.getLogger(__name__)

FIGURE_HEADER = ('curve', 'alpha_db', 'capacity_bits_per_hz', 'gamma0',
                 'std_error', 'awgn_bits_per_hz')


def _uses_monte_carlo(constraint, scenario):
    return (constraint is Constraint.PEAK
            and not (scenario.is_awgn or has_closed_form(scenario)))


def _sampling(mc_samples, seed, workers):
    return {'samples': settings['MC_SAMPLES'] if mc_samples is None
            else mc_samples,
            'seed': settings['MC_SEED'] if seed is None else seed,
            'workers': settings['MC_WORKERS'] if workers is None
            else workers}


def _fallback_comment(scenario, sampling):
    return (f'{scenario}: no closed-form ratio law; Monte Carlo estimate '
            f'with {sampling["samples"]} draws, seed {sampling["seed"]}')


def sweep(curve, alphas_db, sampling):
    """
    Yield (alpha_db, CapacityResult, AWGN capacity) along the grid.
    """
    for alpha_db in alphas_db:
        alpha = db_to_linear(alpha_db)
        result = capacity(curve.query(alpha), **sampling)
        yield alpha_db, result, awgn_capacity(alpha)


def _alphas(alpha_db, alpha_db_range):
    if alpha_db is not None and alpha_db_range is not None:
        raise click.UsageError('give either --alpha-db or --alpha-db-range')
    if alpha_db is not None:
        return [alpha_db]
    if alpha_db_range is not None:
        return alpha_db_range
    return alpha_grid_db()


@cli.command('capacity', help='Sweep the ergodic capacity over alpha '
                              '(dB) for one scenario.')
@reports_errors
@scenario_options
@click.option('--constraint', type=click.Choice(['avg', 'peak']),
              required=True, help='Average or peak received-power '
                                  'constraint at the primary receivers.')
@click.option('--alpha-db', type=float, default=None,
              help='Single interference-to-noise ratio in dB.')
@click.option('--alpha-db-range', type=RANGE, default=None,
              help='Grid start:stop:points in dB.')
@click.option('--c-db', type=float, default=0.0, show_default=True,
              help='Relative link power E{g1} / E{g0} in dB.')
@sampling_options
@click.option('--output', type=click.File('w'), default='-',
              help='CSV file, standard output by default.')
def capacity_sweep(scenario, constraint, alpha_db, alpha_db_range, c_db,
                   mc_samples, seed, workers, output):
    constraint = Constraint(constraint)
    alphas_db = _alphas(alpha_db, alpha_db_range)
    curve = Curve(str(scenario), constraint, scenario, c_db)
    sampling = _sampling(mc_samples, seed, workers)
    monte_carlo = _uses_monte_carlo(constraint, scenario)
    header = ['alpha_db', 'capacity_bits_per_hz']
    if constraint is Constraint.AVERAGE:
        header.append('gamma0')
    if monte_carlo:
        header.append('std_error')
    header.append('awgn_bits_per_hz')
    comments = []
    if monte_carlo:
        comments.append(_fallback_comment(scenario, sampling))
    rows = []
    for point, result, awgn in sweep(curve, alphas_db, sampling):
        row = [format_number(point), format_number(result.capacity)]
        if constraint is Constraint.AVERAGE:
            row.append(format_number(result.gamma0))
        if monte_carlo:
            row.append(format_number(result.std_error))
        row.append(format_number(awgn))
        rows.append(row)
    write_csv(output, header, rows, comments)


def _slug(label):
    return re.sub(r'[^A-Za-z0-9.+-]+', '_', label).strip('_')


def _figure_rows(preset, alphas_db, sampling):
    for curve in preset.curves:
        logger.info('%s: sweeping %s', preset.name, curve.label)
        rows = []
        for point, result, awgn in sweep(curve, alphas_db, sampling):
            rows.append((curve.label, format_number(point),
                         format_number(result.capacity),
                         format_number(result.gamma0),
                         format_number(result.std_error),
                         format_number(awgn)))
        yield curve, rows


@cli.command('figure', help='Write the capacity curves behind a figure '
                            'as CSV.')
@reports_errors
@click.argument('name', type=click.Choice(list(PRESETS)))
@click.option('--alpha-db-range', type=RANGE, default=None,
              help='Grid start:stop:points in dB.')
@sampling_options
@click.option('--output', type=click.Path(writable=True), default='-',
              help='CSV file, or a directory (trailing /) for one file '
                   'per curve; standard output by default.')
def figure(name, alpha_db_range, mc_samples, seed, workers, output):
    preset = PRESETS[name]
    alphas_db = _alphas(None, alpha_db_range)
    sampling = _sampling(mc_samples, seed, workers)
    comments = [f'{preset.name}: {preset.title}']
    comments.extend(_fallback_comment(curve.scenario, sampling)
                    for curve in preset.curves
                    if _uses_monte_carlo(curve.constraint, curve.scenario))

    if output != '-' and (output.endswith(('/', os.sep))
                          or os.path.isdir(output)):
        os.makedirs(output, exist_ok=True)
        for curve, rows in _figure_rows(preset, alphas_db, sampling):
            path = os.path.join(output, f'{preset.name}_{_slug(curve.label)}'
                                        '.csv')
            curve_comments = [f'{preset.name}: {curve.label}']
            if _uses_monte_carlo(curve.constraint, curve.scenario):
                curve_comments.append(_fallback_comment(curve.scenario,
                                                        sampling))
            with open(path, 'w') as stream:
                write_csv(stream, FIGURE_HEADER[1:],
                          [row[1:] for row in rows], curve_comments)
        return

    rows = [row for _, curve_rows in _figure_rows(preset, alphas_db, sampling)
            for row in curve_rows]
    with click.open_file(output, 'w') as stream:
        write_csv(stream, FIGURE_HEADER, rows, comments)
