from functools import wraps

import click

from ..models import FadingKind, FadingModel, RatioScenario
from ..units import db_to_linear
from .errors import LIBRARY_ERRORS, USAGE, generate_error


FADING_KINDS = [kind.value for kind in FadingKind]


def reports_errors(f):
    """
    Turn library errors raised by a command into
    a message on stderr and the usage exit code.
    """
    @wraps(f)
    def decorated(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except LIBRARY_ERRORS as e:
            ctx = click.get_current_context()
            ctx.exit(generate_error(USAGE, e.args[0]))
    return decorated


def _fading_model(kind, k_db, role):
    kind = FadingKind(kind)
    if kind is not FadingKind.RICIAN:
        if k_db is not None:
            raise click.BadParameter(f'{kind.value} fading takes no K-factor',
                                     param_hint=f'--{role}-k-db')
        return FadingModel(kind)
    if k_db is None:
        raise click.BadParameter('Rician fading needs a K-factor in dB',
                                 param_hint=f'--{role}-k-db')
    return FadingModel.rician(db_to_linear(k_db))


def build_scenario(desired, desired_k_db, interference, interference_k_db,
                   n_primaries):
    """
    Return the RatioScenario described by the scenario options.
    """
    return RatioScenario(_fading_model(desired, desired_k_db, 'desired'),
                         _fading_model(interference, interference_k_db,
                                       'interference'),
                         n_primaries)


def scenario_options(f):
    """
    Add the fading options and pass a `scenario` argument instead.
    """
    @click.option('--desired', type=click.Choice(FADING_KINDS),
                  default='rayleigh', show_default=True,
                  help='Fading of the secondary (desired) link.')
    @click.option('--desired-k-db', type=float, default=None,
                  help='Rician K-factor of the desired link in dB.')
    @click.option('--interference', type=click.Choice(FADING_KINDS),
                  default='rayleigh', show_default=True,
                  help='Fading of each interference link.')
    @click.option('--interference-k-db', type=float, default=None,
                  help='Rician K-factor of the interference links in dB.')
    @click.option('--n-primaries', type=click.IntRange(min=1), default=1,
                  show_default=True, help='Number of primary receivers.')
    @wraps(f)
    def decorated(desired, desired_k_db, interference, interference_k_db,
                  n_primaries, **kwargs):
        scenario = build_scenario(desired, desired_k_db, interference,
                                  interference_k_db, n_primaries)
        return f(scenario=scenario, **kwargs)
    return decorated


def sampling_options(f):
    """
    Add the Monte Carlo options; None selects the configured defaults.
    """
    f = click.option('--workers', type=click.IntRange(min=1), default=None,
                     help='Threads drawing Monte Carlo blocks.')(f)
    f = click.option('--seed', type=click.IntRange(min=0, max=2**64 - 1),
                     default=None, help='64-bit Monte Carlo seed.')(f)
    f = click.option('--mc-samples', type=click.IntRange(min=1),
                     default=None, help='Monte Carlo draws per estimate.')(f)
    return f
