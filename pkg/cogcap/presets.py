"""
Curves behind each capacity figure and the alpha grid they are swept on.

K-factors and c are given in dB and converted once, here.
"""
from dataclasses import dataclass

import numpy as np

from . import settings
from .exceptions import ValidationError
from .models import CapacityQuery, Constraint, FadingModel, RatioScenario
from .models import check_count, check_real
from .units import db_to_linear


K_SWEEP_DB = (0.0, 6.0, 15.0)
FIXED_K_DB = 6.0
C_SWEEP_DB = (10.0, -10.0)
PRIMARIES = (1, 2, 3)


@dataclass(frozen=True)
class Curve:
    label: str
    constraint: Constraint
    scenario: RatioScenario
    c_db: float = 0.0

    def query(self, alpha):
        return CapacityQuery(self.constraint, alpha, self.scenario,
                             db_to_linear(self.c_db))


@dataclass(frozen=True)
class Preset:
    name: str
    title: str
    curves: tuple

    def curve(self, label):
        for curve in self.curves:
            if curve.label == label:
                return curve
        raise ValidationError(f'{self.name} has no curve {label!r}')


def _rician(k_db):
    return FadingModel.rician(db_to_linear(k_db))


def _rayleigh_reference(constraint):
    return Curve('Rayleigh/Rayleigh', constraint,
                 RatioScenario(FadingModel.rayleigh(), FadingModel.rayleigh()))


def _k_sweep(constraint, rician_desired):
    curves = []
    for k_db in K_SWEEP_DB:
        if rician_desired:
            scenario = RatioScenario(_rician(k_db), FadingModel.rayleigh())
        else:
            scenario = RatioScenario(FadingModel.rayleigh(), _rician(k_db))
        curves.append(Curve(f'K={k_db:g}dB', constraint, scenario))
    curves.append(_rayleigh_reference(constraint))
    return tuple(curves)


def _power_ratio_sweep():
    curves = []
    for constraint in (Constraint.AVERAGE, Constraint.PEAK):
        for rician_desired in (True, False):
            if rician_desired:
                scenario = RatioScenario(_rician(FIXED_K_DB),
                                         FadingModel.rayleigh())
                pair = 'Rician/Rayleigh'
            else:
                scenario = RatioScenario(FadingModel.rayleigh(),
                                         _rician(FIXED_K_DB))
                pair = 'Rayleigh/Rician'
            for c_db in C_SWEEP_DB:
                label = f'{constraint.value} {pair} c={c_db:g}dB'
                curves.append(Curve(label, constraint, scenario, c_db))
    return tuple(curves)


def _primaries_sweep(rician_desired):
    curves = []
    for n in PRIMARIES:
        if rician_desired:
            scenario = RatioScenario(_rician(FIXED_K_DB),
                                     FadingModel.rayleigh(), n)
        else:
            scenario = RatioScenario(FadingModel.rayleigh(),
                                     _rician(FIXED_K_DB), n)
        curves.append(Curve(f'n={n}', Constraint.PEAK, scenario))
    return tuple(curves)


PRESETS = {
    'fig2': Preset('fig2', 'average constraint, Rayleigh/Rician, c = 0 dB',
                   _k_sweep(Constraint.AVERAGE, rician_desired=False)),
    'fig3': Preset('fig3', 'average constraint, Rician/Rayleigh, c = 0 dB',
                   _k_sweep(Constraint.AVERAGE, rician_desired=True)),
    'fig4': Preset('fig4', 'peak constraint, Rayleigh/Rician, c = 0 dB',
                   _k_sweep(Constraint.PEAK, rician_desired=False)),
    'fig5': Preset('fig5', 'peak constraint, Rician/Rayleigh, c = 0 dB',
                   _k_sweep(Constraint.PEAK, rician_desired=True)),
    'fig6': Preset('fig6', 'both constraints and fading orders, '
                           'c = +/-10 dB, K = 6 dB',
                   _power_ratio_sweep()),
    'fig7': Preset('fig7', 'peak constraint, Rician/Rayleigh, '
                           'n = 1, 2, 3, K = 6 dB',
                   _primaries_sweep(rician_desired=True)),
    'fig8': Preset('fig8', 'peak constraint, Rayleigh/Rician, '
                           'n = 1, 2, 3, K = 6 dB',
                   _primaries_sweep(rician_desired=False)),
}


def get_preset(name):
    try:
        return PRESETS[name]
    except KeyError:
        raise ValidationError(f'unknown preset {name!r}; '
                              f'choose from {", ".join(PRESETS)}')


def alpha_grid_db(start=None, stop=None, points=None):
    """
    Return the alpha grid in dB, evenly spaced from start to stop.

    :param start: first point in dB, defaults to ALPHA_DB_START
    :param stop: last point in dB, defaults to ALPHA_DB_STOP
    :param points: number of points, defaults to ALPHA_DB_POINTS
    :returns: numpy array
    """
    start = check_real(settings['ALPHA_DB_START'] if start is None
                       else start, 'start')
    stop = check_real(settings['ALPHA_DB_STOP'] if stop is None
                      else stop, 'stop')
    points = check_count(settings['ALPHA_DB_POINTS'] if points is None
                         else points, 'points')
    if start > stop:
        raise ValidationError(f'alpha range start {start} exceeds '
                              f'stop {stop}')
    if points == 1 and start != stop:
        raise ValidationError('a range needs at least two points')
    return np.linspace(start, stop, points)
