"""
Check suite comparing every closed form against identities, analytic
values and the Monte Carlo oracle, and the capacity curves against the
qualitative behaviour they must show.

Each check group returns CheckResult rows in a fixed order; given
(samples, seed) the report is deterministic.
"""
from collections import namedtuple

import logging

import numpy as np

from . import capacity, distributions, oracle
from .distributions import TAIL_CUTOFF, ratio_law
from .models import CapacityQuery, Constraint, FadingModel, RatioScenario
from .numerics import geometric_edges, integrate_panels
from .presets import PRESETS, alpha_grid_db
from .specfun import bessel_i0, marcum_identity_residual, marcum_q1
from .units import db_to_linear


logger = logging.getLogger(__name__)

CheckResult = namedtuple('CheckResult', ['name', 'passed', 'detail'])

K_VALUES = (0.0, 1.0, float(db_to_linear(6.0)), float(db_to_linear(15.0)))
RAYLEIGH = FadingModel.rayleigh()

MARCUM_PAIRS = 1000
MARCUM_TOLERANCE = 1e-9
NORMALIZATION_TOLERANCE = 1e-8
DEGENERACY_TOLERANCE = 1e-12
SELF_CONSISTENCY_TOLERANCE = 1e-6
SIGMAS = 3.0

INV_LN2 = 1.4426950408889634
GAMMA0_RAYLEIGH = 2.1461932206205836
AWGN_AT_10 = 3.4594316186372973
MARCUM_AT_1_1 = 0.7328798037968204
I0_AT_1 = 1.2660658777520084
I0_AT_10 = 2815.716628466254


def _rician(k_factor):
    return FadingModel.rician(k_factor)


def _row(name, passed, detail):
    return CheckResult(name, bool(passed), detail)


def _tolerated(points):
    # finite-sample slack: 18 of 20, 11 of 12
    return max(1, points // 10)


def _agreement_row(name, estimates, references):
    misses = sum(not estimate.agrees_with(reference, SIGMAS)
                 for estimate, reference in zip(estimates, references))
    total = len(estimates)
    return _row(name, misses <= _tolerated(total),
                f'{total - misses}/{total} within {SIGMAS:g} sigma')


def law_mass(law, spec=None):
    """
    Return the total probability of a ratio law: quadrature up to
    TAIL_CUTOFF plus the tail mass tail_weight / TAIL_CUTOFF.
    """
    edges = geometric_edges(0.0, 1.0, TAIL_CUTOFF)
    mass, _ = integrate_panels(law.pdf, edges, spec)
    return mass + law.tail_weight / TAIL_CUTOFF


def check_special_functions(samples, seed, workers):
    rng = np.random.Generator(np.random.Philox(key=seed))
    a, b = rng.uniform(0.0, 20.0, size=(2, MARCUM_PAIRS))
    worst = float(np.max(np.abs(marcum_identity_residual(a, b))))
    q_error = abs(marcum_q1(1.0, 1.0) - MARCUM_AT_1_1)
    i0_error = max(abs(bessel_i0(1.0) / I0_AT_1 - 1.0),
                   abs(bessel_i0(10.0) / I0_AT_10 - 1.0))
    return [
        _row('marcum-identity', worst <= MARCUM_TOLERANCE,
             f'max residual {worst:.3e} over {MARCUM_PAIRS} pairs'),
        _row('marcum-anchor', q_error <= 1e-10,
             f'|Q1(1, 1) - reference| = {q_error:.3e}'),
        _row('bessel-anchor', i0_error <= 1e-14,
             f'max relative error {i0_error:.3e}'),
    ]


def _normalization_families():
    yield 'ray-ray', [RatioScenario(RAYLEIGH, RAYLEIGH)]
    yield 'ray-rice', [RatioScenario(RAYLEIGH, _rician(k))
                       for k in K_VALUES]
    yield 'rice-ray', [RatioScenario(_rician(k), RAYLEIGH)
                       for k in K_VALUES]
    yield 'rice-maxray', [RatioScenario(_rician(k), RAYLEIGH, n)
                          for k in K_VALUES for n in (1, 2, 3)]


def check_normalization(samples, seed, workers):
    rows = []
    for family, scenarios in _normalization_families():
        worst = max(abs(law_mass(ratio_law(scenario)) - 1.0)
                    for scenario in scenarios)
        rows.append(_row(f'normalization-{family}',
                         worst <= NORMALIZATION_TOLERANCE,
                         f'max |mass - 1| = {worst:.3e} '
                         f'over {len(scenarios)} laws'))
    return rows


def check_degeneracy(samples, seed, workers):
    grid = np.concatenate(([0.0], np.geomspace(1e-3, 1e3, 999)))
    positive = grid[1:]
    rayleigh_pdf = distributions.ratio_pdf_ray_ray(grid)
    k0_ray_rice = np.max(np.abs(distributions.ratio_pdf_ray_rice(grid, 0.0)
                                - rayleigh_pdf))
    k0_rice_ray = np.max(np.abs(distributions.ratio_pdf_rice_ray(grid, 0.0)
                                - rayleigh_pdf))
    single = max(
        np.max(np.abs(distributions.ratio_pdf_rice_maxray(grid, k, 1)
                      - distributions.ratio_pdf_rice_ray(grid, k)))
        for k in K_VALUES)
    duality = max(
        np.max(np.abs(distributions.ratio_cdf_ray_rice(positive, k)
                      - (1.0 - distributions.ratio_cdf_rice_ray(
                          1.0 / positive, k))))
        for k in K_VALUES)
    integral = max(
        abs(distributions.ratio_cdf_rice_ray_integral(y, k)
            - distributions.ratio_cdf_rice_ray(y, k))
        for k in K_VALUES[1:] for y in (0.1, 1.0, 10.0))
    return [
        _row('degeneracy-ray-rice-k0', k0_ray_rice <= DEGENERACY_TOLERANCE,
             f'max deviation {k0_ray_rice:.3e}'),
        _row('degeneracy-rice-ray-k0', k0_rice_ray <= DEGENERACY_TOLERANCE,
             f'max deviation {k0_rice_ray:.3e}'),
        _row('degeneracy-maxray-n1', single <= DEGENERACY_TOLERANCE,
             f'max deviation {single:.3e}'),
        _row('reciprocal-duality', duality <= DEGENERACY_TOLERANCE,
             f'max deviation {duality:.3e}'),
        _row('marcum-integral-form', integral <= 1e-7,
             f'max deviation {integral:.3e}'),
    ]


def _cdf_scenarios():
    k_6db, k_15db = K_VALUES[2], K_VALUES[3]
    return [
        RatioScenario(RAYLEIGH, RAYLEIGH),
        RatioScenario(RAYLEIGH, _rician(1.0)),
        RatioScenario(RAYLEIGH, _rician(k_15db)),
        RatioScenario(_rician(1.0), RAYLEIGH),
        RatioScenario(_rician(k_15db), RAYLEIGH),
        RatioScenario(_rician(k_6db), RAYLEIGH, 2),
        RatioScenario(RAYLEIGH, RAYLEIGH, 3),
    ]


def check_monte_carlo_cdf(samples, seed, workers):
    points = np.geomspace(0.05, 10.0, 20)
    rows = []
    for scenario in _cdf_scenarios():
        estimates = oracle.mc_ratio_cdf_grid(scenario, points,
                                             samples, seed, workers)
        references = ratio_law(scenario).cdf(points)
        rows.append(_agreement_row(f'mc-cdf {scenario}',
                                   estimates, references))
    return rows


def check_anchors(samples, seed, workers):
    ray_ray = RatioScenario(RAYLEIGH, RAYLEIGH)
    peak = capacity.capacity_peak(
        CapacityQuery(Constraint.PEAK, 1.0, ray_ray)).capacity
    gamma0 = capacity.solve_gamma0(ray_ray, 1.0)
    awgn = RatioScenario(FadingModel.awgn(), FadingModel.awgn())
    awgn_results = [
        capacity.capacity(CapacityQuery(constraint, 10.0, awgn)).capacity
        for constraint in (Constraint.AVERAGE, Constraint.PEAK)]
    awgn_error = max(abs(value - AWGN_AT_10) for value in awgn_results)
    return [
        _row('anchor-peak-rayleigh', abs(peak - INV_LN2) <= 1e-6,
             f'C = {peak:.12f}; expected {INV_LN2:.12f}'),
        _row('anchor-gamma0-rayleigh',
             abs(gamma0 - GAMMA0_RAYLEIGH) <= 1e-8,
             f'gamma0 = {gamma0:.12f}; expected {GAMMA0_RAYLEIGH:.12f}'),
        _row('anchor-awgn', awgn_error <= 1e-15,
             f'max deviation {awgn_error:.3e}'),
    ]


def _average_combinations():
    k_6db = K_VALUES[2]
    scenarios = [RatioScenario(RAYLEIGH, RAYLEIGH),
                 RatioScenario(RAYLEIGH, _rician(k_6db)),
                 RatioScenario(_rician(k_6db), RAYLEIGH)]
    for scenario in scenarios:
        for alpha_db in (-10.0, -3.0, 3.0, 10.0):
            yield scenario, db_to_linear(alpha_db)


def check_average_constraint(samples, seed, workers):
    worst = 0.0
    estimates, references = [], []
    for scenario, alpha in _average_combinations():
        query = CapacityQuery(Constraint.AVERAGE, alpha, scenario)
        result = capacity.capacity_average(query)
        level = capacity.average_interference(scenario, result.gamma0)
        worst = max(worst, abs(level - alpha))
        estimates.append(oracle.mc_capacity(query, samples, seed, workers))
        references.append(result.capacity)
    return [
        _row('average-self-consistency',
             worst <= SELF_CONSISTENCY_TOLERANCE,
             f'max |interference - alpha| = {worst:.3e}'),
        _agreement_row('average-water-filling-mc', estimates, references),
    ]


def _peak_combinations():
    k_6db, k_15db = K_VALUES[2], K_VALUES[3]
    yield RatioScenario(RAYLEIGH, RAYLEIGH), 1.0
    yield RatioScenario(_rician(k_6db), RAYLEIGH, 2), 1.0
    yield RatioScenario(RAYLEIGH, _rician(k_6db)), 0.1
    yield RatioScenario(_rician(k_15db), RAYLEIGH), 10.0
    yield RatioScenario(RAYLEIGH, RAYLEIGH, 3), 10.0
    yield RatioScenario(RAYLEIGH, _rician(1.0)), 1.0


def check_peak_monte_carlo(samples, seed, workers):
    estimates, references = [], []
    for scenario, alpha in _peak_combinations():
        query = CapacityQuery(Constraint.PEAK, alpha, scenario)
        estimates.append(oracle.mc_capacity(query, samples, seed, workers))
        references.append(capacity.capacity_peak(query).capacity)
    return [_agreement_row('peak-mc', estimates, references)]


def sweep_presets(samples, seed, workers):
    """
    Return {(preset, label): (alphas, results)} over the default grid.
    """
    alphas = db_to_linear(alpha_grid_db())
    curves = {}
    for preset in PRESETS.values():
        for curve in preset.curves:
            results = capacity.capacity_curve(curve.query(1.0), alphas,
                                              samples=samples, seed=seed,
                                              workers=workers)
            curves[preset.name, curve.label] = (alphas, results)
    return curves


def _margin(result):
    return SIGMAS * (result.std_error or 0.0)


def check_qualitative(samples, seed, workers):
    curves = sweep_presets(samples, seed, workers)
    rows = []

    flat = [key for key, (_, results) in curves.items()
            if np.any(np.diff([r.capacity for r in results]) <= 0.0)]
    rows.append(_row('increasing-in-alpha', not flat,
                     f'{len(curves) - len(flat)}/{len(curves)} curves '
                     'strictly increasing'))

    below = 0
    checked = 0
    for key, (alphas, results) in curves.items():
        curve = PRESETS[key[0]].curve(key[1])
        if (curve.constraint is not Constraint.AVERAGE
                or not curve.scenario.interference.is_rayleigh):
            continue
        for result in results:
            checked += 1
            if result.capacity < capacity.awgn_capacity(result.alpha_eff):
                below += 1
    rows.append(_row('average-above-awgn', below == 0,
                     f'{checked - below}/{checked} points at or above AWGN '
                     '(Rayleigh interference)'))

    fig4 = PRESETS['fig4']
    crossing = []
    for curve in fig4.curves:
        if curve.scenario.interference.is_rayleigh:
            continue
        alphas, results = curves['fig4', curve.label]
        gaps = [r.capacity - capacity.awgn_capacity(a)
                for a, r in zip(alphas, results)]
        crossing.append(max(gaps) > 0.0 > min(gaps))
    rows.append(_row('peak-crosses-awgn', all(crossing),
                     f'{sum(crossing)}/{len(crossing)} Rayleigh/Rician '
                     'curves cross AWGN'))

    low_alpha = db_to_linear(-10.0)
    ordered = [capacity.capacity(curve.query(low_alpha)).capacity
               for curve in fig4.curves
               if not curve.scenario.interference.is_rayleigh]
    decreasing = all(np.diff(ordered) < 0.0)
    rows.append(_row('peak-decreasing-in-k', decreasing,
                     'C at -10 dB: '
                     + ' > '.join(f'{value:.6f}' for value in ordered)))

    violations = 0
    for name in ('fig7', 'fig8'):
        sweeps = [curves[name, curve.label][1]
                  for curve in PRESETS[name].curves]
        for fewer, more in zip(sweeps[:-1], sweeps[1:]):
            for low, high in zip(fewer, more):
                if high.capacity > (low.capacity
                                    + _margin(low) + _margin(high)):
                    violations += 1
    rows.append(_row('nonincreasing-in-n', violations == 0,
                     f'{violations} violations'))

    mismatches = 0
    for curve in PRESETS['fig6'].curves:
        for alpha in db_to_linear(np.array([-10.0, 0.0, 10.0])):
            scaled = curve.query(alpha)
            direct = CapacityQuery(scaled.constraint, scaled.c * alpha,
                                   scaled.scenario)
            if (capacity.capacity(scaled).capacity
                    != capacity.capacity(direct).capacity):
                mismatches += 1
    rows.append(_row('power-ratio-scaling', mismatches == 0,
                     f'{mismatches} mismatches'))
    return rows


CHECK_GROUPS = {
    'special-functions': check_special_functions,
    'normalization': check_normalization,
    'degeneracy': check_degeneracy,
    'monte-carlo-cdf': check_monte_carlo_cdf,
    'anchors': check_anchors,
    'average-constraint': check_average_constraint,
    'monte-carlo-capacity': check_peak_monte_carlo,
    'qualitative': check_qualitative,
}


def run_checks(samples, seed, workers=1, groups=None):
    """
    Run the selected check groups in their fixed order.

    :param samples: Monte Carlo draws per estimate
    :param seed: 64-bit seed
    :param workers: sampling threads
    :param groups: names from CHECK_GROUPS, all if None
    :returns: list of CheckResult
    """
    selected = list(CHECK_GROUPS) if not groups else groups
    results = []
    for name, check in CHECK_GROUPS.items():
        if name not in selected:
            continue
        logger.info('running %s checks', name)
        results.extend(check(samples, seed, workers))
    return results
