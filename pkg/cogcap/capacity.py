"""
Ergodic capacity of the secondary link in bits/s/Hz (B = 1, N0 = 1)
under average and peak received-power constraints at the primary
receivers.

Unequal link powers enter only through alpha_eff = c * alpha;
every law below is the equal-power one.
"""
import logging
import math

import numpy as np

from . import oracle
from .distributions import TAIL_CUTOFF, has_closed_form, ratio_law
from .exceptions import NoClosedFormError, ValidationError
from .models import CapacityResult, Constraint, Method, QuadratureSpec
from .models import check_real
from .numerics import find_root_increasing
from .numerics import geometric_edges, integrate_finite, integrate_panels


logger = logging.getLogger(__name__)

LOG2E = 1.0 / math.log(2.0)
# the average-constraint integral is split at max(1 / gamma0, 1) * TAIL_SPLIT
TAIL_SPLIT = 1e3


def effective_alpha(query):
    """
    Return c * alpha, the constraint level of the
    equivalent equal-power problem (noise N0 / c).
    """
    return query.c * query.alpha


def awgn_capacity(alpha):
    """
    Return log2(1 + alpha), the capacity when g0 = g1 = 1 always,
    under either constraint.
    """
    return math.log2(1.0 + check_real(alpha, 'alpha', 0.0))


def _require(query, constraint):
    if query.constraint is not constraint:
        raise ValidationError(f'expected a {constraint.value} constraint '
                              f'query, got {query.constraint.value}')


def _single_primary(scenario):
    if scenario.n_primaries != 1:
        raise ValidationError('the average received-power constraint '
                              'is only supported for one primary receiver')


def solve_gamma0(scenario, alpha_eff, spec=None, tol=None):
    """
    Return the threshold gamma0 solving

        integral from 0 to gamma0 of F(x) dx = alpha_eff,

    where F is the CDF of g0 / g1, i.e. the ratio CDF
    of the swapped scenario. For AWGN the threshold is 1 + alpha_eff.

    :param scenario: single-primary RatioScenario
    :param alpha_eff: effective interference-to-noise ratio > 0
    :param spec: QuadratureSpec or None for the defaults
    :param tol: tolerance on the constraint level
    :returns: gamma0 > 0
    """
    alpha_eff = check_real(alpha_eff, 'alpha_eff', 0.0, strict=True)
    _single_primary(scenario)
    if scenario.is_awgn:
        return 1.0 + alpha_eff
    reciprocal_law = ratio_law(scenario.swapped())

    def constraint_level(gamma0):
        value, _ = integrate_finite(reciprocal_law.cdf, 0.0, gamma0, spec)
        return value

    gamma0 = find_root_increasing(constraint_level, alpha_eff, tol)
    logger.debug('gamma0 = %.17g for %s at alpha_eff = %g',
                 gamma0, scenario, alpha_eff)
    return gamma0


def average_interference(scenario, gamma0, spec=None):
    """
    Return the average interference-to-noise ratio at the primary
    receiver produced by the threshold policy with the given gamma0,

        integral from 0 to gamma0 of (gamma0 - x) p(x) dx,

    with p the PDF of g0 / g1.
    """
    gamma0 = check_real(gamma0, 'gamma0', 0.0, strict=True)
    _single_primary(scenario)
    if scenario.is_awgn:
        return max(gamma0 - 1.0, 0.0)
    reciprocal_law = ratio_law(scenario.swapped())

    def integrand(x):
        return (gamma0 - x) * reciprocal_law.pdf(x)

    value, _ = integrate_finite(integrand, 0.0, gamma0, spec)
    return value


def capacity_average(query, spec=None):
    """
    Capacity under the average received-power constraint,

        C = integral from 1/gamma0 to infinity of
            log2(gamma0 x) p(x) dx,

    p being the PDF of g1 / g0. The integral is split at
    max(1 / gamma0, 1) * 1e3; panels cover the range up to
    TAIL_CUTOFF and beyond it p(x) = A / x^2, whose contribution
    A (ln(gamma0 X) + 1) / (X ln 2) is added in closed form.

    :param query: CapacityQuery with the average constraint
    :param spec: QuadratureSpec or None for the defaults
    :returns: CapacityResult with gamma0
    """
    _require(query, Constraint.AVERAGE)
    alpha_eff = effective_alpha(query)
    scenario = query.scenario
    if scenario.is_awgn:
        return CapacityResult(awgn_capacity(alpha_eff), Method.CLOSED_FORM,
                              alpha_eff, gamma0=1.0 + alpha_eff)
    law = ratio_law(scenario)
    gamma0 = solve_gamma0(scenario, alpha_eff, spec)
    lower = 1.0 / gamma0
    split = max(lower, 1.0) * TAIL_SPLIT

    def integrand(x):
        return LOG2E * math.log(gamma0 * x) * law.pdf(x)

    edges = geometric_edges(lower, split, TAIL_CUTOFF)
    head, error = integrate_panels(integrand, edges, spec)
    edge = max(lower, TAIL_CUTOFF)
    tail = (law.tail_weight * LOG2E
            * (math.log(gamma0 * edge) + 1.0) / edge)
    return CapacityResult(max(head + tail, 0.0), Method.CLOSED_FORM,
                          alpha_eff, gamma0=gamma0,
                          quadrature_error=error)


def capacity_peak(query, spec=None):
    """
    Capacity under the peak received-power constraint,

        C = integral from 0 to infinity of log2(1 + alpha_eff x) p(x) dx,

    p being the PDF of g1 / max_i g0i. Beyond TAIL_CUTOFF the
    integral of log(1 + a x) A / x^2 is added in closed form.

    :param query: CapacityQuery with the peak constraint
    :param spec: QuadratureSpec or None for the defaults
    :returns: CapacityResult
    :raises NoClosedFormError: for Rician interference with n > 1
    """
    _require(query, Constraint.PEAK)
    alpha_eff = effective_alpha(query)
    scenario = query.scenario
    if scenario.is_awgn:
        return CapacityResult(awgn_capacity(alpha_eff), Method.CLOSED_FORM,
                              alpha_eff)
    law = ratio_law(scenario)
    if spec is None:
        spec = QuadratureSpec.default()
    spec = spec.scaled(min(1.0, alpha_eff))

    def integrand(x):
        return LOG2E * math.log1p(alpha_eff * x) * law.pdf(x)

    edges = geometric_edges(0.0, 1.0, TAIL_CUTOFF)
    value, error = integrate_panels(integrand, edges, spec)
    tail = law.tail_weight * LOG2E * (
        math.log1p(alpha_eff * TAIL_CUTOFF) / TAIL_CUTOFF
        + alpha_eff * math.log1p(1.0 / (alpha_eff * TAIL_CUTOFF)))
    return CapacityResult(max(value + tail, 0.0), Method.CLOSED_FORM,
                          alpha_eff, quadrature_error=error)


def capacity_peak_mc(query, samples=None, seed=None, workers=None):
    """
    Monte Carlo capacity under the peak received-power constraint,
    valid for every scenario.

    :param query: CapacityQuery with the peak constraint
    :param samples: number of draws, defaults to MC_SAMPLES
    :param seed: 64-bit seed, defaults to MC_SEED
    :returns: CapacityResult with std_error and samples
    """
    _require(query, Constraint.PEAK)
    estimate = oracle.mc_capacity(query, samples, seed, workers)
    return CapacityResult(estimate.value, Method.MONTE_CARLO,
                          effective_alpha(query),
                          std_error=estimate.std_error,
                          samples=estimate.samples)


def capacity(query, spec=None, samples=None, seed=None, workers=None):
    """
    Return the capacity for the query by the closed-form integrand
    when the scenario has one, else by Monte Carlo (peak only).
    """
    scenario = query.scenario
    closed = scenario.is_awgn or has_closed_form(scenario)
    if query.constraint is Constraint.AVERAGE:
        if not closed:
            raise NoClosedFormError(f'no closed-form law for {scenario}; '
                                    'the average constraint needs one')
        return capacity_average(query, spec)
    if closed:
        return capacity_peak(query, spec)
    logger.warning('%s has no closed-form ratio law; '
                   'falling back to Monte Carlo', scenario)
    return capacity_peak_mc(query, samples, seed, workers)


def capacity_curve(query, alphas, **kwargs):
    """
    Return the capacity results for the query at each of the
    given alpha values, in order.
    """
    return [capacity(query.with_alpha(alpha), **kwargs)
            for alpha in np.atleast_1d(alphas)]
