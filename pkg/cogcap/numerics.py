"""
Quadrature over finite and semi-infinite intervals
and root-finding for nondecreasing functions.
"""
import logging
import math
import warnings

import numpy as np
from scipy import integrate, optimize

from .exceptions import BracketError, ConvergenceError, ValidationError
from .models import QuadratureSpec, check_real
from . import settings


logger = logging.getLogger(__name__)

# the bracket may grow up to 2**100 before the target counts as unreachable
MAX_BRACKET_DOUBLINGS = 100


def _quad(f, a, b, spec):
    if spec is None:
        spec = QuadratureSpec.default()
    with warnings.catch_warnings():
        warnings.simplefilter('ignore', integrate.IntegrationWarning)
        output = integrate.quad(f, a, b,
                                epsabs=spec.absolute,
                                epsrel=spec.relative,
                                limit=spec.max_subdivisions,
                                full_output=1)
    value, error, info = output[0], output[1], output[2]
    if len(output) > 3:
        raise ConvergenceError(f'quadrature on [{a}, {b}] did not converge: '
                               f'{output[3]}',
                               estimate=value, error=error)
    logger.debug('quadrature on [%g, %g]: %.17g +/- %.3g (%d evaluations)',
                 a, b, value, error, info['neval'])
    return value, error


def integrate_semi_infinite(f, spec=None, lower=0.0):
    """
    Integrate f over [lower, infinity).

    QUADPACK maps the half line onto (0, 1] and applies adaptive
    Gauss-Kronrod panels.

    :param f: callable of one float, finite and integrable
    :param spec: QuadratureSpec or None for the defaults
    :param lower: finite lower limit
    :returns: (value, error estimate)
    :raises ConvergenceError: carrying the best estimate and its error
    """
    lower = check_real(lower, 'lower')
    return _quad(f, lower, math.inf, spec)


def integrate_finite(f, a, b, spec=None):
    """
    Integrate f over [a, b] with adaptive Gauss-Kronrod panels.

    :param f: callable of one float
    :param a: lower limit
    :param b: upper limit, b >= a
    :param spec: QuadratureSpec or None for the defaults
    :returns: (value, error estimate)
    """
    a = check_real(a, 'a')
    b = check_real(b, 'b')
    if b < a:
        raise ValidationError(f'integration limits out of order: [{a}, {b}]')
    if a == b:
        return 0.0, 0.0
    return _quad(f, a, b, spec)


def integrate_vector(f, a, b, spec=None, points=None):
    """
    Integrate an array-valued f over [a, b] with one shared
    adaptive subdivision; the error is the largest over the entries.

    :param f: callable of one float returning a numpy array
    :param a: lower limit
    :param b: upper limit, b > a
    :param spec: QuadratureSpec or None for the defaults
    :param points: interior breakpoints
    :returns: (array of values, error estimate)
    :raises ConvergenceError: if the subdivision limit is reached
    """
    if spec is None:
        spec = QuadratureSpec.default()
    a = check_real(a, 'a')
    b = check_real(b, 'b')
    if b <= a:
        raise ValidationError(f'integration limits out of order: [{a}, {b}]')
    value, error, info = integrate.quad_vec(f, a, b,
                                            epsabs=spec.absolute,
                                            epsrel=spec.relative,
                                            norm='max',
                                            limit=spec.max_subdivisions,
                                            points=points,
                                            full_output=True)
    if not info.success:
        raise ConvergenceError(f'vector quadrature on [{a}, {b}] did not '
                               f'converge (status {info.status})',
                               estimate=value, error=error)
    logger.debug('vector quadrature on [%g, %g]: error %.3g '
                 '(%d evaluations)', a, b, error, info.neval)
    return value, error


def find_root_increasing(h, target, tol=None):
    """
    Return r with |h(r) - target| <= tol for a continuous
    nondecreasing h with h(0) <= target.

    The bracket starts at [0, 1] and doubles its upper end
    until h reaches the target; Brent's method then solves
    within the bracket and bisection polishes the result
    if the tolerance on h is not yet met.

    :param h: callable of one float
    :param target: value to reach
    :param tol: tolerance on h, defaults to ROOT_TOL
    :returns: float
    :raises BracketError: if h stays below target up to 2**100
    """
    if tol is None:
        tol = settings['ROOT_TOL']
    target = check_real(target, 'target')
    tol = check_real(tol, 'tol', 0.0, strict=True)

    lower, upper = 0.0, 1.0
    lower_value = h(lower)
    if lower_value > target + tol:
        raise BracketError(f'h(0) = {lower_value} exceeds target {target}',
                           estimate=(lower, upper))
    if abs(lower_value - target) <= tol:
        return lower
    upper_value = h(upper)
    doublings = 0
    while upper_value < target:
        if doublings == MAX_BRACKET_DOUBLINGS:
            raise BracketError(f'target {target} unreachable: '
                               f'h({upper:g}) = {upper_value}',
                               estimate=(lower, upper))
        lower, lower_value = upper, upper_value
        upper *= 2.0
        upper_value = h(upper)
        doublings += 1
    logger.debug('root of h - %g bracketed in [%g, %g]', target, lower, upper)

    def shifted(x):
        return h(x) - target

    if upper_value - target <= tol:
        root = upper
    else:
        root = optimize.brentq(shifted, lower, upper,
                               xtol=min(tol, 1e-12) * 1e-2,
                               rtol=4.0 * np.finfo(float).eps)
    residual = shifted(root)
    iterations = 0
    while abs(residual) > tol and iterations < 200:
        if residual < 0.0:
            lower = root
        else:
            upper = root
        root = 0.5 * (lower + upper)
        residual = shifted(root)
        iterations += 1
    if abs(residual) > tol:
        raise ConvergenceError(f'root residual {residual} exceeds {tol}',
                               estimate=root, error=abs(residual))
    logger.debug('root %.17g found, residual %.3g', root, residual)
    return root


def geometric_edges(lower, first, stop, growth=1e2):
    """
    Return panel edges lower, first, first * growth, ... up to stop,
    dropping those not above lower.

    :param lower: left end of the range
    :param first: first interior edge
    :param stop: right end of the range
    :param growth: ratio between consecutive interior edges, > 1
    :returns: increasing list of floats
    """
    edges = [check_real(lower, 'lower')]
    edge = check_real(first, 'first', 0.0, strict=True)
    stop = check_real(stop, 'stop')
    while edge < stop:
        if edge > edges[-1]:
            edges.append(edge)
        edge *= growth
    if stop > edges[-1]:
        edges.append(stop)
    return edges


def integrate_panels(f, edges, spec=None):
    """
    Integrate f over consecutive panels and return
    the summed value and error estimate.
    """
    total, total_error = 0.0, 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        value, error = integrate_finite(f, a, b, spec)
        total += value
        total_error += error
    return total, total_error
