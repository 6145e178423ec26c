"""
Fading samplers and the closed-form laws of the channel-gain ratio
g1 / g0 (or g1 / max_i g0i) between the desired and interference links.

Every power gain has unit mean. K-factors are linear.
"""
from dataclasses import dataclass
from functools import partial
from typing import Callable

import logging
import math

import numpy as np
from scipy.special import gammaln

from . import numerics
from .exceptions import NoClosedFormError
from .models import MAX_PRIMARIES, FadingModel, QuadratureSpec
from .models import RatioScenario
from .models import check_count, check_real
from .specfun import bessel_i0e, check_non_negative, marcum_q1


logger = logging.getLogger(__name__)

# beyond this point the CDFs are 1 and the PDFs 0 to within 1e-8
TAIL_CUTOFF = 1e8
# alternating binomial sums lose about n log10(2) digits; larger n
# use the non-negative integral forms
MAX_ALTERNATING_PRIMARIES = 16
# the integral forms run inside the capacity quadrature, so their
# absolute tolerance is this fraction of the configured one
INNER_TOLERANCE_SCALE = 1e-3


def _k_factor(k_factor):
    return check_real(k_factor, 'K', minimum=0.0)


def _primaries(n):
    return check_count(n, 'n', minimum=1, maximum=MAX_PRIMARIES)


def _finish(x, values, tail_value):
    values = np.where(x > TAIL_CUTOFF, tail_value, values)
    return values[()] if np.ndim(values) == 0 else values


def sample_power_gain(model, rng, size=None):
    """
    Draw power gains g = |h|^2 of the given fading model.

    The amplitude is built from an in-phase component with mean
    sqrt(K / (K + 1)) and a zero-mean quadrature component, both
    with variance 1 / (2 (K + 1)), so that E{g} = 1. Rayleigh fading
    is the K = 0 case and consumes the random stream identically.

    :param model: FadingModel
    :param rng: numpy Generator owned by the caller
    :param size: output shape or None for a scalar
    :returns: float or numpy array
    """
    if model.is_awgn:
        return 1.0 if size is None else np.ones(size)
    k_factor = model.k_factor
    sigma = np.sqrt(0.5 / (k_factor + 1.0))
    line_of_sight = np.sqrt(k_factor / (k_factor + 1.0))
    in_phase = line_of_sight + sigma * rng.standard_normal(size)
    quadrature = sigma * rng.standard_normal(size)
    return in_phase * in_phase + quadrature * quadrature


def sample_max_power_gain(model, n, rng, size=None):
    """
    Draw the maximum of n i.i.d. power gains of the given model.
    """
    n = _primaries(n)
    shape = () if size is None else tuple(np.atleast_1d(size))
    draws = sample_power_gain(model, rng, shape + (n,))
    return draws.max(axis=-1)


def sample_ratio(scenario, rng, size=None):
    """
    Draw g1 / max_i g0i for the given scenario.

    :param scenario: RatioScenario
    :param rng: numpy Generator owned by the caller
    :param size: number of draws or None for a scalar
    :returns: float or numpy array
    """
    desired_gain = sample_power_gain(scenario.desired, rng, size)
    interference_gain = sample_max_power_gain(scenario.interference,
                                              scenario.n_primaries,
                                              rng, size)
    return desired_gain / interference_gain


def power_gain_cdf(model, g):
    """
    Return P(gain < g) for a single link.

    Rician: 1 - Q1(sqrt(2K), sqrt(2 (1 + K) g)).
    """
    values = check_non_negative(g, 'g')
    if model.is_awgn:
        result = np.where(values >= 1.0, 1.0, 0.0)
    elif model.is_rayleigh:
        result = -np.expm1(-values)
    else:
        k_factor = model.k_factor
        result = 1.0 - marcum_q1(np.sqrt(2.0 * k_factor),
                                 np.sqrt(2.0 * (1.0 + k_factor) * values))
    return result[()] if np.ndim(result) == 0 else result


def ratio_cdf_ray_ray(x):
    values = check_non_negative(x)
    return _finish(values, values / (1.0 + values), 1.0)


def ratio_pdf_ray_ray(x):
    values = check_non_negative(x)
    return _finish(values, 1.0 / (1.0 + values) ** 2, 0.0)


def ratio_cdf_ray_rice(x, k_factor):
    """
    CDF of X = g1 / g0 with Rayleigh desired and Rician interference:

        F(x) = 1 - (K + 1) / (x + K + 1) exp(-K + (K^2 + K) / (x + K + 1)).

    The exponent is evaluated as -K x / (x + K + 1).
    """
    values = check_non_negative(x)
    k_factor = _k_factor(k_factor)
    denominator = values + k_factor + 1.0
    result = 1.0 - ((k_factor + 1.0) / denominator
                    * np.exp(-k_factor * values / denominator))
    return _finish(values, result, 1.0)


def ratio_pdf_ray_rice(x, k_factor):
    values = check_non_negative(x)
    k_factor = _k_factor(k_factor)
    denominator = values + k_factor + 1.0
    result = ((k_factor + 1.0)
              * (values + (k_factor + 1.0) ** 2) / denominator ** 3
              * np.exp(-k_factor * values / denominator))
    return _finish(values, result, 0.0)


def ratio_cdf_rice_ray(y, k_factor):
    """
    CDF of Y = g1 / g0 with Rician desired and Rayleigh interference:

        F(y) = exp(-K / D) - exp(-K + (K y + K^2 y) / D) / D,
        D = y + K y + 1,

    evaluated as (1 + K) y / D * exp(-K / D); the second exponent
    equals -K / D.
    """
    values = check_non_negative(y, 'y')
    k_factor = _k_factor(k_factor)
    scaled = (1.0 + k_factor) * values
    denominator = scaled + 1.0
    result = scaled / denominator * np.exp(-k_factor / denominator)
    return _finish(values, result, 1.0)


def ratio_pdf_rice_ray(y, k_factor):
    """
    PDF of Y = g1 / g0 with Rician desired and Rayleigh interference,
    the derivative of ratio_cdf_rice_ray:

        p(y) = K (1 + K) / D^2 exp(-K / D)
               + (1 + K) (1 - K + (1 + K) y) / D^3 exp(-K / D)
             = (1 + K) ((1 + K)^2 y + 1) / D^3 exp(-K / D).

    The second term alone is negative for y < (K - 1) / (K + 1);
    the sum is not.
    """
    values = check_non_negative(y, 'y')
    k_factor = _k_factor(k_factor)
    denominator = (1.0 + k_factor) * values + 1.0
    result = ((1.0 + k_factor)
              * ((1.0 + k_factor) ** 2 * values + 1.0) / denominator ** 3
              * np.exp(-k_factor / denominator))
    return _finish(values, result, 0.0)


def ratio_cdf_rice_ray_integral(y, k_factor, spec=None):
    """
    Evaluate P(Y < y) for Rician/Rayleigh fading from its integral form

        1 - integral over t of Q1(sqrt(2K), sqrt(2 (1 + K) y t)) exp(-t),

    by quadrature. Independent of the closed form, used to check it.

    :param y: non-negative scalar
    :param k_factor: linear K
    :param spec: QuadratureSpec or None for the defaults
    :returns: float
    """
    y = check_real(y, 'y', minimum=0.0)
    k_factor = _k_factor(k_factor)
    line_of_sight = np.sqrt(2.0 * k_factor)

    def integrand(t):
        threshold = np.sqrt(2.0 * (1.0 + k_factor) * y * t)
        return marcum_q1(line_of_sight, threshold) * np.exp(-t)

    value, _ = numerics.integrate_semi_infinite(integrand, spec)
    return 1.0 - value


def _maxray_weights(n):
    """
    Return the orders k = 0..n-1 and the signed weights
    n (-1)^k C(n-1, k), with the binomials formed in log space.
    """
    order = np.arange(n, dtype=float)
    log_weights = (np.log(n) + gammaln(n) - gammaln(order + 1.0)
                   - gammaln(n - order))
    signs = np.where(np.arange(n) % 2 == 0, 1.0, -1.0)
    return order, signs * np.exp(log_weights)


def maxray_power_pdf(g, n):
    """
    PDF of the largest of n i.i.d. unit-mean exponential power gains,

        n sum_k (-1)^k C(n-1, k) exp(-(1 + k) g)
            = n exp(-g) (1 - exp(-g))^(n-1),

    evaluated in the product form.

    :param g: non-negative scalar or array_like
    :param n: number of gains, 1 <= n <= 64
    """
    values = check_non_negative(g, 'g')
    n = _primaries(n)
    result = n * np.exp(-values) * (-np.expm1(-values)) ** (n - 1)
    return result[()] if np.ndim(result) == 0 else result


def ratio_cdf_rice_maxray(u, k_factor, n):
    """
    CDF of U = g1 / max_i g0i for a Rician desired link
    over n i.i.d. Rayleigh interference links (K = 0 for Rayleigh):

        F(u) = 1 - n sum_k (-1)^k / (1 + k) C(n-1, k)
                 (1 - (1 + K) u / D_k exp(-(1 + k) K / D_k)),
        D_k = 1 + k + (1 + K) u.

    Since n sum_k (-1)^k C(n-1, k) / (1 + k) = 1, the leading
    one cancels and the sum is evaluated without it. Above
    MAX_ALTERNATING_PRIMARIES the integral form is used.
    """
    values = check_non_negative(u, 'u')
    k_factor = _k_factor(k_factor)
    n = _primaries(n)
    if n > MAX_ALTERNATING_PRIMARIES:
        return ratio_cdf_rice_maxray_integral(values, k_factor, n)
    order, weights = _maxray_weights(n)
    scaled = (1.0 + k_factor) * values[..., np.newaxis]
    denominator = 1.0 + order + scaled
    terms = (weights / (1.0 + order) * scaled / denominator
             * np.exp(-(1.0 + order) * k_factor / denominator))
    return _finish(values, terms.sum(axis=-1), 1.0)


def ratio_pdf_rice_maxray(u, k_factor, n):
    values = check_non_negative(u, 'u')
    k_factor = _k_factor(k_factor)
    n = _primaries(n)
    if n > MAX_ALTERNATING_PRIMARIES:
        return ratio_pdf_rice_maxray_integral(values, k_factor, n)
    order, weights = _maxray_weights(n)
    scaled = (1.0 + k_factor) * values[..., np.newaxis]
    denominator = 1.0 + order + scaled
    terms = (weights / denominator ** 2
             * np.exp(-(1.0 + order) * k_factor / denominator)
             * (1.0 + k_factor
                + k_factor * (1.0 + k_factor) * scaled / denominator))
    return _finish(values, terms.sum(axis=-1), 0.0)


def rician_power_pdf(g, k_factor):
    """
    PDF of a unit-mean Rician power gain,

        (1 + K) exp(-K - (1 + K) g) I0(2 sqrt(K (1 + K) g)),

    with the exponent and the Bessel factor combined as
    exp(-(sqrt(K) - sqrt((1 + K) g))^2) i0e(2 sqrt(K (1 + K) g)).
    """
    values = check_non_negative(g, 'g')
    k_factor = _k_factor(k_factor)
    root_k = np.sqrt(k_factor)
    root_g = np.sqrt((1.0 + k_factor) * values)
    result = ((1.0 + k_factor) * np.exp(-(root_k - root_g) ** 2)
              * bessel_i0e(2.0 * root_k * root_g))
    return result[()] if np.ndim(result) == 0 else result


def _inner_spec(spec):
    if spec is None:
        spec = QuadratureSpec.default().scaled(INNER_TOLERANCE_SCALE)
    return spec


def _maxray_upper_limit(n):
    # the density of max g0i is below n exp(-m), so the mass
    # beyond log(n) + 40 is under 5e-18
    return math.log(n) + 40.0


def ratio_cdf_rice_maxray_integral(u, k_factor, n, spec=None):
    """
    Evaluate P(U < u) for a Rician desired link over n Rayleigh
    interference links by conditioning on the largest gain M:

        F(u) = integral over m of P(g1 < u m) p_M(m),

    with p_M(m) = n exp(-m) (1 - exp(-m))^(n-1). Every term is
    non-negative, so the form stays accurate for any n.

    :param u: non-negative scalar or array_like
    :param k_factor: linear K
    :param n: number of primary receivers
    :param spec: QuadratureSpec, or None for the defaults with the
                 absolute tolerance scaled by INNER_TOLERANCE_SCALE
    :returns: float or numpy array
    """
    values = check_non_negative(u, 'u')
    k_factor = _k_factor(k_factor)
    n = _primaries(n)
    desired = FadingModel.rician(k_factor)
    flat = values.reshape(-1)

    def integrand(m):
        return power_gain_cdf(desired, flat * m) * maxray_power_pdf(m, n)

    result, _ = numerics.integrate_vector(integrand, 0.0,
                                          _maxray_upper_limit(n),
                                          _inner_spec(spec),
                                          points=(math.log(n) + 1.0,))
    return _finish(values, np.reshape(result, values.shape), 1.0)


def ratio_pdf_rice_maxray_integral(u, k_factor, n, spec=None):
    """
    Evaluate the density of U = g1 / max_i g0i as

        p(u) = integral over m of m p_g1(u m) p_M(m),

    the u-derivative of ratio_cdf_rice_maxray_integral.
    """
    values = check_non_negative(u, 'u')
    k_factor = _k_factor(k_factor)
    n = _primaries(n)
    flat = values.reshape(-1)

    def integrand(m):
        return (m * rician_power_pdf(flat * m, k_factor)
                * maxray_power_pdf(m, n))

    result, _ = numerics.integrate_vector(integrand, 0.0,
                                          _maxray_upper_limit(n),
                                          _inner_spec(spec),
                                          points=(math.log(n) + 1.0,))
    return _finish(values, np.reshape(result, values.shape), 0.0)


def has_closed_form(scenario):
    """
    Check if the ratio law of the scenario is known in closed form:
    Rayleigh/Rayleigh, Rayleigh/Rician and Rician/Rayleigh with one
    primary receiver, and any Rayleigh or Rician desired link over
    n Rayleigh interference links. AWGN links have no density.

    :param scenario: RatioScenario
    :returns: bool
    """
    desired, interference = scenario.desired, scenario.interference
    if desired.is_awgn or interference.is_awgn:
        return False
    if scenario.n_primaries == 1:
        return desired.is_rayleigh or interference.is_rayleigh
    return interference.is_rayleigh


@dataclass(frozen=True)
class RatioLaw:
    """
    Evaluable CDF/PDF pair of the ratio selected by a scenario.

    tail_weight is the limit of x^2 p(x) as x grows, i.e. the
    interference density at zero; beyond TAIL_CUTOFF the PDF is
    tail_weight / x^2 to relative order 1 / x.
    """
    name: str
    scenario: RatioScenario
    cdf_function: Callable
    pdf_function: Callable
    tail_weight: float = 0.0

    def cdf(self, x):
        return self.cdf_function(x)

    def pdf(self, x):
        return self.pdf_function(x)

    def sf(self, x):
        return 1.0 - self.cdf_function(x)


def ratio_law(scenario):
    """
    Return the closed-form law of g1 / max_i g0i for the scenario.

    :param scenario: RatioScenario
    :returns: RatioLaw
    :raises NoClosedFormError: for Rician interference with several
                               primary receivers, Rician/Rician fading
                               and AWGN links
    """
    if not has_closed_form(scenario):
        if scenario.desired.is_awgn or scenario.interference.is_awgn:
            message = (f'{scenario} is a point mass with no density; '
                       'use the AWGN capacity formula or Monte Carlo')
        else:
            message = (f'the ratio law of {scenario} could not be found '
                       'in closed form; use the Monte Carlo oracle')
        raise NoClosedFormError(message)
    desired, interference = scenario.desired, scenario.interference
    n = scenario.n_primaries
    if n > 1:
        k_factor = 0.0 if desired.is_rayleigh else desired.k_factor
        law = RatioLaw('rice-maxray', scenario,
                       partial(ratio_cdf_rice_maxray,
                               k_factor=k_factor, n=n),
                       partial(ratio_pdf_rice_maxray,
                               k_factor=k_factor, n=n),
                       tail_weight=0.0)
    elif desired.is_rayleigh and interference.is_rayleigh:
        law = RatioLaw('ray-ray', scenario,
                       ratio_cdf_ray_ray, ratio_pdf_ray_ray,
                       tail_weight=1.0)
    elif desired.is_rayleigh:
        k_factor = interference.k_factor
        law = RatioLaw('ray-rice', scenario,
                       partial(ratio_cdf_ray_rice, k_factor=k_factor),
                       partial(ratio_pdf_ray_rice, k_factor=k_factor),
                       tail_weight=(k_factor + 1.0) * np.exp(-k_factor))
    else:
        k_factor = desired.k_factor
        law = RatioLaw('rice-ray', scenario,
                       partial(ratio_cdf_rice_ray, k_factor=k_factor),
                       partial(ratio_pdf_rice_ray, k_factor=k_factor),
                       tail_weight=1.0)
    logger.debug('ratio law %s selected for %s', law.name, scenario)
    return law
