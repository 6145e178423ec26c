"""
Monte Carlo estimators for the ratio laws and both capacity functionals.

Draws come from numpy's Philox counter-based generator keyed by the seed.
Samples are produced in fixed blocks; block i uses the stream
Philox(key=seed).jumped(i), so an estimate is a function of
(seed, samples) alone, whatever the number of workers.
"""
from concurrent.futures import ThreadPoolExecutor

import logging
import math

import numpy as np

from . import capacity, settings
from .distributions import sample_power_gain, sample_ratio
from .models import Constraint, McEstimate
from .models import check_count, check_real, check_seed


logger = logging.getLogger(__name__)

MIN_SAMPLES = 1000


def block_generator(seed, index):
    """
    Return the generator of the given block of the seed's stream.
    """
    return np.random.Generator(np.random.Philox(key=seed).jumped(index))


def _defaults(samples, seed, workers):
    if samples is None:
        samples = settings['MC_SAMPLES']
    if seed is None:
        seed = settings['MC_SEED']
    if workers is None:
        workers = settings['MC_WORKERS']
    return (check_count(samples, 'samples', minimum=MIN_SAMPLES),
            check_seed(seed),
            check_count(workers, 'workers'))


def draw(sampler, samples, seed, workers=1, block_size=None):
    """
    Evaluate sampler(rng, size) block by block and concatenate
    the results in block order.

    :param sampler: callable returning an array of `size` draws
    :param samples: total number of draws
    :param seed: 64-bit seed
    :param workers: threads evaluating blocks
    :param block_size: draws per block, defaults to MC_BLOCK_SIZE
    :returns: numpy array of length samples
    """
    if block_size is None:
        block_size = settings['MC_BLOCK_SIZE']
    block_size = check_count(block_size, 'block_size')
    blocks = [(index, min(block_size, samples - start))
              for index, start in enumerate(range(0, samples, block_size))]

    def run(block):
        index, size = block
        return sampler(block_generator(seed, index), size)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, blocks))
    else:
        parts = [run(block) for block in blocks]
    logger.debug('%d draws in %d blocks on %d workers',
                 samples, len(blocks), workers)
    return np.concatenate(parts)


def _mean_estimate(values, samples, seed):
    value = float(np.mean(values))
    std_error = float(np.std(values, ddof=1)) / math.sqrt(samples)
    return McEstimate(value, std_error, samples, seed)


def _proportion_estimate(hits, samples, seed, width=1.0):
    p = hits / samples
    std_error = math.sqrt(p * (1.0 - p) / samples) / width
    return McEstimate(p / width, std_error, samples, seed)


def _ratio_draws(scenario, samples, seed, workers):
    def sampler(rng, size):
        return sample_ratio(scenario, rng, size)

    return draw(sampler, samples, seed, workers)


def point_seed(seed, index):
    """
    Return the seed of the index-th grid point, derived from
    (seed, index) through numpy's SeedSequence hash.
    """
    state = np.random.SeedSequence((seed, index)).generate_state(1, np.uint64)
    return int(state[0])


def _cdf_estimate(scenario, x, samples, seed, workers):
    ratios = _ratio_draws(scenario, samples, seed, workers)
    return _proportion_estimate(int(np.count_nonzero(ratios < x)),
                                samples, seed)


def mc_ratio_cdf_grid(scenario, points, samples=None, seed=None,
                      workers=None):
    """
    Estimate P(g1 / max_i g0i < x) at every grid point.

    Each point draws its own samples with seed point_seed(seed, i),
    so the errors at different points are independent.

    :param scenario: RatioScenario
    :param points: non-negative grid
    :returns: list of McEstimate with binomial standard errors,
              each carrying the seed of its point
    """
    samples, seed, workers = _defaults(samples, seed, workers)
    points = [check_real(x, 'x', 0.0) for x in np.atleast_1d(points)]
    return [_cdf_estimate(scenario, x, samples, point_seed(seed, index),
                          workers)
            for index, x in enumerate(points)]


def mc_ratio_cdf(scenario, x, samples=None, seed=None, workers=None):
    """
    Estimate P(g1 / max_i g0i < x) with standard error
    sqrt(p (1 - p) / N).
    """
    x = check_real(x, 'x', 0.0)
    samples, seed, workers = _defaults(samples, seed, workers)
    return _cdf_estimate(scenario, x, samples, seed, workers)


def mc_ratio_pdf(scenario, x, bandwidth, samples=None, seed=None,
                 workers=None):
    """
    Estimate the ratio density at x by the fraction of draws
    in a bin of the given width centred on x (shifted to
    start at 0 near the origin), divided by the width.

    :param scenario: RatioScenario
    :param x: non-negative point
    :param bandwidth: bin width h > 0
    :returns: McEstimate with standard error sqrt(p (1 - p) / N) / h
    """
    x = check_real(x, 'x', 0.0)
    bandwidth = check_real(bandwidth, 'bandwidth', 0.0, strict=True)
    samples, seed, workers = _defaults(samples, seed, workers)
    lower = max(x - 0.5 * bandwidth, 0.0)
    upper = lower + bandwidth
    ratios = _ratio_draws(scenario, samples, seed, workers)
    hits = int(np.count_nonzero((ratios >= lower) & (ratios < upper)))
    return _proportion_estimate(hits, samples, seed, bandwidth)


def _rate_sampler(query):
    scenario = query.scenario
    alpha_eff = capacity.effective_alpha(query)
    if query.constraint is Constraint.PEAK:
        def sampler(rng, size):
            return np.log1p(alpha_eff * sample_ratio(scenario, rng, size))
        return sampler

    gamma0 = capacity.solve_gamma0(scenario, alpha_eff)

    # threshold policy: transmit only while gamma0 g1 / g0 > 1
    def sampler(rng, size):
        desired_gain = sample_power_gain(scenario.desired, rng, size)
        interference_gain = sample_power_gain(scenario.interference,
                                              rng, size)
        return np.maximum(np.log(gamma0 * desired_gain
                                 / interference_gain), 0.0)
    return sampler


def mc_capacity(query, samples=None, seed=None, workers=None):
    """
    Estimate the capacity of the query in bits/s/Hz by sampling.

    Peak constraint: mean of log2(1 + alpha_eff g1 / max_i g0i).
    Average constraint: mean rate of the threshold policy,
    max(log2(gamma0 g1 / g0), 0), with gamma0 from solve_gamma0.

    :param query: CapacityQuery; the average constraint needs n = 1
    :param samples: number of draws >= 1000, defaults to MC_SAMPLES
    :param seed: 64-bit seed, defaults to MC_SEED
    :param workers: threads, defaults to MC_WORKERS
    :returns: McEstimate with the sample-variance standard error
    """
    samples, seed, workers = _defaults(samples, seed, workers)
    rates = draw(_rate_sampler(query), samples, seed, workers)
    rates *= capacity.LOG2E
    estimate = _mean_estimate(rates, samples, seed)
    logger.debug('Monte Carlo capacity of %s at alpha_eff = %g: %.6g +/- %.2g',
                 query.scenario, capacity.effective_alpha(query),
                 estimate.value, estimate.std_error)
    return estimate


def mc_average_interference(scenario, alpha_eff, samples=None, seed=None,
                            workers=None):
    """
    Estimate the average interference-to-noise ratio
    E{(gamma0 - g0 / g1)+} produced at the primary receiver by the
    threshold policy solved for alpha_eff; it should equal alpha_eff.
    """
    samples, seed, workers = _defaults(samples, seed, workers)
    gamma0 = capacity.solve_gamma0(scenario, alpha_eff)

    def sampler(rng, size):
        desired_gain = sample_power_gain(scenario.desired, rng, size)
        interference_gain = sample_power_gain(scenario.interference,
                                              rng, size)
        return np.maximum(gamma0 - interference_gain / desired_gain, 0.0)

    return _mean_estimate(draw(sampler, samples, seed, workers),
                          samples, seed)
