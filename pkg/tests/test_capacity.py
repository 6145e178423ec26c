import math
import unittest

import numpy as np
from scipy import integrate, optimize

from cogcap import create_app
from cogcap.capacity import average_interference, awgn_capacity, capacity
from cogcap.capacity import capacity_average, capacity_curve, capacity_peak
from cogcap.capacity import capacity_peak_mc, effective_alpha, solve_gamma0
from cogcap.distributions import ratio_cdf_rice_ray
from cogcap.exceptions import NoClosedFormError, ValidationError
from cogcap.models import CapacityQuery, Constraint, FadingModel, Method
from cogcap.models import RatioScenario
from cogcap.presets import get_preset
from cogcap.units import db_to_linear


RAYLEIGH = FadingModel.rayleigh()
RAY_RAY = RatioScenario(RAYLEIGH, RAYLEIGH)
K_6DB = 10 ** 0.6
AWGN = RatioScenario(FadingModel.awgn(), FadingModel.awgn())


def rician(k_factor):
    return FadingModel.rician(k_factor)


def peak(alpha, scenario, c=1.0):
    return CapacityQuery(Constraint.PEAK, alpha, scenario, c)


def average(alpha, scenario, c=1.0):
    return CapacityQuery(Constraint.AVERAGE, alpha, scenario, c)


class EffectiveAlphaTestCase(unittest.TestCase):
    def setUp(self):
        self.settings = create_app()

    def test_product(self):
        self.assertEqual(effective_alpha(peak(1.0, RAY_RAY)), 1.0)
        self.assertEqual(effective_alpha(peak(1.0, RAY_RAY, 10.0)), 10.0)
        self.assertAlmostEqual(effective_alpha(peak(0.1, RAY_RAY, 0.1)),
                               0.01, places=15)

    def test_query_validation(self):
        with self.assertRaises(ValidationError):
            peak(0.0, RAY_RAY)
        with self.assertRaises(ValidationError):
            peak(1.0, RAY_RAY, -1.0)
        with self.assertRaises(ValidationError):
            average(1.0, RatioScenario(RAYLEIGH, RAYLEIGH, 2))


class AverageConstraintTestCase(unittest.TestCase):
    def setUp(self):
        self.settings = create_app()

    def test_rayleigh_threshold(self):
        self.assertAlmostEqual(solve_gamma0(RAY_RAY, 1.0),
                               2.1461932206205836, delta=1e-8)

    def test_threshold_against_trapezoid_oracle(self):
        # g0 / g1 for Rayleigh desired over Rician interference is
        # distributed as the Rician/Rayleigh ratio
        def level(gamma0):
            grid = np.linspace(0.0, gamma0, 20001)
            return integrate.trapezoid(ratio_cdf_rice_ray(grid, 1.0), grid)

        expected = optimize.bisect(lambda g: level(g) - 1.0, 0.5, 10.0,
                                   xtol=1e-12)
        scenario = RatioScenario(RAYLEIGH, rician(1.0))
        self.assertAlmostEqual(solve_gamma0(scenario, 1.0), expected,
                               delta=1e-7)

    def test_threshold_increasing_in_alpha(self):
        scenario = RatioScenario(rician(K_6DB), RAYLEIGH)
        thresholds = [solve_gamma0(scenario, alpha)
                      for alpha in np.geomspace(1e-3, 1e2, 8)]
        self.assertTrue(np.all(np.diff(thresholds) > 0.0))

    def test_constraint_is_met(self):
        for scenario in (RAY_RAY, RatioScenario(RAYLEIGH, rician(K_6DB)),
                         RatioScenario(rician(K_6DB), RAYLEIGH)):
            for alpha in (0.1, 1.0, 10.0):
                result = capacity_average(average(alpha, scenario))
                self.assertAlmostEqual(
                    average_interference(scenario, result.gamma0), alpha,
                    delta=1e-6)

    def test_fading_beats_awgn(self):
        result = capacity_average(average(1.0, RAY_RAY))
        self.assertGreater(result.capacity, 1.0)
        self.assertEqual(result.method, Method.CLOSED_FORM)
        self.assertGreater(result.gamma0, 0.0)

    def test_rician_interference_can_fall_below_awgn(self):
        alpha = db_to_linear(20.0)
        result = capacity_average(average(alpha, RatioScenario(
            RAYLEIGH, rician(K_6DB))))
        self.assertAlmostEqual(result.capacity, 6.2116, delta=5e-4)
        self.assertAlmostEqual(awgn_capacity(alpha), 6.6582, delta=5e-5)
        self.assertLess(result.capacity, awgn_capacity(alpha))
        rayleigh = capacity_average(average(alpha, RAY_RAY))
        self.assertGreaterEqual(rayleigh.capacity, awgn_capacity(alpha))

    def test_awgn_reference(self):
        result = capacity(average(10.0, AWGN))
        self.assertAlmostEqual(result.capacity, 3.4594316186372973,
                               places=14)
        self.assertEqual(result.gamma0, 11.0)
        self.assertEqual(awgn_capacity(10.0), result.capacity)

    def test_average_exceeds_peak(self):
        for alpha in (0.1, 1.0, 10.0):
            self.assertGreater(capacity(average(alpha, RAY_RAY)).capacity,
                               capacity(peak(alpha, RAY_RAY)).capacity)

    def test_no_closed_form(self):
        with self.assertRaises(NoClosedFormError):
            capacity(average(1.0, RatioScenario(rician(1.0), rician(2.0))))

    def test_wrong_constraint(self):
        with self.assertRaises(ValidationError):
            capacity_average(peak(1.0, RAY_RAY))


class PeakConstraintTestCase(unittest.TestCase):
    def setUp(self):
        self.settings = create_app()

    def test_rayleigh_anchor(self):
        result = capacity_peak(peak(1.0, RAY_RAY))
        self.assertAlmostEqual(result.capacity, 1.0 / math.log(2.0),
                               delta=1e-6)
        self.assertIsNone(result.gamma0)
        self.assertLess(result.quadrature_error, 1e-6)

    def test_vanishing_alpha(self):
        for scenario in (RAY_RAY, RatioScenario(RAYLEIGH, rician(K_6DB)),
                         RatioScenario(rician(K_6DB), RAYLEIGH, 3)):
            self.assertLess(capacity_peak(peak(1e-12, scenario)).capacity,
                            1e-10)

    def test_awgn_reference(self):
        self.assertAlmostEqual(capacity(peak(10.0, AWGN)).capacity,
                               3.4594316186372973, places=14)

    def test_power_ratio_scaling_is_exact(self):
        for scenario in (RAY_RAY, RatioScenario(RAYLEIGH, rician(K_6DB))):
            for constraint in (Constraint.PEAK, Constraint.AVERAGE):
                scaled = CapacityQuery(constraint, 2.0, scenario, 10.0)
                direct = CapacityQuery(constraint, 20.0, scenario)
                self.assertEqual(capacity(scaled).capacity,
                                 capacity(direct).capacity)

    def test_increasing_in_alpha(self):
        query = peak(1.0, RatioScenario(RAYLEIGH, rician(K_6DB)))
        alphas = 10 ** (np.linspace(-20.0, 20.0, 9) / 10)
        values = [result.capacity
                  for result in capacity_curve(query, alphas)]
        self.assertTrue(np.all(np.diff(values) > 0.0))

    def test_nonincreasing_in_primaries(self):
        for alpha in (0.1, 1.0, 10.0):
            values = [capacity_peak(peak(alpha, RatioScenario(
                rician(K_6DB), RAYLEIGH, n))).capacity for n in (1, 2, 3)]
            self.assertTrue(np.all(np.diff(values) <= 0.0))

    def test_many_primaries_match_sampling(self):
        query = peak(1.0, RatioScenario(RAYLEIGH, RAYLEIGH, 40))
        closed = capacity_peak(query)
        sampled = capacity_peak_mc(query, samples=200000, seed=40)
        self.assertEqual(closed.method, Method.CLOSED_FORM)
        self.assertAlmostEqual(closed.capacity, sampled.capacity,
                               delta=4.0 * sampled.std_error)
        self.assertAlmostEqual(closed.capacity, 0.2975, delta=0.01)

    def test_rician_interference_crosses_awgn(self):
        preset = get_preset('fig4')
        low, high = db_to_linear(-20.0), db_to_linear(20.0)
        for curve in preset.curves:
            if curve.scenario.interference.is_rayleigh:
                continue
            self.assertGreater(capacity(curve.query(low)).capacity,
                               awgn_capacity(low), msg=curve.label)
            self.assertLess(capacity(curve.query(high)).capacity,
                            awgn_capacity(high), msg=curve.label)

    def test_decreasing_in_k_at_low_alpha(self):
        alpha = db_to_linear(-10.0)
        values = [capacity_peak(peak(alpha, RatioScenario(
            RAYLEIGH, rician(db_to_linear(k_db))))).capacity
            for k_db in (0.0, 6.0, 15.0)]
        self.assertTrue(np.all(np.diff(values) < 0.0), msg=values)

    def test_multi_primary_rician_interference_needs_sampling(self):
        scenario = RatioScenario(RAYLEIGH, rician(K_6DB), 2)
        with self.assertRaises(NoClosedFormError):
            capacity_peak(peak(1.0, scenario))
        with self.assertLogs('cogcap.capacity', level='WARNING'):
            result = capacity(peak(1.0, scenario), samples=20000, seed=3)
        self.assertEqual(result.method, Method.MONTE_CARLO)
        self.assertEqual(result.samples, 20000)
        self.assertGreater(result.std_error, 0.0)

    def test_sampling_agrees_with_closed_form(self):
        query = peak(1.0, RAY_RAY)
        result = capacity_peak_mc(query, samples=200000, seed=17)
        self.assertAlmostEqual(result.capacity, 1.0 / math.log(2.0),
                               delta=4.0 * result.std_error)

    def test_sampling_is_reproducible(self):
        query = peak(1.0, RatioScenario(RAYLEIGH, rician(K_6DB), 2))
        first = capacity_peak_mc(query, samples=50000, seed=99)
        second = capacity_peak_mc(query, samples=50000, seed=99)
        self.assertEqual(first, second)

    def test_more_primaries_lower_sampled_capacity(self):
        one = capacity_peak(peak(1.0, RatioScenario(RAYLEIGH,
                                                    rician(K_6DB))))
        three = capacity_peak_mc(peak(1.0, RatioScenario(RAYLEIGH,
                                                         rician(K_6DB), 3)),
                                 samples=100000, seed=5)
        self.assertLess(three.capacity + 4.0 * three.std_error, one.capacity)
