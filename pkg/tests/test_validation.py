import unittest

from cogcap import create_app
from cogcap.models import McEstimate
from cogcap.validation import CHECK_GROUPS, _agreement_row, run_checks


class ValidationTestCase(unittest.TestCase):
    def setUp(self):
        self.settings = create_app()

    def test_closed_form_groups_pass(self):
        results = run_checks(10000, 42, groups=('anchors', 'degeneracy',
                                                'special-functions'))
        failed = [result for result in results if not result.passed]
        self.assertEqual(failed, [])
        self.assertEqual([result.name for result in results[:3]],
                         ['marcum-identity', 'marcum-anchor',
                          'bessel-anchor'])

    def test_sampled_cdf_group(self):
        results = run_checks(200000, 42, groups=('monte-carlo-cdf',))
        self.assertEqual(len(results), 7)
        self.assertTrue(all(result.passed for result in results),
                        msg=[result.detail for result in results])

    def test_sampled_cdf_group_at_default_seed(self):
        results = run_checks(10 ** 6, 42, workers=4,
                             groups=('monte-carlo-cdf',))
        self.assertEqual(len(results), 7)
        failed = [(result.name, result.detail) for result in results
                  if not result.passed]
        self.assertEqual(failed, [])

    def test_deterministic(self):
        first = run_checks(5000, 7, groups=('monte-carlo-capacity',))
        second = run_checks(5000, 7, groups=('monte-carlo-capacity',))
        self.assertEqual(first, second)

    def test_agreement_slack(self):
        estimates = [McEstimate(0.0, 0.1, 1000, 0)] * 20
        references = [0.0] * 18 + [1.0, 1.0]
        self.assertTrue(_agreement_row('rows', estimates, references).passed)
        references[17] = 1.0
        row = _agreement_row('rows', estimates, references)
        self.assertFalse(row.passed)
        self.assertEqual(row.detail, '17/20 within 3 sigma')

    def test_group_order(self):
        self.assertEqual(list(CHECK_GROUPS)[0], 'special-functions')
        self.assertEqual(list(CHECK_GROUPS)[-1], 'qualitative')
