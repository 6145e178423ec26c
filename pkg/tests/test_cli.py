import os
import unittest
from unittest import mock

from click.testing import CliRunner

from cogcap import create_app, distributions
from cogcap.capacity import capacity
from cogcap.cli import cli
from cogcap.cli.output import format_number
from cogcap.models import CapacityQuery, Constraint, FadingModel
from cogcap.models import RatioScenario
from cogcap.units import db_to_linear


RAYLEIGH = FadingModel.rayleigh()


def data_lines(output):
    return [line for line in output.splitlines()
            if line and not line.startswith('#')]


class CommandTestCase(unittest.TestCase):
    def setUp(self):
        self.settings = create_app()
        self.runner = CliRunner(mix_stderr=False)

    def invoke(self, *args):
        return self.runner.invoke(cli, list(args))


class EvalTestCase(CommandTestCase):
    def test_rayleigh_values(self):
        result = self.invoke('eval', 'pdf', '--x', '1', '--x', '0')
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(data_lines(result.output), ['x,value', '1,0.25',
                                                     '0,1'])
        result = self.invoke('eval', 'cdf', '--x', '0,1')
        self.assertEqual(data_lines(result.output)[1:], ['0,0', '1,0.5'])

    def test_grid_matches_library(self):
        result = self.invoke('eval', 'cdf', '--desired', 'rician',
                             '--desired-k-db', '6', '--x-range', '0:4:3')
        self.assertEqual(result.exit_code, 0)
        k_factor = db_to_linear(6.0)
        values = distributions.ratio_cdf_rice_ray([0.0, 2.0, 4.0], k_factor)
        expected = [f'{format_number(x)},{format_number(value)}'
                    for x, value in zip((0.0, 2.0, 4.0), values)]
        self.assertEqual(data_lines(result.output)[1:], expected)

    def test_no_closed_form(self):
        result = self.invoke('eval', 'pdf', '--x', '1',
                             '--interference', 'rician',
                             '--interference-k-db', '6',
                             '--n-primaries', '2')
        self.assertEqual(result.exit_code, 2)
        self.assertIn('Monte Carlo', result.stderr)

    def test_usage_errors(self):
        self.assertEqual(self.invoke('eval', 'pdf').exit_code, 2)
        self.assertEqual(self.invoke('eval', 'pdf', '--x', '-1').exit_code, 2)
        self.assertEqual(self.invoke('eval', 'pdf', '--x', '1',
                                     '--desired', 'rician').exit_code, 2)
        self.assertEqual(self.invoke('eval', 'pdf', '--x', '1',
                                     '--desired-k-db', '3').exit_code, 2)


class CapacityCommandTestCase(CommandTestCase):
    def test_header(self):
        result = self.invoke('capacity', '--constraint', 'avg',
                             '--alpha-db', '0')
        self.assertEqual(result.exit_code, 0)
        lines = data_lines(result.output)
        self.assertEqual(lines[0], 'alpha_db,capacity_bits_per_hz,gamma0,'
                                   'awgn_bits_per_hz')
        self.assertEqual(len(lines), 2)
        self.assertTrue(lines[1].startswith('0,'))
        self.assertTrue(lines[1].endswith(',1'))

    def test_matches_library(self):
        result = self.invoke('capacity', '--constraint', 'peak',
                             '--interference', 'rician',
                             '--interference-k-db', '6',
                             '--alpha-db', '3', '--c-db', '10')
        self.assertEqual(result.exit_code, 0)
        scenario = RatioScenario(RAYLEIGH,
                                 FadingModel.rician(db_to_linear(6.0)))
        query = CapacityQuery(Constraint.PEAK, db_to_linear(3.0), scenario,
                              db_to_linear(10.0))
        row = data_lines(result.output)[1].split(',')
        self.assertEqual(row[1], format_number(capacity(query).capacity))

    def test_default_grid(self):
        result = self.invoke('capacity', '--constraint', 'peak')
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(len(data_lines(result.output)),
                         1 + self.settings['ALPHA_DB_POINTS'])

    def test_invalid_arguments(self):
        for args in (('--alpha-db-range', '5:1:3'),
                     ('--alpha-db-range', '0:1:1'),
                     ('--alpha-db-range', '0:1'),
                     ('--alpha-db', '0', '--alpha-db-range', '0:1:2')):
            result = self.invoke('capacity', '--constraint', 'peak', *args)
            self.assertEqual(result.exit_code, 2, msg=str(args))
        result = self.invoke('capacity', '--constraint', 'avg',
                             '--alpha-db', '0', '--n-primaries', '2')
        self.assertEqual(result.exit_code, 2)
        self.assertIn('one primary receiver', result.stderr)
        result = self.invoke('capacity', '--constraint', 'peak',
                             '--alpha-db', '0', '--mc-samples', '10',
                             '--interference', 'rician',
                             '--interference-k-db', '6',
                             '--n-primaries', '2')
        self.assertEqual(result.exit_code, 2)

    def test_monte_carlo_fallback(self):
        result = self.invoke('capacity', '--constraint', 'peak',
                             '--interference', 'rician',
                             '--interference-k-db', '6',
                             '--n-primaries', '2', '--alpha-db', '0',
                             '--mc-samples', '5000', '--seed', '3')
        self.assertEqual(result.exit_code, 0)
        lines = result.output.splitlines()
        self.assertTrue(lines[0].startswith('# '))
        self.assertIn('Monte Carlo', lines[0])
        self.assertIn('seed 3', lines[0])
        self.assertEqual(lines[1], 'alpha_db,capacity_bits_per_hz,'
                                   'std_error,awgn_bits_per_hz')
        self.assertNotEqual(lines[2].split(',')[2], '')


class FigureCommandTestCase(CommandTestCase):
    def test_long_format(self):
        result = self.invoke('figure', 'fig7', '--alpha-db-range', '-10:10:3')
        self.assertEqual(result.exit_code, 0)
        lines = data_lines(result.output)
        self.assertEqual(lines[0], 'curve,alpha_db,capacity_bits_per_hz,'
                                   'gamma0,std_error,awgn_bits_per_hz')
        self.assertEqual(len(lines), 1 + 3 * 3)
        self.assertEqual([line.split(',')[0] for line in lines[1::3]],
                         ['n=1', 'n=2', 'n=3'])
        self.assertTrue(result.output.startswith('# fig7: '))

    def test_directory_output(self):
        with self.runner.isolated_filesystem():
            result = self.invoke('figure', 'fig5', '--alpha-db-range',
                                 '0:10:2', '--output', 'figures/')
            self.assertEqual(result.exit_code, 0)
            self.assertEqual(sorted(os.listdir('figures')),
                             ['fig5_K_0dB.csv', 'fig5_K_15dB.csv',
                              'fig5_K_6dB.csv', 'fig5_Rayleigh_Rayleigh.csv'])
            with open(os.path.join('figures', 'fig5_K_6dB.csv')) as stream:
                lines = data_lines(stream.read())
            self.assertEqual(lines[0], 'alpha_db,capacity_bits_per_hz,'
                                       'gamma0,std_error,awgn_bits_per_hz')
            self.assertEqual(len(lines), 3)

    def test_deterministic(self):
        args = ('figure', 'fig8', '--alpha-db-range', '0:10:2',
                '--mc-samples', '2000', '--seed', '5')
        first = self.invoke(*args)
        second = self.invoke(*args)
        self.assertEqual(first.exit_code, 0)
        self.assertEqual(first.output, second.output)
        self.assertIn('Monte Carlo', first.output)

    def test_unknown_preset(self):
        self.assertEqual(self.invoke('figure', 'fig9').exit_code, 2)


class ValidateCommandTestCase(CommandTestCase):
    def test_anchors_pass(self):
        result = self.invoke('validate', '--check', 'anchors')
        self.assertEqual(result.exit_code, 0)
        lines = data_lines(result.output)
        self.assertEqual(lines[0], 'check,status,detail')
        self.assertTrue(all(',PASS,' in line for line in lines[1:]))

    def test_detects_perturbed_density(self):
        original = distributions.ratio_pdf_ray_ray
        with mock.patch('cogcap.distributions.ratio_pdf_ray_ray',
                        side_effect=lambda x: 1.01 * original(x)):
            result = self.invoke('validate', '--check', 'anchors')
        self.assertEqual(result.exit_code, 1)
        self.assertIn('anchor-peak-rayleigh,FAIL', result.output)
        self.assertIn('checks failed', result.stderr)

    def test_unknown_group(self):
        self.assertEqual(self.invoke('validate', '--check',
                                     'nothing').exit_code, 2)


class ConfigFileTestCase(CommandTestCase):
    def test_defaults_and_override(self):
        with self.runner.isolated_filesystem():
            with open('run.cfg', 'w') as stream:
                stream.write('constraint = peak\n'
                             'alpha-db = 0\n'
                             'c-db = 10\n')
            from_file = self.runner.invoke(
                cli, ['--config', 'run.cfg', 'capacity'])
            explicit = self.runner.invoke(
                cli, ['capacity', '--constraint', 'peak', '--alpha-db', '0',
                      '--c-db', '10'])
            overridden = self.runner.invoke(
                cli, ['--config', 'run.cfg', 'capacity', '--c-db', '0'])
        self.assertEqual(from_file.exit_code, 0)
        self.assertEqual(from_file.output, explicit.output)
        self.assertEqual(overridden.exit_code, 0)
        self.assertNotEqual(overridden.output, from_file.output)

    def test_missing_file(self):
        result = self.invoke('--config', 'missing.cfg', 'capacity')
        self.assertEqual(result.exit_code, 2)
