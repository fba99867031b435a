"""
Unit tests for the cli app.
Tests cover:
- Artifact rendering and reading in CSV and JSON
- The mask, sampling, biorth, gramian, analyze and synthesize commands
- Exit codes for bad parameters, unreadable inputs, level mismatches and failed checks
- The read-only JSON views and the public config
"""
import json
import tempfile
from io import StringIO
from pathlib import Path
from unittest import mock

import tablib
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase
from rest_framework.test import APISimpleTestCase

from apps.cli.artifacts import Artifact, read_decomposition, read_rows, read_signal
from apps.cli.constants import DECOMPOSITION_COLUMNS, OutputFormat
from apps.masks.constants import PRINTED_MASKS
from ripplets.exceptions import SignalFormatError

FIXTURES = Path(__file__).resolve().parent / 'fixtures'


def run(*args):
    """Run a command and return (stdout, stderr)."""
    out, err = StringIO(), StringIO()
    call_command(*args, stdout=out, stderr=err)
    return out.getvalue(), err.getvalue()


def csv_rows(text):
    return tablib.Dataset().load(text, format='csv').dict


class CommandTestCase(SimpleTestCase):
    """Command tests with a scratch directory."""

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.dir = Path(self.tmp.name)

    def assertExitCode(self, code, *args):
        with self.assertRaises(CommandError) as ctx:
            run(*args)
        self.assertEqual(ctx.exception.returncode, code)
        return ctx.exception


class ArtifactTests(CommandTestCase):
    """Test artifact rendering and reading."""

    def test_csv_render(self):
        """Test a header row plus one line per record."""
        text = Artifact(('index', 'value'), [(0, 1.5), (1, -2.0)]).render(OutputFormat.CSV)
        self.assertEqual(text.splitlines(), ['index,value', '0,1.5', '1,-2.0'])

    def test_json_render(self):
        """Test metadata, columns, records and notes."""
        artifact = Artifact(('index', 'value'), [(0, 1.5)], {'n': 3}, ['note'])
        payload = json.loads(artifact.render(OutputFormat.JSON))
        self.assertEqual(payload['metadata'], {'n': 3})
        self.assertEqual(payload['rows'], [{'index': 0, 'value': 1.5}])
        self.assertEqual(payload['notes'], ['note'])

    def test_read_signal_fixtures(self):
        """Test both bundled signal files."""
        self.assertEqual(len(read_signal(FIXTURES / 'random_signal.csv')), 64)
        spike = read_signal(FIXTURES / 'spike.json')
        self.assertEqual(spike.to_pairs(), [(31, 0.3), (32, 1.0), (33, 0.3)])

    def test_missing_file(self):
        """Test an unreadable path."""
        with self.assertRaises(SignalFormatError):
            read_rows(self.dir / 'missing.csv')

    def test_bad_json(self):
        """Test malformed JSON."""
        path = self.dir / 'bad.json'
        path.write_text('{"rows": [', encoding='utf-8')
        with self.assertRaises(SignalFormatError):
            read_rows(path)

    def test_bad_value(self):
        """Test a non-numeric sample."""
        path = self.dir / 'bad.csv'
        path.write_text('index,value\n0,abc\n', encoding='utf-8')
        with self.assertRaises(SignalFormatError):
            read_signal(path)

    def test_decomposition_rows(self):
        """Test kinds are kept as strings."""
        path = self.dir / 'd.csv'
        path.write_text('level,kind,index,value\n0,approx,0,1.0\n0,detail,0,0.5\n', encoding='utf-8')
        self.assertEqual(read_decomposition(path), [(0, 'approx', 0, 1.0), (0, 'detail', 0, 0.5)])


class MaskCommandTests(CommandTestCase):
    """Test the mask command."""

    def test_csv_output(self):
        """Test masks of levels 0..8 sum to 1 per level."""
        out, _ = run('mask', '--m', '0..8')
        self.assertTrue(out.startswith('level,index,value'))
        totals = {}
        for row in csv_rows(out):
            totals[int(row['level'])] = totals.get(int(row['level']), 0.0) + float(row['value'])
        self.assertEqual(sorted(totals), list(range(9)))
        for total in totals.values():
            self.assertAlmostEqual(total, 1.0, places=12)

    def test_check_passes(self):
        """Test the printed masks are reproduced."""
        _, err = run('mask', '--m', '0..8', '--check')
        self.assertIn('match the printed masks', err)

    def test_check_failure(self):
        """Test a corrupted reference gives exit code 5."""
        with mock.patch.dict(PRINTED_MASKS, {1: (0.0413, 0.2500, 0.4375)}):
            self.assertExitCode(5, 'mask', '--m', '0..2', '--check')

    def test_check_without_reference(self):
        """Test --check for a family with no printed table."""
        self.assertExitCode(2, 'mask', '--n', '4', '--check')

    def test_bad_tension(self):
        """Test mu <= 1 gives exit code 2."""
        error = self.assertExitCode(2, 'mask', '--mu', '1.0')
        self.assertIn('mu', str(error))

    def test_bad_level_range(self):
        """Test an unparseable level range."""
        self.assertExitCode(2, 'mask', '--m', 'a..b')

    def test_json_metadata(self):
        """Test the metadata records parameters and the convention."""
        out, _ = run('mask', '--m', '1', '--format', 'json')
        payload = json.loads(out)
        self.assertEqual(payload['metadata']['mu'], 1.1)
        self.assertEqual(payload['metadata']['m'], [1])
        self.assertEqual(payload['metadata']['convention']['synthesis_gain'], 2.0)
        self.assertEqual(len(payload['rows']), 5)

    def test_out_file(self):
        """Test --out writes the artifact and leaves stdout empty."""
        path = self.dir / 'masks.csv'
        out, _ = run('mask', '--m', '0..3', '--out', str(path))
        self.assertEqual(out, '')
        self.assertEqual(path.read_bytes().decode('utf-8'), run('mask', '--m', '0..3')[0])

    def test_unwritable_out(self):
        """Test a path in a missing directory gives exit code 3."""
        self.assertExitCode(3, 'mask', '--out', str(self.dir / 'missing' / 'masks.csv'))

    def test_deterministic(self):
        """Test repeated runs are identical."""
        self.assertEqual(run('mask', '--m', '0..8')[0], run('mask', '--m', '0..8')[0])


class SampleCommandTests(CommandTestCase):
    """Test phi, psi, phidual and psidual."""

    def samples(self, *args):
        out, _ = run(*args)
        return [(float(r['x']), float(r['value'])) for r in csv_rows(out)]

    def test_phi_support(self):
        """Test phi^(3,0) vanishes beyond 5/2."""
        rows = self.samples('phi', '--m', '0')
        self.assertTrue(rows)
        self.assertLess(max((abs(v) for x, v in rows if x > 2.5), default=0.0), 1e-8)
        self.assertGreater(max(v for _, v in rows), 0.5)

    def test_phi_overlay(self):
        """Test --compare-bspline adds a B-spline column."""
        out, _ = run('phi', '--m', '1', '--compare-bspline')
        self.assertEqual(out.splitlines()[0], 'x,value,bspline')

    def test_psi_support(self):
        """Test psi^(3,0) vanishes outside [-3/2, 4]."""
        rows = self.samples('psi', '--m', '0')
        outside = [abs(v) for x, v in rows if x < -1.5 or x > 4.0]
        self.assertLess(max(outside, default=0.0), 1e-8)

    def test_biorthogonal_and_duals(self):
        """Test the biorthogonal samplers produce data."""
        for args in (('psi', '--m', '1', '--biorthogonal'), ('phidual', '--m', '1'), ('psidual', '--m', '1')):
            self.assertTrue(self.samples(*args), msg=args[0])

    def test_resolution_too_coarse(self):
        """Test K below m + depth gives exit code 2."""
        self.assertExitCode(2, 'phi', '--m', '2', '--depth', '8', '--resolution', '6')

    def test_explicit_resolution(self):
        """Test the grid step follows K."""
        rows = self.samples('phi', '--m', '0', '--depth', '6', '--resolution', '7')
        self.assertAlmostEqual(rows[1][0] - rows[0][0], 2.0 ** -7)


class TableCommandTests(CommandTestCase):
    """Test biorth and gramian."""

    def test_biorth_check(self):
        """Test solver, closed form and printed values agree."""
        out, err = run('biorth', '--m', '0..8', '--check')
        rows = csv_rows(out)
        self.assertEqual(out.splitlines()[0], 'm,alpha,solver,closed_form,deviation,printed,notes')
        self.assertIn('not asserted', err)
        self.assertNotIn('mismatch', {row['notes'] for row in rows})
        self.assertIn('excluded', {row['notes'] for row in rows})

    def test_biorth_json(self):
        """Test the m = 0 column is {1/2, 1/2} without a closed form."""
        payload = json.loads(run('biorth', '--m', '0', '--format', 'json')[0])
        values = [row['solver'] for row in payload['rows']]
        self.assertEqual(len(values), 2)
        for value in values:
            self.assertAlmostEqual(value, 0.5, places=12)
        self.assertIsNone(payload['rows'][0]['closed_form'])

    def test_gramian(self):
        """Test a symmetric Gramian with the printed comparison note."""
        out, err = run('gramian', '--m', '0')
        rows = csv_rows(out)
        self.assertTrue(rows)
        self.assertIn('printed list', err)
        self.assertEqual(out.splitlines()[0], 'level,index,gramian,pou_gramian')

    def test_gramian_iteration_limit(self):
        """Test a one-step limit with a tight tolerance gives exit code 4."""
        self.assertExitCode(4, 'gramian', '--m', '0', '--max-iter', '1', '--tol', '1e-15')


class TransformCommandTests(CommandTestCase):
    """Test analyze and synthesize."""

    def test_spike_default(self):
        """Test the bundled spike is analyzed when no input is given."""
        out, err = run('analyze')
        self.assertEqual(out.splitlines()[0], ','.join(DECOMPOSITION_COLUMNS))
        self.assertIn('coefficients above', err)
        self.assertEqual(err, run('analyze', str(FIXTURES / 'spike.json'))[1])

    def test_compare_stationary(self):
        """Test both families are counted."""
        _, err = run('analyze', '--compare-stationary')
        self.assertIn('nonstationary', err)
        self.assertIn('reference 26 vs 39', err)

    def test_round_trip_csv(self):
        """Test analyze then synthesize reproduces the fixture signal."""
        path = self.dir / 'decomposition.csv'
        _, err = run('analyze', str(FIXTURES / 'random_signal.csv'), '--verify-pr', '--out', str(path))
        self.assertIn('round-trip error', err)
        out, _ = run('synthesize', str(path))
        reconstructed = {int(r['index']): float(r['value']) for r in csv_rows(out)}
        original = dict(read_signal(FIXTURES / 'random_signal.csv').to_pairs())
        for index in set(reconstructed) | set(original):
            self.assertAlmostEqual(reconstructed.get(index, 0.0), original.get(index, 0.0), delta=1e-10)

    def test_round_trip_json(self):
        """Test the JSON decomposition artifact round trips as well."""
        path = self.dir / 'decomposition.json'
        run('analyze', str(FIXTURES / 'random_signal.csv'), '--levels', '2', '--format', 'json', '--out', str(path))
        payload = json.loads(run('synthesize', str(path), '--format', 'json')[0])
        original = dict(read_signal(FIXTURES / 'random_signal.csv').to_pairs())
        for row in payload['rows']:
            self.assertAlmostEqual(row['value'], original.get(row['index'], 0.0), delta=1e-10)

    def test_empty_signal(self):
        """Test an empty signal gives an empty decomposition and reconstruction."""
        path = self.dir / 'empty.csv'
        path.write_text('index,value\n', encoding='utf-8')
        decomposition = self.dir / 'empty_decomposition.csv'
        out, _ = run('analyze', str(path))
        self.assertEqual(out.strip().splitlines()[1:], [])
        run('analyze', str(path), '--out', str(decomposition))
        out, _ = run('synthesize', str(decomposition))
        self.assertEqual(out.strip().splitlines()[1:], [])

    def test_unreadable_input(self):
        """Test a missing file gives exit code 3."""
        self.assertExitCode(3, 'analyze', str(self.dir / 'missing.csv'))

    def test_level_mismatch(self):
        """Test a gap in the detail levels gives exit code 4."""
        path = self.dir / 'gap.csv'
        path.write_text(
            'level,kind,index,value\n0,approx,0,1.0\n0,detail,0,0.5\n2,detail,0,0.5\n',
            encoding='utf-8',
        )
        self.assertExitCode(4, 'synthesize', str(path))

    def test_unknown_kind(self):
        """Test an unknown coefficient kind gives exit code 3."""
        path = self.dir / 'kind.csv'
        path.write_text('level,kind,index,value\n0,approx,0,1.0\n0,noise,0,0.5\n', encoding='utf-8')
        self.assertExitCode(3, 'synthesize', str(path))


class ApiTests(APISimpleTestCase):
    """Test the JSON views."""

    def test_public_config(self):
        """Test defaults, limits and the convention are exposed."""
        response = self.client.get('/api/v1/config/')
        self.assertEqual(response.status_code, 200)
        self.assertEqual(response.data['filterbank']['analysis_gain'], 1.0)
        self.assertEqual(response.data['formats'], ['csv', 'json'])

    def test_masks(self):
        """Test the mask table for levels 0..2."""
        response = self.client.get('/api/v1/masks/', {'m': '0..2'})
        self.assertEqual(response.status_code, 200)
        self.assertEqual({row['level'] for row in response.data['rows']}, {0, 1, 2})

    def test_masks_bad_tension(self):
        """Test mu <= 1 is a 400."""
        response = self.client.get('/api/v1/masks/', {'mu': '0.5'})
        self.assertEqual(response.status_code, 400)
        self.assertIn('mu', response.data)

    def test_duals(self):
        """Test the dual table for one level."""
        response = self.client.get('/api/v1/duals/', {'m': '1'})
        self.assertEqual(response.status_code, 200)
        self.assertEqual(len(response.data['rows']), 15)

    def test_gramian(self):
        """Test the Gramian for level 0."""
        response = self.client.get('/api/v1/gramian/', {'m': '0'})
        self.assertEqual(response.status_code, 200)
        self.assertTrue(response.data['rows'])

    def test_spike(self):
        """Test the spike decomposition with its counts."""
        response = self.client.get('/api/v1/spike/', {'compare_stationary': 'true'})
        self.assertEqual(response.status_code, 200)
        self.assertTrue(any('stationary' in note for note in response.data['notes']))

    def test_domain_error_is_400(self):
        """Test an iteration-limit error is a 400."""
        response = self.client.get('/api/v1/gramian/', {'m': '0', 'max_iter': '1', 'tol': '1e-15'})
        self.assertEqual(response.status_code, 400)
        self.assertIn('error', response.data)
