from io import StringIO
from pathlib import Path
import json
import tempfile

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

INSTANCE = {
    'm': 2, 'w': [0.75, 0.75], 'z': [1.0],
    'loads': [{'vcomm': 1.0, 'vcomp': 1.0}, {'vcomm': 1.0, 'vcomp': 1.0}],
}


class LPCommandTestBase(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)
        self.instance = self.dir / 'instance.json'
        self.instance.write_text(json.dumps(INSTANCE))

    def tearDown(self):
        self.tmp.cleanup()


class SolveCommandTest(LPCommandTestBase):
    def test_schedule_to_stdout(self):
        out, err = StringIO(), StringIO()
        call_command('solve', '--instance', str(self.instance), '--uniform-q', '2', stdout=out, stderr=err)

        schedule = json.loads(out.getvalue())
        self.assertEqual(schedule['q'], [2, 2])
        self.assertLess(schedule['makespan'], 0.9)
        self.assertIn('Optimal makespan for q=[2, 2]', err.getvalue())

    def test_files(self):
        out = self.dir / 'schedule.json'
        lp_out = self.dir / 'problem.lp'
        stdout = StringIO()
        call_command('solve', '--instance', str(self.instance), '--installments', '1,2', '--reduced',
                     '--out', str(out), '--lp-out', str(lp_out), stdout=stdout)

        self.assertEqual(json.loads(out.read_text())['q'], [1, 2])
        self.assertIn('form=reduced', lp_out.read_text())
        self.assertIn('Optimal makespan', stdout.getvalue())

    def test_auto_counts(self):
        out = StringIO()
        call_command('solve', '--instance', str(self.instance), '--installments', 'auto',
                     '--startup', '0.25', '--rho-max', '1.5', stdout=out, stderr=StringIO())
        self.assertEqual(json.loads(out.getvalue())['q'], [2, 2])

    def test_count_mismatch_exits_with_one(self):
        with self.assertRaises(CommandError) as ctx:
            call_command('solve', '--instance', str(self.instance), '--installments', '1,1,1')
        self.assertEqual(ctx.exception.returncode, 1)
        self.assertTrue(str(ctx.exception).startswith('index_mismatch'))


class ExportCommandTest(LPCommandTestBase):
    def test_export(self):
        out = StringIO()
        call_command('export_lp', '--instance', str(self.instance), '--uniform-q', '1', stdout=out)
        self.assertIn('form=full', out.getvalue())
        self.assertIn('bounds\n', out.getvalue())

    def test_time_scale_must_be_positive(self):
        with self.assertRaises(CommandError) as ctx:
            call_command('export_lp', '--instance', str(self.instance), '--uniform-q', '1', '--time-scale', '0')
        self.assertEqual(ctx.exception.returncode, 2)
