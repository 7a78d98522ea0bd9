from io import StringIO
from pathlib import Path
import json
import tempfile

from django.core.cache import cache
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase
from django.urls import reverse
from rest_framework import status
from rest_framework.test import APITestCase


def example_instance(lam):
    return {
        'm': 2, 'w': [lam, lam], 'z': [1.0],
        'loads': [{'vcomm': 1.0, 'vcomp': 1.0}, {'vcomm': 1.0, 'vcomp': 1.0}],
    }


class HeuristicViewTest(APITestCase):
    def setUp(self):
        cache.clear()
        self.url = reverse('heuristic_run')

    def tearDown(self):
        cache.clear()

    def test_capped_multi_inst(self):
        response = self.client.post(self.url, {'instance': example_instance(0.75), 'name': 'multi-inst', 'cap': 100},
                                    format='json')

        self.assertEqual(response.status_code, status.HTTP_200_OK)
        data = response.json()
        self.assertEqual(data['status'], 'ok')
        self.assertEqual(data['strategy'], 'multi-inst:100')
        self.assertAlmostEqual(data['makespan'], 0.9)
        self.assertEqual(data['schedule']['q'], [1, 3])

    def test_no_solution_is_still_ok(self):
        response = self.client.post(self.url, {'instance': example_instance(0.5), 'name': 'multi-inst'}, format='json')

        self.assertEqual(response.status_code, status.HTTP_200_OK)
        data = response.json()
        self.assertEqual(data['status'], 'no_solution')
        self.assertIsNone(data['schedule'])
        self.assertAlmostEqual(data['diagnostics']['coverage_bound'], 0.5)
        self.assertEqual(data['diagnostics']['failed_load'], 2)

    def test_cap_only_for_multi_inst(self):
        response = self.client.post(self.url, {'instance': example_instance(2.0), 'name': 'simple', 'cap': 2},
                                    format='json')
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)

    def test_unknown_name(self):
        response = self.client.post(self.url, {'instance': example_instance(2.0), 'name': 'greedy'}, format='json')
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)


class HeuristicCommandTest(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def _instance(self, lam):
        path = self.dir / f'example-{lam:g}.json'
        path.write_text(json.dumps(example_instance(lam)))
        return str(path)

    def test_single_inst(self):
        out, err = StringIO(), StringIO()
        call_command('heuristic', '--name', 'single-inst', '--instance', self._instance(2.0), stdout=out, stderr=err)

        schedule = json.loads(out.getvalue())
        self.assertAlmostEqual(schedule['makespan'], 2.2)
        self.assertIn('single-inst: makespan 2.2', err.getvalue())

    def test_schedule_file(self):
        target = self.dir / 'schedule.json'
        call_command('heuristic', '--name', 'multi-inst', '--cap', '3', '--instance', self._instance(0.75),
                     '--out', str(target), stdout=StringIO())
        self.assertEqual(json.loads(target.read_text())['q'], [1, 3])

    def test_multi_inst_needs_a_cap_choice(self):
        with self.assertRaises(CommandError) as ctx:
            call_command('heuristic', '--name', 'multi-inst', '--instance', self._instance(0.75))
        self.assertEqual(ctx.exception.returncode, 2)

    def test_cap_only_for_multi_inst(self):
        with self.assertRaises(CommandError) as ctx:
            call_command('heuristic', '--name', 'simple', '--cap', '2', '--instance', self._instance(0.75))
        self.assertEqual(ctx.exception.returncode, 2)

    def test_no_solution_exits_with_one(self):
        with self.assertRaises(CommandError) as ctx:
            call_command('heuristic', '--name', 'multi-inst', '--uncapped', '--instance', self._instance(0.5))
        self.assertEqual(ctx.exception.returncode, 1)
        self.assertIn('coverage bound 0.5 < 1', str(ctx.exception))
