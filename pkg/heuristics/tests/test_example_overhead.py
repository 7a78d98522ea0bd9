import math

from django.test import SimpleTestCase

from core.exceptions import DomainError
from core.types import Platform, Workload
from core.validators import validate_schedule
from heuristics.example import (
    SINGLE_INST_THRESHOLD, UNCAPPED_THRESHOLD, makespan_single, makespan_single_inst, motivating_example,
    multi_inst_installments, reference_single_installment_schedule, reference_two_installment_schedule,
)
from heuristics.overhead import choose_installments, min_installments_for_overhead, uncapped_feasibility_bound
from heuristics.strategies import multi_inst, single_inst


class MotivatingExampleTest(SimpleTestCase):
    def test_instance(self):
        instance = motivating_example(0.75)
        self.assertEqual(instance.platform.w, (0.75, 0.75))
        self.assertEqual(instance.workload.n_loads, 2)
        self.assertEqual(instance.meta['example_lambda'], 0.75)

    def test_lambda_must_be_positive(self):
        for lam in (0.0, -1.0, math.nan, math.inf):
            with self.assertRaises(DomainError):
                motivating_example(lam)

    def test_single_installment_schedule(self):
        s = reference_single_installment_schedule(0.5)
        self.assertAlmostEqual(s.makespan, 0.7)
        self.assertAlmostEqual(s.makespan, makespan_single(0.5))

    def test_two_installment_schedule(self):
        instance = motivating_example(0.75)
        s = reference_two_installment_schedule()
        self.assertAlmostEqual(s.makespan, 585.75 / 653)
        self.assertTrue(validate_schedule(instance.platform, instance.workload, s.installments, s).ok)

    def test_single_inst_closed_form(self):
        for lam in (SINGLE_INST_THRESHOLD + 0.01, 2.0, 5.0):
            instance = motivating_example(lam)
            outcome = single_inst(instance.platform, instance.workload)
            self.assertTrue(outcome.ok, lam)
            self.assertAlmostEqual(outcome.makespan, makespan_single_inst(lam))

    def test_installment_counts(self):
        self.assertEqual(multi_inst_installments(2.0), 1)
        self.assertEqual(multi_inst_installments(1.0), 2)
        self.assertEqual(multi_inst_installments(0.75), 3)
        self.assertEqual(multi_inst_installments(0.7), 4)
        with self.assertRaises(DomainError):
            multi_inst_installments(0.5)

    def test_installment_counts_match_the_strategy(self):
        for lam in (0.7, 0.75, 0.9, 1.0, 1.2):
            instance = motivating_example(lam)
            outcome = multi_inst(instance.platform, instance.workload)
            self.assertEqual(outcome.diagnostics.installments[1], multi_inst_installments(lam), lam)


class CoverageBoundTest(SimpleTestCase):
    def test_threshold_covers_exactly_one_load(self):
        self.assertAlmostEqual(uncapped_feasibility_bound(UNCAPPED_THRESHOLD), 1.0)
        self.assertLess(uncapped_feasibility_bound(0.5), 1.0)
        self.assertGreater(uncapped_feasibility_bound(0.75), 1.0)
        self.assertEqual(uncapped_feasibility_bound(1.0), math.inf)

    def test_finite_rounds(self):
        self.assertAlmostEqual(uncapped_feasibility_bound(1.0, installments=3), 2.0)
        self.assertAlmostEqual(uncapped_feasibility_bound(0.5, installments=1), 0.25)
        self.assertLess(uncapped_feasibility_bound(0.5, installments=50), uncapped_feasibility_bound(0.5))

    def test_domain(self):
        with self.assertRaises(DomainError):
            uncapped_feasibility_bound(0.0)
        with self.assertRaises(DomainError):
            uncapped_feasibility_bound(0.5, installments=0)


class OverheadBudgetTest(SimpleTestCase):
    def test_min_installments(self):
        self.assertEqual(min_installments_for_overhead(1.0, 2, 0.25, 1.5), 2)
        self.assertEqual(min_installments_for_overhead(10.0, 3, 0.5, 1.5), 5)
        self.assertEqual(min_installments_for_overhead(1.0, 2, 10.0, 1.1), 1)
        self.assertIsNone(min_installments_for_overhead(1.0, 2, 0.0, 1.5))

    def test_domain(self):
        for args in ((0.0, 2, 0.1, 1.5), (1.0, 1, 0.1, 1.5), (1.0, 2, -0.1, 1.5), (1.0, 2, 0.1, 1.0)):
            with self.assertRaises(DomainError):
                min_installments_for_overhead(*args)

    def test_choose_installments(self):
        p = Platform(w=(1.0, 1.0), z=(1.0,), tau=(0.0, 0.0))
        wl = Workload(((1.0, 1.0), (4.0, 1.0)))
        self.assertEqual(choose_installments(p, wl, 0.25, 1.5, max_installments=6).q, (2, 6))
        self.assertEqual(choose_installments(p, wl, 0.0, 1.5).q, (3, 3))

    def test_single_processor_needs_one_installment(self):
        p = Platform(w=(1.0,), z=(), tau=(0.0,))
        self.assertEqual(choose_installments(p, Workload(((1.0, 1.0),)), 0.5, 1.2).q, (1,))
