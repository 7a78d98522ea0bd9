from django.test import SimpleTestCase
import numpy as np

from bench.generation import HOMOGENEOUS, GenConfig, generate_instance
from core.exceptions import IndexMismatch, InputValidationError, SolverFailure
from core.types import InstallmentCounts
from core.validators import validate_schedule
from heuristics.example import makespan_single, motivating_example
from lp.formulation import build_lp, natural_time_scale
from lp.services import optimal_schedule, resolve_installments
from lp.simplex import SolverConfig, solve
from lp.standard_form import to_standard_form

REFERENCE_TWO_INSTALLMENT_MAKESPAN = 585.75 / 653


def solve_example(lam, q, **kwargs):
    instance = motivating_example(lam)
    return optimal_schedule(instance.platform, instance.workload, InstallmentCounts(q), **kwargs)


class OptimalScheduleTest(SimpleTestCase):
    def test_single_installment_half(self):
        _, makespan = solve_example(0.5, (1, 1))
        self.assertLessEqual(makespan, 0.7 + 1e-6)

    def test_single_installment_two(self):
        _, makespan = solve_example(2.0, (1, 1))
        self.assertLessEqual(makespan, makespan_single(2.0) + 1e-6)
        self.assertLess(makespan, 2.2)

    def test_single_installment_matches_closed_form(self):
        _, makespan = solve_example(0.75, (1, 1))
        self.assertAlmostEqual(makespan, makespan_single(0.75), places=6)

    def test_two_installments_beat_one(self):
        _, one = solve_example(0.75, (1, 1))
        _, two = solve_example(0.75, (2, 2))
        self.assertLessEqual(two, REFERENCE_TWO_INSTALLMENT_MAKESPAN + 1e-6)
        self.assertLess(two, 0.9)
        self.assertLess(two, one)

    def test_more_installments_never_hurt(self):
        _, two = solve_example(0.75, (2, 2))
        _, three = solve_example(0.75, (3, 3))
        self.assertLessEqual(three, two + 1e-7)

    def test_reduced_form_gives_the_same_optimum(self):
        _, full = solve_example(0.75, (2, 2), reduced=False)
        _, reduced = solve_example(0.75, (2, 2), reduced=True)
        self.assertAlmostEqual(full, reduced, places=7)

    def test_solution_passes_validation(self):
        instance = motivating_example(0.75)
        q = InstallmentCounts((2, 1))
        for reduced in (False, True):
            schedule, makespan = optimal_schedule(instance.platform, instance.workload, q, reduced=reduced)
            report = validate_schedule(instance.platform, instance.workload, q, schedule, tol=1e-7)
            self.assertTrue(report.ok, report.summary())
            self.assertEqual(makespan, schedule.makespan)

    def test_strict_forwarding_is_never_better(self):
        _, relaxed = solve_example(0.75, (2, 2))
        _, strict = solve_example(0.75, (2, 2), strict_forwarding=True)
        self.assertGreaterEqual(strict, relaxed - 1e-7)

    def test_iteration_limit_names_the_instance(self):
        with self.assertRaises(SolverFailure) as ctx:
            solve_example(0.75, (1, 1), cfg=SolverConfig(max_iterations=1), instance_id=7)
        self.assertEqual(ctx.exception.instance_id, 7)
        self.assertIn('instance 7', str(ctx.exception))


class DeskGridRegressionTest(SimpleTestCase):
    """Homogeneous chain, wide volume range, ccr 0.5: the first instance of its combination on the seed-0 grid."""

    def setUp(self):
        cfg = GenConfig(m=5, n_loads=10, seed=0)
        self.instance = generate_instance(cfg, 30, HOMOGENEOUS, '6GFLOP-4TFLOP', 0.5)

    def test_two_installment_optimum_is_feasible(self):
        p, wl = self.instance.platform, self.instance.workload
        q = InstallmentCounts.uniform(wl.n_loads, 2)
        problem = build_lp(p, wl, q, reduced=True, time_scale=natural_time_scale(p, wl))
        solution = solve(to_standard_form(problem), SolverConfig())

        self.assertTrue(solution.optimal)
        self.assertLessEqual(problem.max_violation(solution.x), 1e-8 * max(1.0, np.abs(solution.x).max()))
        schedule, _ = optimal_schedule(p, wl, q, reduced=True, instance_id=30)
        report = validate_schedule(p, wl, q, schedule, tol=1e-7)
        self.assertTrue(report.ok, report.summary())


class ResolveInstallmentsTest(SimpleTestCase):
    def setUp(self):
        self.instance = motivating_example(0.75)
        self.wl = self.instance.workload

    def test_uniform(self):
        self.assertEqual(resolve_installments(self.wl, uniform_q=3).q, (3, 3))

    def test_comma_separated(self):
        self.assertEqual(resolve_installments(self.wl, installments='2,1').q, (2, 1))
        self.assertEqual(resolve_installments(self.wl, installments=[1, 4]).q, (1, 4))

    def test_exactly_one_source(self):
        with self.assertRaises(InputValidationError):
            resolve_installments(self.wl)
        with self.assertRaises(InputValidationError):
            resolve_installments(self.wl, installments='1,1', uniform_q=1)

    def test_bad_text(self):
        with self.assertRaises(InputValidationError):
            resolve_installments(self.wl, installments='two,one')

    def test_count_must_match_loads(self):
        with self.assertRaises(IndexMismatch):
            resolve_installments(self.wl, installments='2')

    def test_auto_needs_an_overhead_budget(self):
        with self.assertRaises(InputValidationError):
            resolve_installments(self.wl, installments='auto', platform=self.instance.platform)

    def test_auto(self):
        p = self.instance.platform
        free = resolve_installments(self.wl, installments='auto', platform=p, rho_max=1.5, max_installments=4)
        self.assertEqual(free.q, (4, 4))
        # (Q * 0.25 + 1) / 1 <= 1.5 allows two installments
        costed = resolve_installments(self.wl, installments='auto', platform=p, startup=0.25, rho_max=1.5)
        self.assertEqual(costed.q, (2, 2))
