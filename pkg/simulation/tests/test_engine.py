from django.test import SimpleTestCase
import numpy as np

from core.exceptions import IndexMismatch, LengthMismatch, NegativeAvailability, NegativePayload, OnePortConflict
from core.types import Platform, Schedule, Workload
from heuristics.example import motivating_example, reference_single_installment_schedule, reference_two_installment_schedule
from simulation.engine import EventKind, SimConfig, SimMode, one_port_conflicts, overhead_ratio, replay
from simulation.trace import trace_csv_text

REFERENCE_TWO_INSTALLMENT_MAKESPAN = 585.75 / 653


def one_hop():
    """Everything goes to P2 over one unit link: ideal makespan 2."""
    p = Platform(w=(1.0, 1.0), z=(1.0,), tau=(0.0, 0.0))
    wl = Workload(((1.0, 1.0),))
    return p, wl, Schedule((np.array([[0.0], [1.0]]),))


def overlapping():
    """Both loads claim the link during [0, 0.5]."""
    p = Platform(w=(1.0, 1.0), z=(1.0,), tau=(0.0, 0.0))
    wl = Workload(((1.0, 1.0), (1.0, 1.0)))
    half = np.array([[0.5], [0.5]])
    s = Schedule(
        (half, half),
        comm_start=(np.array([[0.0]]), np.array([[0.0]])),
        comm_end=(np.array([[0.5]]), np.array([[0.5]])),
        comp_start=(np.array([[0.0], [0.5]]), np.array([[0.5], [1.0]])),
        comp_end=(np.array([[0.5], [1.0]]), np.array([[1.0], [1.5]])),
    )
    return p, wl, s


class ReplayTest(SimpleTestCase):
    def test_exact_replay_keeps_the_makespan(self):
        instance = motivating_example(0.5)
        report = replay(instance.platform, instance.workload, reference_single_installment_schedule(0.5))
        self.assertAlmostEqual(report.realized_makespan, 0.7)
        self.assertEqual(report.violations, ())

    def test_both_modes_on_two_installments(self):
        instance = motivating_example(0.75)
        schedule = reference_two_installment_schedule()
        for mode in SimMode.values:
            report = replay(instance.platform, instance.workload, schedule, SimConfig(mode=mode))
            self.assertAlmostEqual(report.realized_makespan, REFERENCE_TWO_INSTALLMENT_MAKESPAN, msg=mode)

    def test_fractions_only_schedule_is_timed_first(self):
        instance = motivating_example(0.5)
        schedule = reference_single_installment_schedule(0.5).fractions_only()
        report = replay(instance.platform, instance.workload, schedule)
        self.assertAlmostEqual(report.realized_makespan, 0.7)
        self.assertTrue(report.schedule.has_times)

    def test_startup_delays_the_end(self):
        instance = motivating_example(0.5)
        schedule = reference_single_installment_schedule(0.5)
        for mode in SimMode.values:
            report = replay(instance.platform, instance.workload, schedule, SimConfig(startup=0.1, mode=mode))
            self.assertGreater(report.realized_makespan, 0.7 + 1e-9)

    def test_work_is_conserved(self):
        instance = motivating_example(0.75)
        report = replay(instance.platform, instance.workload, reference_two_installment_schedule())

        self.assertAlmostEqual(sum(report.per_processor_busy), 1.5)
        self.assertAlmostEqual(report.per_processor_busy[0], 0.75 * 781 / 653)
        np.testing.assert_allclose(report.schedule.fraction_totals(), [1.0, 1.0])

    def test_trace_events(self):
        instance = motivating_example(0.75)
        report = replay(instance.platform, instance.workload, reference_two_installment_schedule())

        # four transfers and six nonempty computations
        self.assertEqual(len(report.event_trace), 20)
        kinds = [e.kind for e in report.event_trace]
        self.assertEqual(kinds.count(EventKind.COMM_START), 4)
        self.assertEqual(kinds.count(EventKind.COMP_END), 6)
        times = [e.time for e in report.event_trace]
        self.assertEqual(times, sorted(times))

    def test_skip_empty_messages(self):
        p = Platform(w=(1.0, 1.0), z=(1.0,), tau=(0.0, 0.0))
        wl = Workload(((1.0, 1.0),))
        schedule = Schedule((np.array([[1.0], [0.0]]),))
        kept = replay(p, wl, schedule, SimConfig(startup=0.5))
        skipped = replay(p, wl, schedule, SimConfig(startup=0.5, skip_empty_messages=True))

        self.assertEqual(len(kept.event_trace), 4)
        self.assertEqual(len(skipped.event_trace), 2)
        self.assertAlmostEqual(skipped.realized_makespan, 1.0)

    def test_single_processor(self):
        p = Platform(w=(2.0,), z=(), tau=(1.0,))
        wl = Workload(((1.0, 1.0), (1.0, 3.0)))
        schedule = Schedule((np.array([[0.5, 0.5]]), np.array([[1.0]])))
        report = replay(p, wl, schedule)
        self.assertAlmostEqual(report.realized_makespan, 9.0)
        self.assertEqual(report.per_processor_busy, (8.0,))


class OverheadRatioTest(SimpleTestCase):
    def test_identical_runs(self):
        instance = motivating_example(0.75)
        report = replay(instance.platform, instance.workload, reference_two_installment_schedule())
        self.assertEqual(overhead_ratio(report, report), 1.0)

    def test_startup_and_latency(self):
        p, wl, schedule = one_hop()
        ideal = replay(p, wl, schedule)
        self.assertAlmostEqual(ideal.realized_makespan, 2.0)

        costed = replay(p, wl, schedule, SimConfig(startup=1.0))
        self.assertAlmostEqual(overhead_ratio(ideal, costed), 1.5)
        delayed = replay(p, wl, schedule, SimConfig(link_latency=(1.0,), mode=SimMode.AS_EARLY_AS_POSSIBLE))
        self.assertAlmostEqual(overhead_ratio(ideal, delayed), 1.5)


class ReplayInputTest(SimpleTestCase):
    def test_negative_payload(self):
        p, wl, _ = one_hop()
        with self.assertRaises(NegativePayload) as ctx:
            replay(p, wl, Schedule((np.array([[1.2], [-0.2]]),)))
        self.assertEqual(ctx.exception.index, (2, 1, 1))

    def test_processor_count_mismatch(self):
        p, wl, _ = one_hop()
        with self.assertRaises(IndexMismatch):
            replay(p, wl, Schedule((np.array([[0.3], [0.3], [0.4]]),)))

    def test_config_checks(self):
        with self.assertRaises(NegativeAvailability):
            SimConfig(startup=-1.0)
        with self.assertRaises(NegativeAvailability):
            SimConfig(link_latency=(0.1, -0.1))
        p, wl, schedule = one_hop()
        with self.assertRaises(LengthMismatch):
            replay(p, wl, schedule, SimConfig(link_latency=(0.1, 0.1)))


class OnePortTest(SimpleTestCase):
    def test_strict_replay_refuses_overlaps(self):
        p, wl, schedule = overlapping()
        with self.assertRaises(OnePortConflict) as ctx:
            replay(p, wl, schedule)
        self.assertEqual(ctx.exception.conflicts[0], (1, (1, 1, 1), (1, 2, 1)))

    def test_lenient_replay_records_and_serializes(self):
        p, wl, schedule = overlapping()
        self.assertEqual(len(one_port_conflicts(schedule)), 2)

        report = replay(p, wl, schedule, SimConfig(strict=False))
        self.assertEqual(len(report.violations), 2)
        self.assertEqual(one_port_conflicts(report.schedule), [])
        self.assertAlmostEqual(report.schedule.comm_start[1][0, 0], 0.5)
        self.assertAlmostEqual(report.realized_makespan, 1.5)

    def test_aeap_mode_ignores_the_given_times(self):
        p, wl, schedule = overlapping()
        report = replay(p, wl, schedule, SimConfig(mode=SimMode.AS_EARLY_AS_POSSIBLE))
        self.assertEqual(report.violations, ())


class TraceCsvTest(SimpleTestCase):
    def test_layout(self):
        instance = motivating_example(0.5)
        report = replay(instance.platform, instance.workload, reference_single_installment_schedule(0.5))
        lines = trace_csv_text(report).splitlines()

        self.assertEqual(lines[0], '# format_version: 1')
        self.assertEqual(lines[1], 'time,entity,kind,load,installment,detail')
        self.assertEqual(lines[2], '0.0,l1,comm_start,1,1,0.4')
        self.assertEqual(len(lines), 2 + len(report.event_trace))
