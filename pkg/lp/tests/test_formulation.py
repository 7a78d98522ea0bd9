from collections import Counter

from django.test import SimpleTestCase
import numpy as np

from core.exceptions import IndexMismatch, MissingVariable
from core.timing import aeap_times
from core.types import InstallmentCounts, Platform, Workload
from lp.formulation import build_lp, extract_schedule, natural_time_scale, pack_schedule
from lp.lpformat import export_lp_text
from lp.types import Relation, VarKind, VarTag


def example(lam):
    return Platform(w=(lam, lam), z=(1.0,), tau=(0.0, 0.0)), Workload(((1.0, 1.0), (1.0, 1.0)))


def chain3():
    return (
        Platform(w=(1.0, 2.0, 3.0), z=(0.5, 0.25), tau=(0.0, 0.0, 1.0)),
        Workload(((2.0, 3.0), (1.0, 1.0))),
    )


class BuildLPTest(SimpleTestCase):
    def test_full_form_columns_and_rows(self):
        p, wl = example(0.5)
        lp = build_lp(p, wl, InstallmentCounts((1, 1)))
        # per message: S, E on one link; Cs, Ce, gamma on two processors
        self.assertEqual(lp.n_vars, 17)
        self.assertEqual(lp.var_meta[-1].kind, VarKind.MAKESPAN)
        self.assertEqual(lp.n_rows, 17)
        self.assertEqual(lp.families(), [3, 5, 6, 7, 8, 10, 12, 13])

    def test_reduced_form_drops_end_columns(self):
        p, wl = example(0.5)
        lp = build_lp(p, wl, InstallmentCounts((1, 1)), reduced=True)
        self.assertEqual(lp.n_vars, 11)
        self.assertNotIn(5, lp.families())
        self.assertNotIn(7, lp.families())
        self.assertFalse(any(tag.kind in (VarKind.COMM_END, VarKind.COMP_END) for tag in lp.var_meta))

    def test_single_processor_has_no_link_columns(self):
        p = Platform(w=(1.0,), z=(), tau=(0.0,))
        wl = Workload(((1.0, 2.0),))
        lp = build_lp(p, wl, InstallmentCounts((2,)))
        self.assertFalse(any(tag.kind == VarKind.COMM_START for tag in lp.var_meta))
        self.assertEqual(lp.families(), [7, 9, 10, 12, 13])

    def test_last_link_waits_for_its_previous_transfer(self):
        p, wl = example(0.75)
        lp = build_lp(p, wl, InstallmentCounts((2, 1)))
        serial = [row for row in lp.rows if row.family == 2]
        self.assertEqual(len(serial), 1)
        self.assertEqual(serial[0].index, (1, 1, 1))
        s_next = lp.index[VarTag(VarKind.COMM_START, 0, 0, 1)]
        e_prev = lp.index[VarTag(VarKind.COMM_END, 0, 0, 0)]
        self.assertEqual(dict(serial[0].coeffs), {s_next: 1.0, e_prev: -1.0})
        self.assertEqual(serial[0].relation, Relation.GE)

    def test_strict_forwarding_adds_rows(self):
        p, wl = chain3()
        q = InstallmentCounts((1, 1))
        relaxed = Counter(row.family for row in build_lp(p, wl, q).rows)
        strict = Counter(row.family for row in build_lp(p, wl, q, strict_forwarding=True).rows)
        self.assertEqual(relaxed[6], 4)
        self.assertEqual(strict[6], 6)

    def test_time_scale_divides_time_coefficients(self):
        p, wl = chain3()
        q = InstallmentCounts((1, 1))
        plain = build_lp(p, wl, q, reduced=True)
        scaled = build_lp(p, wl, q, reduced=True, time_scale=4.0)
        tau_rows = [r for r in scaled.rows if r.family == 10]
        self.assertEqual([r.rhs for r in tau_rows], [0.0, 0.0, 0.25])
        self.assertEqual(plain.n_vars, scaled.n_vars)

    def test_natural_time_scale(self):
        p, wl = chain3()
        self.assertAlmostEqual(natural_time_scale(p, wl), 1.0 * 4.0 + 1.0)

    def test_rejects_bad_inputs(self):
        p, wl = example(1.0)
        with self.assertRaises(IndexMismatch):
            build_lp(p, wl, InstallmentCounts((1,)))
        with self.assertRaises(ValueError):
            build_lp(p, wl, InstallmentCounts((1, 1)), time_scale=0.0)


class FeasibilityWitnessTest(SimpleTestCase):
    def setUp(self):
        self.p, self.wl = example(0.75)
        fractions = (np.array([[0, 317], [192, 144]]) / 653, np.array([[0, 464], [108, 81]]) / 653)
        self.schedule = aeap_times(self.p, self.wl, fractions)

    def test_reference_schedule_is_a_feasible_point(self):
        for reduced in (False, True):
            lp = build_lp(self.p, self.wl, InstallmentCounts((2, 2)), reduced=reduced, time_scale=0.5)
            x = pack_schedule(lp, self.schedule)
            self.assertLess(lp.max_violation(x), 1e-12)
            self.assertAlmostEqual(lp.value(x) * lp.time_scale, 585.75 / 653)

    def test_extract_recovers_packed_schedule(self):
        lp = build_lp(self.p, self.wl, InstallmentCounts((2, 2)), time_scale=0.5)
        again = extract_schedule(lp, pack_schedule(lp, self.schedule))
        for name in ('fractions', 'comm_start', 'comm_end', 'comp_start', 'comp_end'):
            for a, b in zip(getattr(again, name), getattr(self.schedule, name)):
                np.testing.assert_allclose(a, b, atol=1e-12)
        self.assertAlmostEqual(again.makespan, self.schedule.makespan)

    def test_max_violation_sees_a_broken_point(self):
        lp = build_lp(self.p, self.wl, InstallmentCounts((2, 2)))
        x = pack_schedule(lp, self.schedule)
        x[lp.index[VarTag(VarKind.MAKESPAN)]] -= 0.1
        self.assertAlmostEqual(lp.max_violation(x), 0.1)
        broken = {lp.rows[r].family for r in np.nonzero(lp.row_residuals(x) > 1e-12)[0]}
        self.assertEqual(broken, {13})

    def test_extract_checks_vector_size(self):
        lp = build_lp(self.p, self.wl, InstallmentCounts((2, 2)))
        with self.assertRaises(MissingVariable):
            extract_schedule(lp, np.zeros(lp.n_vars - 1))

    def test_pack_needs_times(self):
        lp = build_lp(self.p, self.wl, InstallmentCounts((2, 2)))
        with self.assertRaises(MissingVariable):
            pack_schedule(lp, self.schedule.fractions_only())


class ExportTest(SimpleTestCase):
    def test_export_is_deterministic_and_complete(self):
        p, wl = example(0.5)
        lp = build_lp(p, wl, InstallmentCounts((1, 1)))
        text = export_lp_text(lp)
        self.assertEqual(text, export_lp_text(build_lp(p, wl, InstallmentCounts((1, 1)))))
        self.assertTrue(text.startswith("\\* Source divload format_version=1 *\\\n"))
        self.assertIn("m=2 q=[1, 1] form=full", text)
        self.assertIn("\nmin\nobj:\n+1 makespan\n", text)
        self.assertIn("c%d:\n" % lp.n_rows, text)
        self.assertIn("\\* f13[2] *\\", text)
        self.assertTrue(text.endswith("   0 <= makespan\nend\n"))
        self.assertEqual(text.count(" <= "), lp.n_vars)

    def test_variable_names(self):
        self.assertEqual(VarTag(VarKind.COMM_START, 0, 1, 2).name, 'S_1_2_3')
        self.assertEqual(VarTag(VarKind.FRACTION, 1, 0, 0).name, 'gamma_2_1_1')
