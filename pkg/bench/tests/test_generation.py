from django.test import SimpleTestCase
import numpy as np

from bench.generation import HOMOGENEOUS, UNIFORM, GenConfig, generate_instance, generate_instances
from core.exceptions import InputValidationError


def small(**kwargs):
    options = dict(m=4, n_loads=3, instances_per_combo=5, seed=11)
    options.update(kwargs)
    return GenConfig.single(**options)


class GenConfigTest(SimpleTestCase):
    def test_default_grid(self):
        cfg = GenConfig()
        self.assertEqual(len(cfg.combos()), 36)
        self.assertEqual(cfg.n_instances, 3600)

    def test_dict_round_trip(self):
        cfg = small(ccr=0.5)
        data = cfg.to_dict()
        self.assertEqual(data['ccrs'], [0.5])
        self.assertEqual(GenConfig.from_dict(data), cfg)

    def test_rejected_settings(self):
        bad = [
            {'bogus': 1},
            {'ccrs': [2]},
            {'m': 0},
            {'n_loads': 1.5},
            {'seed': -1},
            {'power_dists': ['gaussian']},
            {'volume_ranges': ['1-2GFLOP']},
            {'ccrs': []},
        ]
        for data in bad:
            with self.assertRaises(InputValidationError, msg=data):
                GenConfig.from_dict(data)


class GenerateInstancesTest(SimpleTestCase):
    def test_deterministic(self):
        a, b = generate_instances(small()), generate_instances(small())
        for x, y in zip(a, b):
            self.assertEqual(x.platform, y.platform)
            self.assertEqual(x.workload, y.workload)
            self.assertEqual(x.latency, y.latency)

    def test_seed_changes_the_draws(self):
        a, b = generate_instances(small()), generate_instances(small(seed=12))
        self.assertNotEqual(a[0].platform.w, b[0].platform.w)

    def test_instance_streams_do_not_depend_on_the_grid_size(self):
        short = generate_instances(small(instances_per_combo=3))
        long = generate_instances(small(instances_per_combo=6))
        for x, y in zip(short, long):
            self.assertEqual(x.platform, y.platform)
        self.assertEqual(generate_instance(small(), 4, UNIFORM, '6GFLOP-4TFLOP', 1).platform, long[4].platform)

    def test_units(self):
        instances = generate_instances(small(power_dist=HOMOGENEOUS, ccr=0.5))
        for instance in instances:
            p = instance.platform
            np.testing.assert_allclose(p.w, 1e-8)
            self.assertTrue(all(8e-8 <= z <= 8e-7 for z in p.z))
            self.assertEqual(p.tau, (0.0,) * 4)
            np.testing.assert_allclose(instance.latency, np.array(p.z) * 1250)
            for load in instance.workload:
                self.assertAlmostEqual(load.vcomm, 0.5 * load.vcomp)
                self.assertTrue(6e9 <= load.vcomp <= 4e12)

    def test_uniform_powers(self):
        w = np.array([i.platform.w for i in generate_instances(small())])
        mflops = 1 / (w * 1e6)
        self.assertTrue(((mflops >= 10) & (mflops <= 100)).all())
        self.assertGreater(mflops.std(), 0)

    def test_grid_order_and_meta(self):
        cfg = GenConfig(m=2, n_loads=1, power_dists=(HOMOGENEOUS,), volume_ranges=('6-60GFLOP',),
                        ccrs=(0.1, 10), instances_per_combo=2, seed=3)
        instances = generate_instances(cfg)

        self.assertEqual([i.instance_id for i in instances], [0, 1, 2, 3])
        self.assertEqual([i.meta['ccr'] for i in instances], [0.1, 0.1, 10.0, 10.0])
        self.assertEqual(instances[3].meta, {
            'index': 3, 'seed': 3, 'power_dist': HOMOGENEOUS, 'volume_range': '6-60GFLOP', 'ccr': 10.0,
        })
        self.assertTrue(all(6e9 <= i.workload[0].vcomp <= 60e9 for i in instances))
