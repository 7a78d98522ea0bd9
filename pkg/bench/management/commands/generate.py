from pathlib import Path
import json

from django.core.management.base import CommandError

from bench.generation import CCR_VALUES, POWER_DISTS, UNIFORM, VOLUME_RANGES, GenConfig, generate_instances
from core.io import write_instance
from core.management.base import DivisibleLoadCommand
from heuristics.example import motivating_example


class Command(DivisibleLoadCommand):
    help = "Generate random benchmark instances (or the two-processor example) as JSON files"

    def add_arguments(self, parser):
        parser.add_argument('--out', required=True, help='output directory')
        parser.add_argument('--config', help='JSON file with generator settings; flags override it')
        parser.add_argument('--seed', type=int, help='64-bit seed (default: 0)')
        parser.add_argument('--m', type=int, help='processors per chain (default: 10)')
        parser.add_argument('--loads', type=int, help='loads per instance (default: 50)')
        parser.add_argument('--per-combo', type=int, help='instances per combination (default: 100)')
        grid = parser.add_mutually_exclusive_group()
        grid.add_argument('--grid', action='store_true', help='every power, volume and ccr combination (default)')
        grid.add_argument('--single', action='store_true', help='one combination, chosen with the flags below')
        parser.add_argument('--power', choices=POWER_DISTS, default=UNIFORM, help='--single: power distribution')
        parser.add_argument('--volume', choices=list(VOLUME_RANGES), default='6GFLOP-4TFLOP',
                            help='--single: computation volume range')
        parser.add_argument('--ccr', type=float, default=1.0,
                            help=f"--single: bytes per FLOP, one of {', '.join(str(c) for c in CCR_VALUES)}")
        parser.add_argument('--example', type=float, metavar='LAMBDA',
                            help='write the two-processor, two-load example with w1 = w2 = LAMBDA instead')

    def handle(self, *args, **options):
        out = Path(options['out'])
        out.mkdir(parents=True, exist_ok=True)

        if options['example'] is not None:
            path = out / f"example-{options['example']:g}.json"
            write_instance(motivating_example(options['example']), path)
            self.stdout.write(self.style.SUCCESS(f"Wrote {path}"))
            return

        conf = {}
        if options['config']:
            try:
                conf = json.loads(Path(options['config']).read_text())
            except json.JSONDecodeError as exc:
                raise CommandError(f"{options['config']} is not valid JSON: {exc.msg}", returncode=1)
        for flag, key in (('seed', 'seed'), ('m', 'm'), ('loads', 'n_loads'), ('per_combo', 'instances_per_combo')):
            if options[flag] is not None:
                conf[key] = options[flag]
        if options['single']:
            conf.update(power_dists=(options['power'],), volume_ranges=(options['volume'],), ccrs=(options['ccr'],))
        cfg = GenConfig.from_dict(conf)

        instances = generate_instances(cfg)
        width = max(5, len(str(len(instances) - 1)))
        for instance in instances:
            write_instance(instance, out / f"instance-{instance.instance_id:0{width}d}.json")
        (out / 'config.json').write_text(json.dumps(cfg.to_dict(), indent=2) + '\n')
        self.stdout.write(self.style.SUCCESS(f"Wrote {len(instances)} instance(s) to {out}"))
