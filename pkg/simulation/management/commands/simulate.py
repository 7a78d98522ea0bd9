from core.io import read_instance, read_schedule, schedule_text
from core.management.base import DivisibleLoadCommand
from simulation.engine import SimConfig, SimMode, overhead_ratio, replay
from simulation.trace import write_trace


class Command(DivisibleLoadCommand):
    help = "Replay a schedule on the one-port chain and report the realized makespan"

    def add_arguments(self, parser):
        parser.add_argument('--instance', required=True, help='instance JSON file')
        parser.add_argument('--schedule', required=True, help='schedule JSON file')
        parser.add_argument(
            '--latency-map',
            choices=['default', 'none'],
            default='default',
            help="'default' uses the instance's link latencies when it has them, 'none' replays without latency"
        )
        parser.add_argument('--startup', type=float, default=0.0, help='data volume added to every message (default: 0)')
        parser.add_argument('--mode', choices=[m.value for m in SimMode], default=SimMode.REPLAY_EXACT.value)
        parser.add_argument('--no-strict', action='store_true',
                            help='record overlapping transfers instead of failing on them')
        parser.add_argument('--skip-empty', action='store_true', help='do not send messages with no payload')
        parser.add_argument('--trace', help='write the event trace as CSV to this file')
        parser.add_argument('--out', help='write the realized schedule as JSON to this file')

    def handle(self, *args, **options):
        instance = read_instance(options['instance'])
        schedule = read_schedule(options['schedule'])
        p, wl = instance.platform, instance.workload

        latency = instance.latency if options['latency_map'] == 'default' else None
        cfg = SimConfig(
            link_latency=latency,
            startup=options['startup'],
            mode=options['mode'],
            skip_empty_messages=options['skip_empty'],
            strict=not options['no_strict'],
        )
        report = replay(p, wl, schedule, cfg)

        if options['trace']:
            write_trace(report, options['trace'])
        if options['out']:
            self.emit(schedule_text(report.schedule), options['out'], what='realized schedule')

        self.stdout.write(f"Realized makespan: {report.realized_makespan:.12g}")
        if latency is not None or cfg.startup > 0:
            ideal = replay(p, wl, schedule, SimConfig(mode=cfg.mode, strict=cfg.strict))
            self.stdout.write(f"Overhead ratio: {overhead_ratio(ideal, report):.9g}")
        for proc, first, second in report.violations:
            self.stderr.write(f"  one-port conflict on P{proc}: {first} and {second}")
        self.stdout.write(self.style.SUCCESS(f"Replayed {len(report.event_trace)} events"))
