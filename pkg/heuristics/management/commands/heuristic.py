from django.core.management.base import CommandError

from core.io import read_instance, schedule_text
from core.management.base import DivisibleLoadCommand
from heuristics.strategies import multi_inst, simple_schedule, single_inst

NAMES = ('simple', 'single-inst', 'multi-inst')


class Command(DivisibleLoadCommand):
    help = "Run one of the load-by-load heuristics on an instance"

    def add_arguments(self, parser):
        parser.add_argument('--name', required=True, choices=NAMES, help='heuristic to run')
        parser.add_argument('--cap', type=int, help='multi-inst: largest number of installments per load')
        parser.add_argument(
            '--uncapped',
            action='store_true',
            help='multi-inst without a cap; reports the coverage bound when the load cannot be finished'
        )
        parser.add_argument('--instance', required=True, help='instance JSON file')
        parser.add_argument('--out', help='schedule JSON file (default: stdout)')

    def handle(self, *args, **options):
        name, cap = options['name'], options['cap']
        if name != 'multi-inst' and (cap is not None or options['uncapped']):
            raise CommandError("--cap and --uncapped only apply to multi-inst", returncode=2)
        if cap is not None and options['uncapped']:
            raise CommandError("--cap and --uncapped are exclusive", returncode=2)
        if name == 'multi-inst' and cap is None and not options['uncapped']:
            raise CommandError("multi-inst needs --cap N or --uncapped", returncode=2)

        instance = read_instance(options['instance'])
        p, wl = instance.platform, instance.workload
        if name == 'simple':
            outcome = simple_schedule(p, wl)
        elif name == 'single-inst':
            outcome = single_inst(p, wl)
        else:
            outcome = multi_inst(p, wl, cap=cap)

        if not outcome.ok:
            d = outcome.diagnostics
            message = f"{outcome.strategy}: no solution for load {d.failed_load}: {d.reason}"
            if d.coverage_bound is not None:
                message += f" (coverage bound {d.coverage_bound:.6g} < 1)"
            raise CommandError(message, returncode=1)

        self.emit(schedule_text(outcome.schedule), options['out'], what='schedule')
        self.note(
            f"{outcome.strategy}: makespan {outcome.makespan:.12g}, installments {list(outcome.diagnostics.installments)}",
            options['out'],
        )
