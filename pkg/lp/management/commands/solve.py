from core.io import read_instance, schedule_text
from core.management.base import DivisibleLoadCommand
from lp.formulation import build_lp, natural_time_scale
from lp.lpformat import export_lp_text
from lp.services import optimal_schedule, resolve_installments


class Command(DivisibleLoadCommand):
    help = "Compute the optimal schedule of an instance for given installment counts"

    def add_arguments(self, parser):
        parser.add_argument('--instance', required=True, help='instance JSON file')
        counts = parser.add_mutually_exclusive_group(required=True)
        counts.add_argument(
            '--installments',
            help="per-load installment counts, e.g. '2,2', or 'auto' (needs --rho-max)"
        )
        counts.add_argument('--uniform-q', type=int, help='same installment count for every load')
        parser.add_argument('--startup', type=float, default=0.0,
                            help="per-message startup volume used by --installments auto (default: 0)")
        parser.add_argument('--rho-max', type=float, help="largest accepted overhead ratio for --installments auto")
        parser.add_argument('--max-installments', type=int, default=3,
                            help="cap on the counts chosen by --installments auto (default: 3)")
        parser.add_argument('--reduced', action='store_true', help='solve the reduced form (fewer columns)')
        parser.add_argument('--strict-forwarding', action='store_true',
                            help='require each processor to finish forwarding before computing')
        parser.add_argument('--out', help='schedule JSON file (default: stdout)')
        parser.add_argument('--lp-out', help='also write the LP in text format to this file')

    def handle(self, *args, **options):
        instance = read_instance(options['instance'])
        p, wl = instance.platform, instance.workload
        q = resolve_installments(
            wl, installments=options['installments'], uniform_q=options['uniform_q'], platform=p,
            startup=options['startup'], rho_max=options['rho_max'], max_installments=options['max_installments'],
        )

        if options['lp_out']:
            problem = build_lp(
                p, wl, q, reduced=options['reduced'], strict_forwarding=options['strict_forwarding'],
                time_scale=natural_time_scale(p, wl),
            )
            self.emit(export_lp_text(problem), options['lp_out'], what='LP')

        schedule, makespan = optimal_schedule(
            p, wl, q, reduced=options['reduced'], strict_forwarding=options['strict_forwarding'],
            instance_id=instance.instance_id,
        )
        self.emit(schedule_text(schedule), options['out'], what='schedule')
        self.note(f"Optimal makespan for q={list(q)}: {makespan:.12g}", options['out'])
