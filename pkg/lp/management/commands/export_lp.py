from django.core.management.base import CommandError

from core.io import read_instance
from core.management.base import DivisibleLoadCommand
from lp.formulation import build_lp
from lp.lpformat import export_lp_text
from lp.services import resolve_installments


class Command(DivisibleLoadCommand):
    help = "Write the scheduling LP of an instance in LP text format"

    def add_arguments(self, parser):
        parser.add_argument('--instance', required=True, help='instance JSON file')
        counts = parser.add_mutually_exclusive_group(required=True)
        counts.add_argument('--installments', help="per-load installment counts, e.g. '2,2'")
        counts.add_argument('--uniform-q', type=int, help='same installment count for every load')
        parser.add_argument('--reduced', action='store_true', help='export the reduced form')
        parser.add_argument('--strict-forwarding', action='store_true')
        parser.add_argument('--time-scale', type=float, default=1.0, help='divide every time coefficient by this value')
        parser.add_argument('--out', help='LP file (default: stdout)')

    def handle(self, *args, **options):
        if not options['time_scale'] > 0:
            raise CommandError(f"--time-scale must be positive, got {options['time_scale']}", returncode=2)
        instance = read_instance(options['instance'])
        q = resolve_installments(instance.workload, installments=options['installments'], uniform_q=options['uniform_q'])
        problem = build_lp(
            instance.platform, instance.workload, q,
            reduced=options['reduced'], strict_forwarding=options['strict_forwarding'],
            time_scale=options['time_scale'],
        )
        self.emit(export_lp_text(problem), options['out'], what='LP')
