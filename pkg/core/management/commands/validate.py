from django.core.management.base import CommandError

from core.conf import divload_setting
from core.io import read_instance, read_schedule
from core.management.base import DivisibleLoadCommand
from core.validators import validate_schedule


class Command(DivisibleLoadCommand):
    help = "Check a schedule file against the constraints of an instance file"

    def add_arguments(self, parser):
        parser.add_argument('--instance', required=True, help='instance JSON file')
        parser.add_argument('--schedule', required=True, help='schedule JSON file (times optional)')
        parser.add_argument(
            '--tol',
            type=float,
            default=None,
            help='tolerance; time residuals are scaled by the schedule horizon (default: DIVLOAD VALIDATION_TOL)'
        )
        parser.add_argument(
            '--strict-forwarding',
            action='store_true',
            help='also require each processor to finish forwarding before computing'
        )

    def handle(self, *args, **options):
        tol = options['tol'] if options['tol'] is not None else divload_setting('VALIDATION_TOL')
        if tol < 0:
            raise CommandError(f"--tol must be nonnegative, got {tol}", returncode=2)

        instance = read_instance(options['instance'])
        schedule = read_schedule(options['schedule'])
        report = validate_schedule(
            instance.platform, instance.workload, schedule.installments, schedule,
            tol=tol, strict_forwarding=options['strict_forwarding'],
        )
        if not report.ok:
            for family, index, residual in report.violations[:20]:
                self.stderr.write(f"  family {family} at {index}: residual {residual:.3g}")
            raise CommandError(f"invalid schedule: {report.summary()}", returncode=1)
        detail = f", makespan {schedule.makespan:.12g}" if schedule.has_times else ""
        self.stdout.write(self.style.SUCCESS(f"Valid schedule (q={list(schedule.installments)}{detail})"))
