from pathlib import Path
import json

from django.core.management.base import CommandError
from django.utils import timezone

from bench.generation import GenConfig, generate_instances
from bench.models import BenchRun
from bench.runner import run_bench
from core.io import read_instance
from core.management.base import DivisibleLoadCommand


class Command(DivisibleLoadCommand):
    help = "Benchmark heuristics against the LP optimum and report relative performance"

    def add_arguments(self, parser):
        source = parser.add_mutually_exclusive_group(required=True)
        source.add_argument('--config', help='JSON file with generator settings')
        source.add_argument('--instances', help='directory of instance JSON files')
        parser.add_argument(
            '--strategies',
            required=True,
            help="comma-separated list, e.g. 'simple,single-inst,multi-inst:100,lp:1,lp:2'"
        )
        parser.add_argument('--seed', type=int, help='override the seed of --config')
        parser.add_argument('--out', help='CSV report (default: stdout)')
        parser.add_argument('--json', help='also write the full report (per-instance makespans) as JSON')
        parser.add_argument('--verify', action='store_true',
                            help='validate and replay every schedule; anomalies make the command fail')
        parser.add_argument('--full-form', action='store_true', help='solve the full LP instead of the reduced form')
        parser.add_argument('--celery', action='store_true', help='evaluate instances as Celery tasks')
        parser.add_argument('--record', action='store_true', help='store the run in the database')

    def _instances(self, options):
        if options['instances']:
            files = sorted(Path(options['instances']).glob('*.json'))
            files = [f for f in files if f.name != 'config.json']
            if not files:
                raise CommandError(f"no instance files in {options['instances']}", returncode=1)
            return [read_instance(f) for f in files], {'instances': str(options['instances'])}

        try:
            conf = json.loads(Path(options['config']).read_text())
        except json.JSONDecodeError as exc:
            raise CommandError(f"{options['config']} is not valid JSON: {exc.msg}", returncode=1)
        if options['seed'] is not None:
            conf['seed'] = options['seed']
        cfg = GenConfig.from_dict(conf)
        return generate_instances(cfg), {'config': cfg.to_dict()}

    def handle(self, *args, **options):
        instances, metadata = self._instances(options)
        report = run_bench(
            instances, options['strategies'],
            verify=options['verify'],
            reduced=False if options['full_form'] else None,
            use_celery=True if options['celery'] else None,
            metadata=metadata,
        )

        self.emit(report.csv_text(), options['out'], what='CSV report')
        if options['json']:
            Path(options['json']).write_text(report.json_text())
            self.stdout.write(f"Wrote JSON report to {options['json']}")

        if options['record']:
            config = metadata.get('config', {})
            run = BenchRun.objects.create(
                config=config,
                strategies=report.metadata['strategies'],
                seed=config.get('seed', 0),
                verify=options['verify'],
                status=BenchRun.Status.DONE,
                report=report.to_dict(),
                finished_at=timezone.now(),
            )
            self.note(f"Recorded bench run {run.pk}", options['out'])

        anomalies = report.anomalies
        if anomalies:
            for anomaly in anomalies[:20]:
                self.stderr.write(f"  {anomaly}")
            raise CommandError(f"verification found {len(anomalies)} anomaly(ies)", returncode=1)
        self.note(f"Benchmarked {len(report.results)} instance(s)", options['out'])
