from bench.gantt import render_gantt
from core.io import read_instance, read_schedule
from core.management.base import DivisibleLoadCommand


class Command(DivisibleLoadCommand):
    help = "Draw a schedule as an SVG timeline (one lane per processor and per link)"

    def add_arguments(self, parser):
        parser.add_argument('--instance', required=True, help='instance JSON file')
        parser.add_argument('--schedule', required=True, help='schedule JSON file')
        parser.add_argument('--out', help='SVG file (default: stdout)')

    def handle(self, *args, **options):
        instance = read_instance(options['instance'])
        schedule = read_schedule(options['schedule'])
        svg = render_gantt(instance.platform, schedule, workload=instance.workload)
        self.emit(svg, options['out'], what='SVG timeline')
