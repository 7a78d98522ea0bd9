"""CSV export of simulation traces."""
from pathlib import Path
import csv
import io
import logging

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1
TRACE_COLUMNS = ('time', 'entity', 'kind', 'load', 'installment', 'detail')


def trace_csv_text(report):
    buffer = io.StringIO()
    buffer.write(f"# format_version: {FORMAT_VERSION}\n")
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(TRACE_COLUMNS)
    for event in report.event_trace:
        writer.writerow([repr(event.time), event.entity, str(event.kind), event.load, event.installment, event.detail])
    return buffer.getvalue()


def write_trace(report, path):
    Path(path).write_text(trace_csv_text(report))
    logger.info(f"Wrote {len(report.event_trace)} trace events to {path}")
