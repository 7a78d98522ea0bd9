import os
import sys

from django.core.management import execute_from_command_line


def cli_main(argv=None):
    """
    Run one management command (generate, solve, heuristic, validate,
    simulate, bench, gantt) and return its exit code: 0 on success, 1 on
    domain errors, 2 on usage errors.
    """
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'divload.settings')
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        execute_from_command_line(['divload'] + argv)
    except SystemExit as exc:
        if exc.code is None:
            return 0
        return exc.code if isinstance(exc.code, int) else 1
    return 0


if __name__ == '__main__':
    sys.exit(cli_main())
