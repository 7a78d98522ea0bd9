from pathlib import Path
import logging

from django.core.management.base import BaseCommand, CommandError

from core.exceptions import DivisibleLoadError

logger = logging.getLogger(__name__)


class DivisibleLoadCommand(BaseCommand):
    """
    Base for the toolkit commands. Domain errors and unreadable files end the
    command with exit code 1; argparse keeps exit code 2 for usage errors.
    """

    def execute(self, *args, **options):
        try:
            return super().execute(*args, **options)
        except DivisibleLoadError as exc:
            logger.warning(f"{self.__module__.rsplit('.', 1)[-1]} failed: {exc}")
            raise CommandError(f"{exc.code}: {exc}", returncode=1)
        except OSError as exc:
            raise CommandError(str(exc), returncode=1)

    def emit(self, text, path=None, what='output'):
        """Write `text` to `path`, or to stdout when no path is given."""
        if path:
            Path(path).write_text(text)
            self.stdout.write(f"Wrote {what} to {path}")
        else:
            self.stdout.write(text, ending='')

    def note(self, message, path=None):
        """Summary line; goes to stderr when the result itself is printed on stdout."""
        stream = self.stdout if path else self.stderr
        stream.write(self.style.SUCCESS(message) if path else message)
