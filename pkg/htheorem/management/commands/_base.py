import logging
import sys

from django.core.management.base import BaseCommand, CommandError

from htheorem import reports
from htheorem.cli import EXIT_INVALID, EXIT_VIOLATION
from htheorem.exceptions import HTheoremError

logger = logging.getLogger(__name__)


class ReportCommand(BaseCommand):
    "Shared flags and output handling of the report-producing commands."

    def add_tolerance_arguments(self, parser):
        parser.add_argument("--tol-diag", type=float, default=None)
        parser.add_argument("--tol-unital", type=float, default=None)

    def add_arguments(self, parser):
        parser.add_argument(
            "--out", default=None, help="write the report to this path instead of stdout"
        )
        parser.add_argument(
            "--no-timing",
            action="store_true",
            help="leave the timing object out, the report is then byte-stable",
        )

    def build_report(self, **options):
        raise NotImplementedError

    def is_violation(self, report):
        raise NotImplementedError

    def handle(self, *args, **options):
        try:
            report = self.build_report(**options)
        except HTheoremError as e:
            raise CommandError(str(e), returncode=EXIT_INVALID)

        self.write_report(report, options["out"])
        if self.is_violation(report):
            raise CommandError(
                "diagonal invariance holds but the channel is not unital",
                returncode=EXIT_VIOLATION,
            )

    def write_report(self, report, out):
        content = reports.render(report)
        if out is None:
            self.stdout.write(content.decode("utf-8"))
        else:
            with open(out, "wb") as f:
                f.write(content)
                f.write(b"\n")
            logger.info("report written to %s", out)


def read_path(path):
    if path == "-":
        return sys.stdin.buffer
    return open(path, "rb")
