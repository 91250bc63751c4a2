from django.core.management.base import CommandError

from htheorem import reports
from htheorem.cli import EXIT_INVALID
from htheorem.utils.digest import digest

from ._base import ReportCommand, read_path


class Command(ReportCommand):
    help = "Analyse the grand system described by a JSON file"

    def add_arguments(self, parser):
        parser.add_argument("spec_path", help="system description, '-' reads stdin")
        parser.add_argument(
            "--samples",
            type=int,
            default=0,
            help="number of seeded random states for the entropy diagnostics",
        )
        parser.add_argument("--seed", type=int, default=0)
        self.add_tolerance_arguments(parser)
        super().add_arguments(parser)

    def build_report(self, **options):
        if options["samples"] < 0:
            raise CommandError("--samples must not be negative", returncode=EXIT_INVALID)
        try:
            stream = read_path(options["spec_path"])
        except OSError as e:
            raise CommandError(str(e), returncode=EXIT_INVALID)
        with stream:
            description, raw = reports.read_system_description(stream)
        report, _ = reports.analyze(
            description,
            digest(raw),
            samples=options["samples"],
            seed=options["seed"],
            tol_diag=options["tol_diag"],
            tol_unital=options["tol_unital"],
            timing=not options["no_timing"],
        )
        return report

    def is_violation(self, report):
        return not report["theorem"]["implication_consistent"]
