from htheorem import reports

from ._base import ReportCommand


class Command(ReportCommand):
    help = "Run a built-in scenario with the fixed demo seed"

    def add_arguments(self, parser):
        parser.add_argument("name", help="one of %s" % ", ".join(reports.DEMOS))
        super().add_arguments(parser)

    def build_report(self, **options):
        return reports.demo(options["name"], timing=not options["no_timing"])

    def is_violation(self, report):
        return not report["theorem"]["implication_consistent"]
