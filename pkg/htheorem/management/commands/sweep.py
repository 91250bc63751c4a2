from htheorem import ensembles, reports

from ._base import ReportCommand


class Command(ReportCommand):
    help = "Verify the implication on a seeded ensemble of random instances"

    def add_arguments(self, parser):
        parser.add_argument(
            "--family",
            default="controlled",
            help="one of %s" % ", ".join(ensembles.FAMILIES),
        )
        parser.add_argument("--trials", type=int, default=100)
        parser.add_argument("--dsys", type=int, nargs="+", default=[2])
        parser.add_argument("--dres", type=int, nargs="+", default=[2])
        parser.add_argument("--seed", type=int, default=0)
        parser.add_argument(
            "--workers",
            type=int,
            default=None,
            help="worker processes, defaults to HTHEOREM_SWEEP_WORKERS",
        )
        self.add_tolerance_arguments(parser)
        super().add_arguments(parser)

    def build_report(self, **options):
        return reports.sweep(
            options["family"],
            options["trials"],
            dsys=options["dsys"],
            dres=options["dres"],
            seed=options["seed"],
            tol_diag=options["tol_diag"],
            tol_unital=options["tol_unital"],
            workers=options["workers"],
            timing=not options["no_timing"],
        )

    def is_violation(self, report):
        return report["summary"]["violations"] > 0
