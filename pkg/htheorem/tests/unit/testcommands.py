import json
import os
import tempfile
from io import StringIO

from django.core.management import call_command
from django.core.management.base import CommandError

from htheorem import cli, reports
from htheorem.tests.utils import HTheoremTestCase, fixture_path


class CommandTestCase(HTheoremTestCase):
    def run_command(self, *args):
        out = StringIO()
        call_command(*args, stdout=out)
        return json.loads(out.getvalue())

    def assertExitCode(self, code, *args):
        with self.assertRaises(CommandError) as context:
            call_command(*args, stdout=StringIO())
        self.assertEqual(context.exception.returncode, code)
        return context.exception


class AnalyzeCommandTest(CommandTestCase):
    def test_no_interaction(self):
        report = self.run_command("analyze", fixture_path("identity.json"))
        self.assertTrue(report["theorem"]["diag_invariant"])
        self.assertTrue(report["theorem"]["unital"])

    def test_demon(self):
        report = self.run_command("analyze", fixture_path("demon.json"), "--no-timing")
        self.assertFalse(report["theorem"]["diag_invariant"])
        self.assertFalse(report["theorem"]["unital"])
        self.assertNotIn("timing", report)
        self.assertTrue(report["input_digest"].startswith("sha256:"))

    def test_out(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "report.json")
            out = StringIO()
            call_command("analyze", fixture_path("controlled.json"), "--out", path, stdout=out)
            self.assertEqual(out.getvalue(), "")
            with open(path, "rb") as f:
                report = reports.load_report(f.read())
        self.assertTrue(report["theorem"]["unital"])

    def test_samples(self):
        report = self.run_command(
            "analyze", fixture_path("demon.json"), "--samples", "2", "--seed", "5"
        )
        self.assertEqual(len(report["entropy"]), 3)

    def test_truncated_json(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "broken.json")
            with open(path, "w") as f:
                f.write('{"version": 1, "d_sys": 2,')
            error = self.assertExitCode(cli.EXIT_INVALID, "analyze", path)
        self.assertIn("JSON parse error", str(error))

    def test_missing_file(self):
        self.assertExitCode(cli.EXIT_INVALID, "analyze", "/nonexistent/spec.json")

    def test_negative_samples(self):
        self.assertExitCode(
            cli.EXIT_INVALID, "analyze", fixture_path("demon.json"), "--samples", "-1"
        )

    def test_violation(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "report.json")
            self.assertExitCode(
                cli.EXIT_VIOLATION,
                "analyze",
                fixture_path("demon.json"),
                "--tol-diag",
                "2",
                "--out",
                path,
            )
            # the report is written before the command fails
            with open(path, "rb") as f:
                report = json.loads(f.read())
        self.assertFalse(report["theorem"]["implication_consistent"])


class SweepCommandTest(CommandTestCase):
    def test_controlled(self):
        report = self.run_command(
            "sweep", "--family", "controlled", "--trials", "20", "--dsys", "2", "3"
        )
        self.assertEqual(report["summary"]["diag_invariant"], 20)
        self.assertEqual(report["summary"]["unital"], 20)
        self.assertEqual(report["config"]["dsys"], [2, 3])

    def test_workers(self):
        serial = self.run_command("sweep", "--trials", "6", "--seed", "2", "--no-timing")
        parallel = self.run_command(
            "sweep", "--trials", "6", "--seed", "2", "--workers", "2", "--no-timing"
        )
        self.assertEqual(serial, parallel)

    def test_zero_trials(self):
        self.assertExitCode(cli.EXIT_INVALID, "sweep", "--trials", "0")

    def test_unknown_family(self):
        self.assertExitCode(cli.EXIT_INVALID, "sweep", "--family", "gaussian")

    def test_violation(self):
        self.assertExitCode(
            cli.EXIT_VIOLATION,
            "sweep",
            "--family",
            "demon",
            "--trials",
            "2",
            "--tol-diag",
            "10",
        )


class DemoCommandTest(CommandTestCase):
    def test_demos(self):
        for name in reports.DEMOS:
            report = self.run_command("demo", name)
            self.assertEqual(report["scenario"], name)
            self.assertTrue(report["theorem"]["implication_consistent"])

    def test_unknown(self):
        self.assertExitCode(cli.EXIT_INVALID, "demo", "maxwell")


class ConsoleScriptTest(HTheoremTestCase):
    def test_usage(self):
        self.assertEqual(cli.main(["plot"]), cli.EXIT_INVALID)
        self.assertEqual(cli.main([]), cli.EXIT_INVALID)
