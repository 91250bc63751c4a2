import json

import numpy as np
from django.test import override_settings

from htheorem import reports, settings
from htheorem.exceptions import ValidationError
from htheorem.tests.utils import HTheoremTestCase, fixture_path


def analyze_fixture(name, **kwargs):
    with open(fixture_path(name), "rb") as f:
        description, raw = reports.read_system_description(f)
    report, _ = reports.analyze(description, "sha256:test", **kwargs)
    return report


class AnalyzeTest(HTheoremTestCase):
    def test_demon(self):
        report = analyze_fixture("demon.json", timing=False)
        self.assertEqual(report["kind"], "analysis")
        self.assertFalse(report["theorem"]["diag_invariant"])
        self.assertFalse(report["theorem"]["unital"])
        self.assertTrue(report["theorem"]["implication_consistent"])
        self.assertNotIn("timing", report)
        mixed = report["entropy"][0]
        self.assertEqual(mixed["label"], "maximally_mixed")
        self.assertAlmostEqual(mixed["gain"], -np.log(2), places=10)
        self.assertSmall(abs(mixed["gap"]), 1e-10)
        self.assertAllClose(
            report["unitality"]["phi_of_one"],
            [[[2.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.0, 0.0]]],
        )

    def test_no_interaction(self):
        report = analyze_fixture("identity.json")
        self.assertTrue(report["theorem"]["diag_invariant"])
        self.assertTrue(report["theorem"]["unital"])
        self.assertSmall(report["theorem"]["unitality_defect"], 1e-12)
        self.assertIn("timing", report)

    def test_states_and_samples(self):
        report = analyze_fixture("controlled.json", samples=3, seed=4)
        labels = [row["label"] for row in report["entropy"]]
        self.assertEqual(
            labels,
            ["maximally_mixed", "state_0", "state_1", "sample_0", "sample_1", "sample_2"],
        )
        for row in report["entropy"]:
            self.assertAlmostEqual(row["holevo_bound"], 0.0, places=9)
            self.assertGreaterEqual(row["gain"], -1e-10)

    def test_tolerance_priority(self):
        with open(fixture_path("demon.json"), "rb") as f:
            description, _ = reports.read_system_description(f)
        report, theorem_report = reports.analyze(description, "x", tol_diag=2.0)
        self.assertTrue(theorem_report.diag_invariant)
        self.assertFalse(report["theorem"]["implication_consistent"])

    def test_stable_output(self):
        first = reports.render(analyze_fixture("controlled.json", samples=2, timing=False))
        second = reports.render(analyze_fixture("controlled.json", samples=2, timing=False))
        self.assertEqual(first, second)

    def test_round_trip(self):
        report = analyze_fixture("controlled.json", samples=1)
        loaded = reports.load_report(reports.render(report))
        self.assertEqual(loaded["kind"], "analysis")
        self.assertEqual(loaded["input_digest"], report["input_digest"])
        self.assertEqual(
            dict(loaded["theorem"])["diag_invariant"],
            report["theorem"]["diag_invariant"],
        )
        self.assertAllClose(
            loaded["unitality"]["phi_of_one"],
            np.array([[complex(*z) for z in row] for row in report["unitality"]["phi_of_one"]]),
            atol=0.0,
        )

    def test_unknown_report_kind(self):
        with self.assertRaises(ValidationError):
            reports.load_report(b'{"kind": "plot"}')


class SweepTest(HTheoremTestCase):
    def test_controlled(self):
        report = reports.sweep("controlled", 30, dsys=[2, 3], dres=[2, 3], seed=1)
        summary = report["summary"]
        self.assertEqual(summary["trials"], 30)
        self.assertEqual(summary["diag_invariant"], 30)
        self.assertEqual(summary["unital"], 30)
        self.assertEqual(summary["violations"], 0)
        self.assertSmall(summary["max_off_block_norm_invariant"], 1e-8)
        self.assertSmall(summary["max_norm_defect_invariant"], 1e-8)
        self.assertSmall(summary["max_dephasing_residual"], 1e-9)
        self.assertSmall(summary["max_reconstruction_defect"], 1e-9)
        self.assertSmall(summary["max_agreement_residual"], 1e-9)
        self.assertEqual([row["index"] for row in report["trials"]], list(range(30)))
        self.assertEqual({row["d_sys"] for row in report["trials"]}, {2, 3})

    def test_haar(self):
        report = reports.sweep("haar", 30, seed=2, timing=False)
        summary = report["summary"]
        self.assertEqual(summary["diag_invariant"], 0)
        self.assertEqual(summary["violations"], 0)
        self.assertIsNone(summary["max_unitality_defect_invariant"])
        self.assertIsNone(summary["max_dephasing_residual"])

    def test_demon(self):
        report = reports.sweep("demon", 5, dsys=[2, 3], dres=[4])
        for row in report["trials"]:
            self.assertEqual(row["d_res"], row["d_sys"])
            self.assertFalse(row["unital"])

    def test_trials_are_independent_of_the_sweep(self):
        full = reports.sweep("haar", 6, seed=3, timing=False)
        row = reports.run_trial("haar", 3, 4, [2], [2], 1e-9, 1e-8)
        self.assertEqual(dict(full["trials"][4])["diag_residual"], row["diag_residual"])

    def test_factorization_tolerance_is_explicit(self):
        strict = reports.run_trial(
            "controlled", 5, 0, [2], [2], 1e-9, 1e-8, tol_factorization=-1.0
        )
        self.assertFalse(strict["factorization_ok"])
        self.assertIsNone(strict["dephasing_residual"])
        default = reports.run_trial("controlled", 5, 0, [2], [2], 1e-9, 1e-8)
        self.assertTrue(default["factorization_ok"])

    @override_settings(HTHEOREM_TOL_FACTORIZATION=-1.0)
    def test_settings_reach_the_workers(self):
        self.addCleanup(self.reload_modules, [settings])
        self.reload_modules([settings])
        serial = reports.sweep("controlled", 4, seed=5, workers=1, timing=False)
        parallel = reports.sweep("controlled", 4, seed=5, workers=2, timing=False)
        self.assertEqual(reports.render(serial), reports.render(parallel))
        for row in parallel["trials"]:
            self.assertFalse(row["factorization_ok"])

    def test_reproducible(self):
        first = reports.render(reports.sweep("controlled", 5, seed=9, timing=False))
        second = reports.render(reports.sweep("controlled", 5, seed=9, timing=False))
        self.assertEqual(first, second)

    def test_round_trip(self):
        report = reports.sweep("controlled", 3, seed=9)
        loaded = reports.load_report(reports.render(report))
        self.assertEqual(loaded["config"]["trials"], 3)
        self.assertEqual(len(loaded["trials"]), 3)

    def test_invalid(self):
        with self.assertRaises(ValidationError):
            reports.sweep("gaussian", 3)
        with self.assertRaises(ValidationError):
            reports.sweep("haar", 0)
        with self.assertRaises(ValidationError):
            reports.sweep("haar", 3, dsys=[0])


class DemoTest(HTheoremTestCase):
    def test_identity(self):
        report = reports.demo("identity")
        self.assertSmall(report["theorem"]["unitality_defect"], 1e-12)
        self.assertEqual(report["scenario"], "identity")

    def test_demon(self):
        report = reports.demo("demon")
        self.assertAlmostEqual(report["entropy"][0]["gain"], -np.log(2), places=10)
        self.assertAlmostEqual(
            report["theorem"]["unitality_defect"], np.sqrt(2), places=10
        )

    def test_controlled(self):
        report = reports.demo("controlled")
        self.assertTrue(report["theorem"]["diag_invariant"])
        self.assertSmall(report["theorem"]["dephasing_residual"], 1e-9)

    def test_collision(self):
        report = reports.demo("collision")
        trajectory = report["trajectory"]
        self.assertEqual(len(trajectory), 11)
        self.assertTrue(np.all(np.diff(trajectory) >= -1e-9))

    def test_stable(self):
        self.assertEqual(
            reports.render(reports.demo("controlled", timing=False)),
            reports.render(reports.demo("controlled", timing=False)),
        )
        self.assertEqual(
            json.loads(reports.render(reports.demo("demon")))["input_digest"],
            json.loads(reports.render(reports.demo("demon")))["input_digest"],
        )

    def test_unknown(self):
        with self.assertRaises(ValidationError):
            reports.demo("maxwell")
