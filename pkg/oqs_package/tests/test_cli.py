import io
import tempfile
import unittest
from pathlib import Path
from unittest.mock import patch

import numpy as np
import pandas as pd

from ..cli.commands import EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, CommandRequest, main, parse_args, run
from ..model.system import SystemModel, dump_model
from ..utils.config_helper import get_figure1_t_max
from ..utils.data_helper import save_json, load_json
from ..utils.error_helper import KernelDimensionError, UsageError
from .model_factory import FLAT


class TestParseArgs(unittest.TestCase):

    def test_example_request(self):
        request = parse_args(["example", "figure1", "--out", "somewhere"])
        self.assertEqual(request.command, "example")
        self.assertEqual(request.example_name, "figure1")
        self.assertEqual(request.out_path, "somewhere")

    def test_evolve_request(self):
        request = parse_args(["evolve", "--model", "m.json", "--initial", "i.json", "--t-max", "5", "--coherences"])
        self.assertEqual(request.t_max, 5.0)
        self.assertTrue(request.coherences)
        self.assertIsNone(request.samples)

    def test_malformed_requests(self):
        for argv in (
            ["simulate", "--model", "m.json"],
            ["decompose"],
            ["evolve", "--model", "m.json"],
            ["decompose", "extra", "--model", "m.json"],
            ["evolve", "--model", "m.json", "--initial", "i.json", "--t-max", "-1"],
            ["evolve", "--model", "m.json", "--initial", "i.json", "--samples", "1"],
            ["coms", "--model", "m.json", "--convention", "sideways"],
            ["example", "three-tls"],
        ):
            with self.assertRaises(UsageError, msg=argv):
                parse_args(argv)

    def test_main_reports_usage_errors(self):
        self.assertEqual(main(["decompose"]), EXIT_USAGE)


class TestCommands(unittest.TestCase):

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)
        self.assertEqual(main(["example", "figure1", "--out", str(self.dir)]), EXIT_OK)
        self.model = str(self.dir / "figure1.model.json")

    def tearDown(self):
        self.tmp.cleanup()

    def write(self, name, document):
        path = self.dir / name
        save_json(document, path)
        return str(path)

    def test_example_files(self):
        for name in ("figure1.model.json", "figure1.analytics.json", "figure1.initial_1.json", "figure1.initial_3.json"):
            self.assertTrue((self.dir / name).exists(), name)
        analytics = load_json(self.dir / "figure1.analytics.json")
        self.assertEqual(analytics["parameters"]["omega_r"], 0.5)
        self.assertEqual(analytics["eigenstate_labels"], [2, 4, 3, 1])
        initial = load_json(self.dir / "figure1.initial_1.json")
        self.assertEqual(initial["populations"], [0.0, 0.3, 0.7, 0.0])

    def test_verify(self):
        out = self.dir / "verify.json"
        self.assertEqual(main(["verify", "--model", self.model, "--out", str(out)]), EXIT_OK)
        self.assertTrue(load_json(out)["passed"])

    def test_decompose(self):
        out = self.dir / "decompose.json"
        self.assertEqual(main(["decompose", "--model", self.model, "--out", str(out)]), EXIT_OK)
        report = load_json(out)
        self.assertEqual(report["labelled_blocks"], [[1], [2], [3, 4]])
        self.assertEqual(report["block_sizes"], [1, 2, 1])
        self.assertEqual(report["dimension"], 4)

    def test_decompose_is_deterministic(self):
        first, second = self.dir / "first.json", self.dir / "second.json"
        main(["decompose", "--model", self.model, "--out", str(first)])
        main(["decompose", "--model", self.model, "--out", str(second)])
        self.assertEqual(first.read_bytes(), second.read_bytes())

    def test_coms_with_brute_force(self):
        out = self.dir / "coms.json"
        self.assertEqual(main(["coms", "--model", self.model, "--brute-force", "--out", str(out)]), EXIT_OK)
        report = load_json(out)
        self.assertTrue(report["brute_force"]["atoms_match_partition"])
        self.assertEqual(report["independent_count"], 2)
        self.assertEqual([entry["name"] for entry in report["named"]], ["excitation_number", "population_inversion"])

    def test_stationary(self):
        out = self.dir / "stationary.json"
        initial = str(self.dir / "figure1.initial_1.json")
        self.assertEqual(main(["stationary", "--model", self.model, "--initial", initial, "--out", str(out)]), EXIT_OK)
        report = load_json(out)
        self.assertAlmostEqual(report["weights"][1], 1.0, places=12)
        self.assertAlmostEqual(report["assembled_populations"][2], 1 / (1 + np.e), places=9)

    def test_evolve_relaxes_to_prediction(self):
        out = self.dir / "run.csv"
        initial = str(self.dir / "figure1.initial_1.json")
        argv = ["evolve", "--model", self.model, "--initial", initial, "--t-max", "20", "--samples", "101", "--out", str(out)]
        self.assertEqual(main(argv), EXIT_OK)
        frame = pd.read_csv(out)
        self.assertEqual(list(frame.columns), ["t", "p_1", "p_2", "p_3", "p_4"])
        self.assertEqual(len(frame), 101)
        summary = load_json(self.dir / "run.summary.json")
        self.assertAlmostEqual(summary["final_populations_by_label"]["3"], 0.268941, delta=1e-4)
        self.assertLessEqual(summary["l1_distance_to_stationary"], 1e-6)
        self.assertLessEqual(summary["trace_drift"], 1e-9)

    def test_figure1_evolve_defaults_to_configured_horizon(self):
        out = self.dir / "default.csv"
        initial = str(self.dir / "figure1.initial_2.json")
        self.assertEqual(main(["evolve", "--model", self.model, "--initial", initial, "--samples", "11", "--out", str(out)]), EXIT_OK)
        frame = pd.read_csv(out)
        self.assertAlmostEqual(frame["t"].iloc[-1], get_figure1_t_max(), places=12)

    def test_evolve_to_stdout_keeps_summary_separate(self):
        initial = str(self.dir / "figure1.initial_1.json")
        summary_path = self.dir / "stdout_run.summary.json"
        argv = ["evolve", "--model", self.model, "--initial", initial, "--t-max", "5", "--samples", "6", "--summary", str(summary_path)]
        with patch("sys.stdout", new_callable=io.StringIO) as stdout, patch("sys.stderr", new_callable=io.StringIO) as stderr:
            self.assertEqual(main(argv), EXIT_OK)
        frame = pd.read_csv(io.StringIO(stdout.getvalue()))
        self.assertEqual(list(frame.columns), ["t", "p_1", "p_2", "p_3", "p_4"])
        self.assertEqual(len(frame), 6)
        self.assertNotIn("l1_distance_to_stationary", stderr.getvalue())
        self.assertIn("l1_distance_to_stationary", load_json(summary_path))

    def test_summary_only_for_evolve(self):
        with self.assertRaises(UsageError):
            parse_args(["decompose", "--model", "m.json", "--summary", "s.json"])

    def test_evolve_with_coherences(self):
        out = self.dir / "run.csv"
        initial = self.write("rho0.json", {"density_matrix": np.full((4, 4, 2), [0.25, 0.0]).tolist(), "basis": "eigen"})
        argv = ["evolve", "--model", self.model, "--initial", initial, "--t-max", "2", "--samples", "5", "--coherences", "--out", str(out)]
        self.assertEqual(main(argv), EXIT_OK)
        frame = pd.read_csv(out)
        self.assertIn("abs_rho_1_4", frame.columns)
        self.assertAlmostEqual(frame["abs_rho_1_4"].iloc[0], 0.25, places=12)
        self.assertLess(frame["abs_rho_1_4"].iloc[-1], 0.25)

    def test_missing_file(self):
        self.assertEqual(main(["decompose", "--model", str(self.dir / "absent.json")]), EXIT_USAGE)

    def test_invalid_model(self):
        document = {
            "hamiltonian": [[[0.0, 0.0], [1.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]],
            "coupling_operator": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [-1.0, 0.0]]],
            "temperature": 1.0,
            "reservoir": {"family": "flat-kms", "g0": 1.0},
        }
        model = self.write("bad.model.json", document)
        self.assertEqual(main(["verify", "--model", model]), EXIT_VALIDATION)

    def test_non_numeric_matrix_entry(self):
        document = load_json(self.model)
        document["coupling_operator"][0][0] = ["x", 0]
        model = self.write("garbled.model.json", document)
        self.assertEqual(main(["decompose", "--model", model]), EXIT_VALIDATION)

    def test_invalid_initial_state(self):
        initial = self.write("bad.initial.json", {"populations": [0.5, 0.5, 0.5, -0.5]})
        self.assertEqual(main(["stationary", "--model", self.model, "--initial", initial]), EXIT_VALIDATION)

    def test_brute_force_guard(self):
        model = SystemModel(hamiltonian=np.diag(np.arange(17.0)), coupling_operator=np.eye(17), reservoir=FLAT, temperature=1.0)
        path = self.write("large.model.json", dump_model(model))
        self.assertEqual(main(["coms", "--model", path, "--brute-force", "--out", str(self.dir / "c.json")]), EXIT_USAGE)

    def test_nothing_relaxes_needs_t_max(self):
        model = SystemModel(hamiltonian=np.diag([0.0, 1.0]), coupling_operator=np.zeros((2, 2)), reservoir=FLAT, temperature=1.0)
        path = self.write("frozen.model.json", dump_model(model))
        initial = self.write("frozen.initial.json", {"populations": [0.5, 0.5]})
        self.assertEqual(main(["evolve", "--model", path, "--initial", initial, "--out", str(self.dir / "f.csv")]), EXIT_USAGE)

    @patch("oqs_package.cli.commands.Analysis")
    def test_kernel_failure_is_a_validation_error(self, mock_analysis):
        mock_analysis.return_value.load_eigensystem.side_effect = KernelDimensionError("two-dimensional kernel")
        initial = str(self.dir / "figure1.initial_1.json")
        request = CommandRequest(command="stationary", model_path=self.model, initial_path=initial)
        self.assertEqual(run(request), EXIT_VALIDATION)


if __name__ == "__main__":
    unittest.main()
