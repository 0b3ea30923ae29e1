# -*- coding: utf-8 -*-

import csv
import io
import json
import os
from contextlib import redirect_stderr, redirect_stdout
from importlib import reload
from tempfile import TemporaryDirectory
from unittest import TestCase
from unittest.mock import patch

from ppmadc import config
from ppmadc.__main__ import main
from ppmadc.cli import Experiment, _create_arg_parser, _load_configuration
from ppmadc.constructions import construction1, cyclic_pda
from ppmadc.errors import ConfigError, DivisibilityError, ParamError
from ppmadc.parameters import OUTPUT_DIR_VARIABLE
from ppmadc.pda import serialize_pda_text
from ppmadc.reporter import Category, MemoryReporter

from .fixtures import CORRUPTED_TEXT, CYCLIC_6_2_TEXT


def _experiment(*argv):
    cli_args = _create_arg_parser().parse_args(list(argv))
    reload(config)
    config.REPORTER = MemoryReporter
    stream = io.StringIO()
    return Experiment(cli_args, config, stream), stream


class ConstructTestCase(TestCase):
    def test_cyclic(self):
        experiment, stream = _experiment(
            "construct", "--model", "cyclic", "--q", "6", "--alpha", "2")

        self.assertEqual(experiment.run(), 0)
        self.assertEqual(stream.getvalue(), CYCLIC_6_2_TEXT)
        self.assertEqual(experiment.reporter.history[0].message,
                         "(6,6,2,12), g=2, l=1")

    def test_connect_extended(self):
        experiment, stream = _experiment(
            "construct", "--model", "connect", "--f", "3", "--alpha", "2",
            "--k", "3")

        self.assertEqual(experiment.run(), 0)
        self.assertEqual(stream.getvalue(),
                         serialize_pda_text(construction1(3, 2, 3)))
        self.assertTrue(experiment.reporter.history[0].message.startswith(
            "(9,9,8,1)"))

    def test_invalid_point(self):
        experiment, _ = _experiment(
            "construct", "--model", "cyclic", "--q", "4", "--alpha", "2")

        with self.assertRaises(ParamError) as context:
            experiment.run()
        self.assertIn("alpha < Q/2 violated", str(context.exception))

    def test_ranges_are_rejected(self):
        experiment, _ = _experiment(
            "construct", "--model", "cyclic", "--q", "6..8", "--alpha", "2")

        with self.assertRaises(ConfigError):
            experiment.run()

    def test_output_directory_variable(self):
        with TemporaryDirectory() as directory:
            with patch.dict(os.environ, {OUTPUT_DIR_VARIABLE: directory}):
                experiment, stream = _experiment(
                    "construct", "--model", "cyclic", "--q", "5",
                    "--alpha", "1", "--output", "cyclic.txt")
                self.assertEqual(experiment.run(), 0)

            with open(os.path.join(directory, "cyclic.txt")) as content:
                self.assertEqual(content.read(),
                                 serialize_pda_text(cyclic_pda(5, 1)))
        self.assertEqual(stream.getvalue(), "")


class VerifyTestCase(TestCase):
    def _verify(self, text, *options):
        with TemporaryDirectory() as directory:
            path = os.path.join(directory, "pda.txt")
            with open(path, "w") as content:
                content.write(text)
            experiment, _ = _experiment("verify", path, *options)
            return experiment.run(), experiment.reporter

    def test_valid_file(self):
        code, reporter = self._verify(CYCLIC_6_2_TEXT)

        self.assertEqual(code, 0)
        self.assertEqual(reporter.history[0].category, Category.RESULT)
        self.assertEqual(reporter.history[0].message, "(6,6,2,12), g=2, l=1")

    def test_corrupted_file(self):
        code, reporter = self._verify(CORRUPTED_TEXT)

        self.assertEqual(code, 1)
        self.assertEqual(reporter.found_issues[Category.VIOLATION], 1)
        message = reporter.history[0]
        self.assertEqual(message.code, "uncrossed-pair")
        self.assertEqual(message.location, "A3")
        self.assertIn("(1, 2) and (2, 3)", message.message)

    def test_disabled_condition(self):
        code, reporter = self._verify(CORRUPTED_TEXT, "--disable", "A3")

        self.assertEqual(code, 0)
        self.assertEqual(reporter.found_issues[Category.WARNING], 1)
        self.assertEqual(reporter.history[0].code, "uncrossed-pair")

    def test_unparsable_file(self):
        code, reporter = self._verify("* 1\n1 x\n")

        self.assertEqual(code, 1)
        self.assertEqual(reporter.history[0].category, Category.FATAL)
        self.assertEqual(reporter.history[0].location, "line 2")


class SimulateTestCase(TestCase):
    def _rows(self, *argv):
        experiment, stream = _experiment("simulate", "--format", "json",
                                         *argv)
        code = experiment.run()
        return code, json.loads(stream.getvalue())

    def test_three_reducers_connect(self):
        code, rows = self._rows("--model", "connect", "--k", "3", "--f", "3",
                                "--alpha", "2")

        self.assertEqual(code, 0)
        self.assertEqual(len(rows), 1)
        self.assertEqual(rows[0]["L"], "1/18")
        self.assertEqual(rows[0]["L_formula"], "1/18")
        self.assertEqual(rows[0]["r"], "1")
        self.assertEqual(rows[0]["bits"], 24)
        self.assertEqual(rows[0]["d_file"], 64)
        self.assertEqual(rows[0]["status"], "ok")

    def test_six_reducers_cyclic(self):
        code, rows = self._rows("--model", "cyclic", "--k", "6", "--q", "6",
                                "--alpha", "2", "--trials", "2")

        self.assertEqual(code, 0)
        self.assertEqual(rows[0]["L"], "1/15")
        self.assertEqual(rows[0]["S"], 12)

    def test_sweep_of_connect_points(self):
        code, rows = self._rows("--model", "connect", "--k", "2..5",
                                "--f", "3..6", "--alpha", "all",
                                "--seed", "5")

        self.assertEqual(code, 0)
        self.assertEqual(len(rows), 4 * (2 + 3 + 4 + 5))
        self.assertTrue(all(row["L"] == row["L_formula"] for row in rows))
        self.assertEqual(
            [(row["K"], row["inner"], row["alpha"]) for row in rows[:3]],
            [(2, 3, 1), (2, 3, 2), (2, 4, 1)])

    def test_parallel_rows_match(self):
        argv = ("--model", "cyclic", "--k", "2..3", "--q", "5..6",
                "--alpha", "all")
        _, serial = self._rows(*argv)
        _, parallel = self._rows("--workers", "2", *argv)
        self.assertEqual(serial, parallel)

    def test_indivisible_packets(self):
        experiment, _ = _experiment(
            "simulate", "--model", "connect", "--k", "3", "--f", "3",
            "--alpha", "2", "--beta", "3")

        with self.assertRaises(DivisibilityError):
            experiment.run()

    def test_k_is_required(self):
        experiment, _ = _experiment(
            "simulate", "--model", "connect", "--f", "3", "--alpha", "2")

        with self.assertRaises(ConfigError):
            experiment.run()


class AuditTestCase(TestCase):
    def test_exact(self):
        experiment, stream = _experiment(
            "audit", "--model", "connect", "--f", "3", "--alpha", "1",
            "--k", "3")

        self.assertEqual(experiment.run(), 0)
        rows = list(csv.DictReader(io.StringIO(stream.getvalue())))
        self.assertEqual(len(rows), 1)
        self.assertEqual(rows[0]["Q"], "3")
        self.assertEqual(rows[0]["mode"], "exact")
        self.assertEqual(rows[0]["statistic"], "0")
        self.assertEqual(rows[0]["factorizes"], "true")
        self.assertEqual(rows[0]["passed"], "true")

    def test_sampled(self):
        experiment, stream = _experiment(
            "audit", "--model", "cyclic", "--q", "3", "--alpha", "1",
            "--exact-limit", "2", "--trials", "6000", "--format", "json")

        self.assertEqual(experiment.run(), 0)
        rows = json.loads(stream.getvalue())
        self.assertEqual([row["demand"] for row in rows], [1, 2, 3])
        self.assertTrue(all(row["mode"] == "sampled" for row in rows))

    def test_sampling_needs_bounded_cells(self):
        experiment, _ = _experiment(
            "audit", "--model", "connect", "--f", "6", "--alpha", "3",
            "--trials", "10")

        with self.assertRaises(ConfigError) as context:
            experiment.run()
        self.assertIn("Q=20", str(context.exception))

    def test_functions_override(self):
        experiment, stream = _experiment(
            "audit", "--functions", "1", "--format", "json")

        self.assertEqual(experiment.run(), 0)
        rows = json.loads(stream.getvalue())
        self.assertEqual(len(rows), 1)
        self.assertEqual((rows[0]["Q"], rows[0]["K"]), (1, 2))
        self.assertEqual(rows[0]["statistic"], "0")
        self.assertEqual(rows[0]["passed"], "true")

    def test_sampled_seven_functions(self):
        experiment, stream = _experiment(
            "audit", "--functions", "7", "--trials", "100",
            "--max-cells", "5040", "--format", "json")

        experiment.run()
        rows = json.loads(stream.getvalue())
        self.assertEqual([row["demand"] for row in rows], list(range(1, 8)))
        self.assertEqual(rows[0]["threshold"], rows[6]["threshold"])


class SweepTestCase(TestCase):
    def test_both_models(self):
        experiment, stream = _experiment(
            "sweep", "--model", "both", "--f", "2..8", "--q", "3..20",
            "--alpha", "all", "--k", "2")

        self.assertEqual(experiment.run(), 0)
        rows = list(csv.DictReader(io.StringIO(stream.getvalue())))
        self.assertTrue(all(row["status"] == "ok" for row in rows))
        self.assertEqual(
            sum(row["model"] == "connect" for row in rows),
            sum(F - 1 for F in range(2, 9)))
        cyclic = [row for row in rows if row["model"] == "cyclic"]
        self.assertTrue(all(row["l"] == "1" and row["g"] == "2"
                            for row in cyclic))

    def test_base_arrays_only(self):
        experiment, stream = _experiment(
            "sweep", "--model", "cyclic", "--q", "6", "--alpha", "2",
            "--format", "json")

        self.assertEqual(experiment.run(), 0)
        row = json.loads(stream.getvalue())[0]
        self.assertEqual(row["base"], "(6,6,2,12), g=2, l=1")
        self.assertIsNone(row["extended"])


class ConfigurationTestCase(TestCase):
    def test_missing_explicit_file(self):
        with self.assertRaises(ConfigError):
            _load_configuration("/nonexistent/ppmadc.config.py")

    CONFIG = (
        "from ppmadc.reporter import MemoryReporter\n"
        "MODEL = 'cyclic'\nQ = '5'\nALPHA = '1'\n"
        "FORMAT = 'csv'\nREPORTER = MemoryReporter\n")

    def test_config_file_overrides_defaults(self):
        with TemporaryDirectory() as directory:
            path = os.path.join(directory, "ppmadc.config.py")
            with open(path, "w") as content:
                content.write(self.CONFIG)
            cli_args = _create_arg_parser().parse_args(
                ["--config", path, "construct"])
            stream = io.StringIO()
            experiment = Experiment(cli_args, stream=stream)

            self.assertEqual(experiment.run(), 0)
        self.assertEqual(stream.getvalue(),
                         serialize_pda_text(cyclic_pda(5, 1)))

    def test_main_exit_codes(self):
        with TemporaryDirectory() as directory:
            path = os.path.join(directory, "ppmadc.config.py")
            with open(path, "w") as content:
                content.write(self.CONFIG)

            output = io.StringIO()
            argv = ["ppmadc", "--config", path, "construct", "--q", "4",
                    "--alpha", "2"]
            with patch("sys.argv", argv), redirect_stderr(output):
                self.assertEqual(main(), 2)
            self.assertIn("Error: alpha < Q/2 violated", output.getvalue())

            output = io.StringIO()
            argv = ["ppmadc", "--config", path, "construct"]
            with patch("sys.argv", argv), redirect_stdout(output):
                self.assertEqual(main(), 0)
            self.assertEqual(output.getvalue(),
                             serialize_pda_text(cyclic_pda(5, 1)))

    def test_no_command(self):
        experiment, _ = _experiment()
        self.assertEqual(experiment.run(), 0)


class OutputStreamsTestCase(TestCase):
    CONFIG = (
        "from ppmadc.config import *\n"
        "from ppmadc.reporter import TextReporter\n"
        "REPORTER = TextReporter\n")

    def _main(self, directory, *argv):
        path = os.path.join(directory, "ppmadc.config.py")
        with open(path, "w") as content:
            content.write(self.CONFIG)

        stdout, stderr = io.StringIO(), io.StringIO()
        argv = ["ppmadc", "--config", path] + list(argv)
        with patch("sys.argv", argv), redirect_stdout(stdout), \
                redirect_stderr(stderr):
            code = main()
        return code, stdout.getvalue(), stderr.getvalue()

    def test_redirected_pda_verifies(self):
        with TemporaryDirectory() as directory:
            code, stdout, stderr = self._main(
                directory, "construct", "--model", "cyclic", "--q", "6",
                "--alpha", "2")
            self.assertEqual(code, 0)
            self.assertEqual(stdout, CYCLIC_6_2_TEXT)
            self.assertIn("(6,6,2,12), g=2, l=1", stderr)
            self.assertIn("Result:", stderr)

            path = os.path.join(directory, "p.txt")
            with open(path, "w") as content:
                content.write(stdout)
            code, stdout, stderr = self._main(directory, "verify", path)
        self.assertEqual(code, 0)
        self.assertEqual(stdout, "")
        self.assertIn("(6,6,2,12), g=2, l=1", stderr)

    def test_report_rows_stay_parsable(self):
        with TemporaryDirectory() as directory:
            code, stdout, stderr = self._main(
                directory, "simulate", "--model", "connect", "--k", "3",
                "--f", "3", "--alpha", "2")
        self.assertEqual(code, 0)
        rows = list(csv.DictReader(io.StringIO(stdout)))
        self.assertEqual([row["L"] for row in rows], ["1/18"])
        self.assertIn("1 results", stderr)

    def test_oversized_sampling_exits_with_usage_error(self):
        with TemporaryDirectory() as directory:
            code, stdout, stderr = self._main(
                directory, "audit", "--model", "connect", "--f", "6",
                "--alpha", "3", "--trials", "10")
        self.assertEqual(code, 2)
        self.assertEqual(stdout, "")
        self.assertIn("Error: sampling Q=20", stderr)
