# -*- coding: utf-8 -*-

"""
Constructs and verifies placement delivery arrays and simulates private
multi-access distributed computing rounds built on them.
"""

import logging
import os
import sys
from argparse import ArgumentParser
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from math import factorial

import numpy as np

import ppmadc
from .constructions import (
    construction1, construction1_params, construction2, construction2_params,
    cyclic_pda, cyclic_pda_params, man_pda, man_pda_params,
    transposed_man_pda_params)
from .errors import (
    ConditionViolation, ConfigError, ParseError, PrivacyViolation,
    ProtocolError)
from .parameters import MODELS, ExperimentConfig
from .pda import parse_pda_text, serialize_pda_text, transpose
from .privacy import audit_independence, audit_sampling
from .protocol import (
    InstanceConfig, derive_seed, random_demands, run_round)
from .report import exact, write_rows
from .reporter import Category, Message
from .verifier import check_l_cyclic, collect_violations, inspect_pda


logger = logging.getLogger(__name__)


class Experiment:
    def __init__(self, cli_args=None, config=None, stream=None):
        if cli_args:
            self.cli_args = cli_args
        else:
            self.cli_args = _parse_args()

        if getattr(self.cli_args, "verbose", False):
            logging.basicConfig(
                level=logging.DEBUG,
                format="%(levelname)s %(name)s: %(message)s")

        if getattr(self.cli_args, "generate_config", False):
            _create_configuration()

        if config:
            self.config = config
        else:
            self.config = _load_configuration(
                getattr(self.cli_args, "config", None))

        self.stream = stream if stream else sys.stdout
        self._parameters = ExperimentConfig(self.config, self.cli_args)
        self._reporter = self._parameters.reporter()

    @property
    def reporter(self):
        return self._reporter

    def run(self):
        """Runs the selected command and returns the process exit code."""
        if self._parameters.mode is None:
            return 0

        command = getattr(self, "cmd_" + self._parameters.mode)
        command()
        self._reporter.finalize()
        return 1 if self._reporter.failed else 0

    def cmd_construct(self):
        model = self._parameters.model
        inner = self._parameters.single(_inner_name(model))
        alpha = self._parameters.single("alpha")
        K = self._parameters.single("k")
        if inner is None or alpha is None:
            raise ConfigError(
                f"{_inner_name(model).upper()} and ALPHA are required")

        array = _construct(model, inner, alpha, K)
        params = inspect_pda(array)
        with self._output() as stream:
            stream.write(serialize_pda_text(array))

        self._reporter.start_target(_point_name((model, K, inner, alpha)))
        self._report(Category.RESULT, "pda", "params", params.describe())
        self._reporter.finalize_target()

    def cmd_verify(self):
        path = os.path.expanduser(self.cli_args.path)
        self._reporter.start_target(path)
        try:
            with open(path) as content:
                array = parse_pda_text(content.read())
        except ParseError as error:
            self._report(Category.FATAL, "parse-error",
                         f"line {error.line}", str(error))
        except OSError as error:
            self._report(Category.FATAL, "unreadable", path, str(error))
        else:
            self._verify_array(array)
        self._reporter.finalize_target()

    def _verify_array(self, array):
        violations = collect_violations(array, self._parameters.disable)
        for violation in violations:
            self._report(Category.VIOLATION, violation.code,
                         violation.condition, str(violation))
        if violations:
            return

        try:
            params = inspect_pda(array)
        except ConditionViolation as violation:
            self._report(Category.WARNING, violation.code,
                         violation.condition,
                         f"disabled condition fails: {violation}")
            return
        self._report(Category.RESULT, "pda", "params", params.describe())

    def cmd_simulate(self):
        points = self._parameters.points()
        if any(point[1] is None for point in points):
            raise ConfigError("K is required for simulate")

        options = self._round_options()
        for model, K, inner, alpha in points:
            InstanceConfig(model, K, inner, alpha, **options).validate()

        tasks = [(point, options, self._parameters.trials,
                  self._parameters.seed) for point in points]
        rows = self._map(simulate_point, tasks)

        for point, row in zip(points, rows):
            self._reporter.start_target(_point_name(point))
            if row["status"] == "ok":
                self._report(Category.RESULT, "load", "L",
                             f"{row['L']} ({row['L_decimal']}) "
                             f"over {row['trials']} rounds")
            else:
                self._report(Category.FAILURE, "round", "simulate",
                             row["status"])
            self._reporter.finalize_target()

        self._write_rows(rows)

    def _round_options(self):
        return {
            "eta": self._parameters.eta,
            "beta": self._parameters.beta,
            "b_out": self._parameters.b_out,
            "d_file": self._parameters.d_file,
        }

    def cmd_audit(self):
        rows = []
        for Q in self._audit_alphabets():
            for K in self._parameters.values("k") or [2]:
                self._reporter.start_target(f"Q={Q} K={K}")
                if Q <= self._parameters.exact_limit:
                    rows.append(self._audit_exact(Q, K))
                else:
                    rows.extend(self._audit_sampled(Q, K))
                self._reporter.finalize_target()

        self._write_rows(rows)

    def _audit_alphabets(self):
        functions = self._parameters.values("functions")
        if functions is not None:
            return sorted(set(functions))

        alphabets = set()
        for model, _, inner, alpha in self._parameters.points():
            alphabets.add(
                ExperimentConfig.function_count(model, inner, alpha))
        return sorted(alphabets)

    def _audit_exact(self, Q, K):
        row = {"Q": Q, "K": K, "mode": "exact", "demand": "all",
               "statistic": "0", "threshold": "0", "factorizes": None,
               "passed": True}
        try:
            report = audit_independence(Q, K)
        except PrivacyViolation as violation:
            row.update(statistic=str(violation.tv_distance), passed=False)
            self._report(Category.FAILURE, "privacy", "exact",
                         str(violation))
            return row

        row.update(statistic=str(report.max_tv), factorizes=report.factorizes)
        if report.factorizes is False:
            row["passed"] = False
            self._report(Category.FAILURE, "privacy", "joint",
                         "joint query law does not factorize")
        else:
            self._report(Category.RESULT, "privacy", "exact",
                         f"{report.pairs} demand pairs over "
                         f"{report.contexts} observer columns, max tv "
                         f"{report.max_tv}")
        return row

    def _audit_sampled(self, Q, K):
        max_cells = self._parameters.max_cells
        if factorial(Q) > max_cells:
            raise ConfigError(
                f"sampling Q={Q} needs {Q}! chi-square cells, more than "
                f"MAX_CELLS={max_cells}")

        seed = derive_seed(self._parameters.seed, "audit", Q)
        statistics, threshold = audit_sampling(
            Q, self._parameters.trials, seed, self._parameters.quantile)

        rows = []
        for d, statistic in statistics.items():
            passed = statistic <= threshold
            rows.append({"Q": Q, "K": K, "mode": "sampled", "demand": d,
                         "statistic": f"{statistic:.12g}",
                         "threshold": f"{threshold:.12g}",
                         "factorizes": None, "passed": passed})
            if not passed:
                self._report(Category.FAILURE, "privacy", f"d={d}",
                             f"chi-square {statistic:.6g} exceeds "
                             f"{threshold:.6g}")
        self._report(Category.RESULT, "privacy", "sampled",
                     f"{len(statistics)} demands, {self._parameters.trials} "
                     f"queries each, threshold {threshold:.6g}")
        return rows

    def cmd_sweep(self):
        points = self._parameters.points()
        rows = self._map(sweep_point, points)

        for point, row in zip(points, rows):
            self._reporter.start_target(_point_name(point))
            if row["status"] == "ok":
                self._report(Category.RESULT, "pda", "params",
                             row["extended"] or row["base"])
            else:
                self._report(Category.FAILURE, "pda", "sweep", row["status"])
            self._reporter.finalize_target()

        self._write_rows(rows)

    def _map(self, function, tasks):
        workers = self._parameters.workers
        if workers > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(max_workers=workers) as executor:
                return list(executor.map(function, tasks))
        return [function(task) for task in tasks]

    def _report(self, category, code, location, message):
        self._reporter.report(Message(category, code, location, message))

    @contextmanager
    def _output(self):
        path = self._parameters.output_path
        if path is None:
            yield self.stream
            return
        with open(path, "w", newline="") as stream:
            yield stream

    def _write_rows(self, rows):
        with self._output() as stream:
            write_rows(rows, self._parameters.format, stream)


def _inner_name(model):
    return "f" if model == "connect" else "q"


def _point_name(point):
    model, K, inner, alpha = point
    name = f"{model} {_inner_name(model).upper()}={inner} alpha={alpha}"
    return name if K is None else f"{name} K={K}"


def _construct(model, inner, alpha, K=None):
    if model == "connect":
        if K is None:
            return transpose(man_pda(inner, alpha))
        return construction1(inner, alpha, K)
    if K is None:
        return cyclic_pda(inner, alpha)
    return construction2(inner, alpha, K)


def sweep_point(point):
    """Builds and verifies the PDAs of one parameter point."""
    model, K, inner, alpha = point
    row = {"model": model, "K": K, "inner": inner, "alpha": alpha,
           "base": None, "g": None, "l": None, "extended": None,
           "status": "ok"}
    try:
        base = _construct(model, inner, alpha)
        params = inspect_pda(base)
        row.update(base=params.describe(), g=params.g, l=params.l)

        if model == "connect":
            expected = transposed_man_pda_params(inner, alpha)
            untransposed = inspect_pda(man_pda(inner, alpha))
            if untransposed.tuple != man_pda_params(inner, alpha).tuple:
                row["status"] = f"MAN-PDA is {untransposed.describe()}"
        else:
            expected = cyclic_pda_params(inner, alpha)
            if not check_l_cyclic(base, 1):
                row["status"] = "base PDA is not 1-cyclic"
        if params.tuple != expected.tuple or params.g != expected.g:
            row["status"] = (f"expected {expected.describe()}, "
                             f"built {params.describe()}")

        if K is not None:
            extended = inspect_pda(_construct(model, inner, alpha, K))
            row["extended"] = extended.describe()
            expected = (construction1_params if model == "connect"
                        else construction2_params)(inner, alpha, K)
            if extended.tuple != expected.tuple:
                row["status"] = (f"expected {expected.describe()}, "
                                 f"extended {extended.describe()}")
    except (ConditionViolation, ValueError) as error:
        row["status"] = f"{type(error).__name__}: {error}"

    logger.debug("swept %s: %s", point, row["status"])
    return row


def simulate_point(task):
    """Runs the rounds of one parameter point and summarizes their loads."""
    (model, K, inner, alpha), options, trials, seed = task
    config = InstanceConfig(model, K, inner, alpha, **options)
    row = {"model": model, "K": K, "inner": inner, "alpha": alpha,
           "Q": config.functions, "eta": config.eta, "beta": config.beta,
           "b_out": config.b_out, "d_file": config.d_file,
           "N": config.files, "S": None, "bits": None, "r": None,
           "L": None, "L_decimal": None,
           "L_formula": None, "L_formula_decimal": None, "trials": trials,
           "status": "ok"}

    for trial in range(1, trials + 1):
        round_seed = derive_seed(seed, model, K, inner, alpha, trial)
        rng = np.random.default_rng(derive_seed(round_seed, "demands"))
        try:
            result = run_round(config, seed=round_seed,
                               demands=random_demands(config, rng))
        except ProtocolError as error:
            row["status"] = (f"trial {trial} (seed {round_seed}): "
                             f"{type(error).__name__}: {error}")
            break

        loads = result.loads
        row["S"] = result.instance.S
        row["bits"] = result.transcript.total_bits
        row["r"] = str(loads.r_measured)
        row["L"], row["L_decimal"] = exact(loads.L_measured)
        row["L_formula"], row["L_formula_decimal"] = exact(loads.L_formula)

    return row


def _create_arg_parser():
    parser = ArgumentParser(prog="ppmadc", description=__doc__)
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {ppmadc.__version__}")
    parser.add_argument("--config",
                        help="configuration file location")
    parser.add_argument("--generate-config", action="store_true",
                        help="write a configuration file to the current "
                             "directory")
    parser.add_argument("--verbose", action="store_true",
                        help="log debug output")

    commands = parser.add_subparsers(dest="command", metavar="command")

    construct = commands.add_parser(
        "construct", help="print a constructed PDA")
    _add_point_arguments(construct, MODELS)
    construct.add_argument("--output", help="file the PDA is written to")

    verify = commands.add_parser(
        "verify", help="check a PDA file against the conditions")
    verify.add_argument("path", help="whitespace separated PDA file")
    verify.add_argument("--disable", nargs="+", metavar="CONDITION",
                        help="conditions to skip (A1, A2, A3)")

    simulate = commands.add_parser(
        "simulate", help="run private rounds and measure the loads")
    _add_point_arguments(simulate, MODELS)
    simulate.add_argument("--eta", type=int, help="files per batch")
    simulate.add_argument("--beta", type=int,
                          help="bits per intermediate value")
    simulate.add_argument("--b-out", type=int, help="bits per output")
    simulate.add_argument("--trials", type=int,
                          help="rounds per parameter point")
    simulate.add_argument("--seed", type=int, help="base seed")
    simulate.add_argument("--workers", type=int,
                          help="parallel worker processes")
    _add_report_arguments(simulate)

    audit = commands.add_parser(
        "audit", help="check the query privacy")
    _add_point_arguments(audit, MODELS)
    audit.add_argument("--trials", type=int,
                       help="sampled queries per demand")
    audit.add_argument("--seed", type=int, help="base seed")
    audit.add_argument("--quantile", type=float,
                       help="chi-square quantile of the sampling check")
    audit.add_argument("--exact-limit", type=int,
                       help="largest Q audited by enumeration")
    audit.add_argument("--max-cells", type=int,
                       help="largest Q! the sampling audit may bin")
    audit.add_argument("--functions",
                       help="audit these Q directly, e.g. 1 or 2..7")
    _add_report_arguments(audit)

    sweep = commands.add_parser(
        "sweep", help="build and verify PDAs over parameter ranges")
    _add_point_arguments(sweep, MODELS + ("both",))
    sweep.add_argument("--workers", type=int,
                       help="parallel worker processes")
    _add_report_arguments(sweep)

    return parser


def _add_point_arguments(parser, models):
    parser.add_argument("--model", choices=models)
    parser.add_argument("--k", help="number of reducers, e.g. 3 or 2..6")
    parser.add_argument("--f", help="batches per block (connect model)")
    parser.add_argument("--q", help="number of functions (cyclic model)")
    parser.add_argument("--alpha", help="connectivity, or all")


def _add_report_arguments(parser):
    parser.add_argument("--format", choices=("csv", "json"))
    parser.add_argument("--output", help="report file, stdout by default")


def _parse_args():
    return _create_arg_parser().parse_args()


DEFAULT_CONFIG_NAME = "config.py"


def _create_configuration():
    from shutil import copyfile

    source = os.path.join(os.path.dirname(__file__), DEFAULT_CONFIG_NAME)
    destination = f"./ppmadc.{DEFAULT_CONFIG_NAME}"

    if os.path.exists(destination):
        raise ConfigError(
            f"Configuration file already exists ({destination})!")

    try:
        copyfile(source, destination)
    except OSError:
        raise ConfigError("Configuration file could not be created!")


def _load_configuration(filename=None):
    from importlib.util import spec_from_file_location, module_from_spec

    if filename and not os.path.exists(filename):
        raise ConfigError(f"Configuration file {filename} does not exist!")

    config_files = [
        filename,
        f"./ppmadc.{DEFAULT_CONFIG_NAME}",
        os.path.expanduser(f"~/.config/ppmadc.{DEFAULT_CONFIG_NAME}"),
        os.path.join(os.path.dirname(__file__), DEFAULT_CONFIG_NAME)
    ]

    for config_file in config_files:
        if config_file and os.path.exists(config_file):
            spec = spec_from_file_location("config", config_file)
            config = module_from_spec(spec)
            spec.loader.exec_module(config)
            logger.debug("loaded configuration from %s", config_file)
            return config

    raise ConfigError("It could not be found any configuration file!")
