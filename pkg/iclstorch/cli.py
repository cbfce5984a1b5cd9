import argparse
import multiprocessing
import os
import sys
from dataclasses import dataclass, field
from typing import List, Optional

import pandas as pd

from iclstorch.bench.Dataset import load_dataset_csv, make_gaussian_dataset
from iclstorch.bench.Experiment import cross_validate, learning_curve
from iclstorch.bench.Results import supported_formats, write_results, write_summary
from iclstorch.bench.Statistics import summarize_cross_validation, summarize_learning_curve
from iclstorch.SelfCheck import run_selfcheck
from iclstorch.ssl.Method import Method, parse_methods
from iclstorch.theory.Distribution1D import get_distribution, supported_distributions
from iclstorch.theory.Theorem1 import certify_theorem1

OUTPUT_DIR_ENV = "ICLSTORCH_OUTPUT_DIR"
supported_commands = ["learning-curve", "cv", "theorem1", "selfcheck"]


@dataclass
class RunConfig:
    """Settings of one command-line invocation."""

    command: str
    data_path: Optional[str] = None
    label_column: Optional[str] = None
    positive_label: Optional[str] = None
    methods: List[Method] = field(default_factory=lambda: list(Method))
    seed: int = 0
    repeats: Optional[int] = None
    L: Optional[int] = None
    U_schedule: Optional[List[int]] = None
    output: Optional[str] = None
    format: str = "csv"
    threads: int = 1
    synthetic: bool = False
    synthetic_n: int = 1000
    synthetic_d: int = 2
    distribution: str = "uniform-sign"
    trials: int = 10000
    folds: int = 10
    timing: bool = False
    quick: bool = False
    verbose: bool = False

    def validate(self):
        """Method to check the configuration before anything is run."""
        if self.command not in supported_commands:
            raise ValueError(
                "Unknown command '%s'. Valid commands are: %s." % (self.command, ", ".join(supported_commands))
            )

        self.methods = parse_methods(self.methods)
        if self.format not in supported_formats:
            raise ValueError(
                "Unknown format '%s'. Valid formats are: %s." % (self.format, ", ".join(supported_formats))
            )

        if self.threads < 1:
            raise ValueError("--threads must be >= 1.")

        if self.repeats is not None and self.repeats < 1:
            raise ValueError("--repeats must be >= 1.")

        if self.command in ("learning-curve", "cv"):
            if self.data_path is None and not self.synthetic:
                raise ValueError("%s requires --data or --synthetic." % self.command)

            if self.data_path is not None and not os.path.isfile(self.data_path):
                raise FileNotFoundError("Dataset file '%s' does not exist." % self.data_path)

        if self.command == "theorem1":
            if self.distribution not in supported_distributions:
                raise ValueError(
                    "Unknown distribution '%s'. Valid distributions are: %s."
                    % (self.distribution, ", ".join(supported_distributions))
                )

            if self.L is None or self.L < 1:
                raise ValueError("theorem1 requires --L >= 1.")

        return self


def parse_int_list(text):
    """Method to parse a comma-separated list of integers such as 2,4,8."""
    try:
        return [int(token) for token in text.split(",") if token.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma-separated integers, got '%s'" % text)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="iclstorch",
        description="Implicitly constrained least squares semi-supervised classification experiments.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="master seed")
    common.add_argument(
        "--threads", type=int, default=multiprocessing.cpu_count(), help="worker threads"
    )
    common.add_argument("--output", default=None, help="result file (default: $%s or .)" % OUTPUT_DIR_ENV)
    common.add_argument("--verbose", action="store_true")

    data = argparse.ArgumentParser(add_help=False)
    data.add_argument("--data", dest="data_path", default=None, help="CSV file with a header row")
    data.add_argument("--label-column", default=None, help="label column (default: last)")
    data.add_argument("--positive-label", default=None, help="label token mapped to class 1")
    data.add_argument("--synthetic", action="store_true", help="use a two-Gaussian dataset")
    data.add_argument("--synthetic-n", type=int, default=1000)
    data.add_argument("--synthetic-d", type=int, default=2)
    data.add_argument(
        "--methods",
        default=",".join(method.value for method in Method),
        help="comma-separated subset of %s" % ",".join(method.value for method in Method),
    )
    data.add_argument("--repeats", type=int, default=None)
    data.add_argument("--L", type=int, default=None, help="labeled objects (default: max(d + 5, 20))")
    data.add_argument("--format", choices=supported_formats, default="csv")
    data.add_argument("--timing", action="store_true", help="record wall-clock training time")

    curve = subparsers.add_parser("learning-curve", parents=[common, data])
    curve.add_argument("--U", dest="U_schedule", type=parse_int_list, default=None, help="e.g. 2,4,8")
    cv = subparsers.add_parser("cv", parents=[common, data])
    cv.add_argument("--folds", type=int, default=10)

    theorem1 = subparsers.add_parser("theorem1", parents=[common])
    theorem1.add_argument("--dist", dest="distribution", default="uniform-sign")
    theorem1.add_argument("--L", type=int, default=1)
    theorem1.add_argument("--trials", type=int, default=10000)

    selfcheck = subparsers.add_parser("selfcheck", parents=[common])
    selfcheck.add_argument("--quick", action="store_true", help="reduced instance counts")
    return parser


def parse_args(argv=None):
    """Method to build a RunConfig from command-line arguments.

    Parameters
    ----------
    argv : list of str
        Arguments. If None, sys.argv[1:] is used.

    Returns
    -------
    iclstorch.cli.RunConfig
        Unvalidated configuration.
    """
    arguments = vars(build_parser().parse_args(argv))
    known = RunConfig.__dataclass_fields__
    return RunConfig(**{key: value for key, value in arguments.items() if key in known})


def default_output(config, name):
    directory = os.environ.get(OUTPUT_DIR_ENV, ".")
    return os.path.join(directory, "%s-%s.%s" % (name, config.command, config.format))


def summary_path(path):
    return os.path.splitext(path)[0] + "-summary.csv"


def load_data(config):
    if config.synthetic:
        return make_gaussian_dataset(n=config.synthetic_n, d=config.synthetic_d, seed=config.seed)

    return load_dataset_csv(config.data_path, config.label_column, config.positive_label)


def run(config):
    """Method to execute a validated configuration.

    Parameters
    ----------
    config : iclstorch.cli.RunConfig
        Configuration.

    Returns
    -------
    int
        Exit status (0 on success, 1 when a self-check suite fails).
    """
    config.validate()
    if config.command == "selfcheck":
        results = run_selfcheck(quick=config.quick, seed=config.seed, threads=config.threads, verbose=True)
        return 0 if all(result.passed for result in results) else 1

    if config.command == "theorem1":
        report = certify_theorem1(
            get_distribution(config.distribution),
            config.L,
            trials=config.trials,
            seed=config.seed,
            threads=config.threads,
        )
        print("distribution: %s" % report.distribution)
        print("L: %d" % report.L)
        print("trials: %d" % report.trials)
        print("fraction_never_worse: %.4f" % report.fraction_never_worse)
        print("strict_improvements: %d" % report.strict_improvements)
        print("strict_degradations: %d" % report.strict_degradations)
        print("median_improvement: %.6g" % report.median_improvement)
        print("sign_test: z %.2f, p %.3g" % (report.z_improvement, report.p_improvement))
        if config.output is not None:
            write_summary(pd.DataFrame([report._asdict()]), config.output)

        return 0

    data = load_data(config)
    if config.command == "learning-curve":
        records = learning_curve(
            data,
            config.methods,
            U_schedule=config.U_schedule,
            repeats=config.repeats or 1000,
            seed=config.seed,
            L=config.L,
            threads=config.threads,
            timing=config.timing,
            verbose=config.verbose,
        )
        summarize = summarize_learning_curve
    else:
        records = cross_validate(
            data,
            config.methods,
            repeats=config.repeats or 100,
            seed=config.seed,
            L=config.L,
            folds=config.folds,
            threads=config.threads,
            timing=config.timing,
            verbose=config.verbose,
        )
        summarize = summarize_cross_validation

    output = config.output or default_output(config, data.name)
    frame = write_results(records, output, config.format)
    summary = summarize(frame)
    write_summary(summary, summary_path(output))
    print(summary.to_string(index=False))
    return 0


def main(argv=None):
    config = parse_args(argv)
    try:
        return run(config)
    except Exception as error:
        print("error: %s" % error, file=sys.stderr)
        return 1
