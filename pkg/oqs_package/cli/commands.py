# oqs_package/cli/commands.py
"""
Command-line front end.

    python -m oqs_package.cli verify --model model.json
    python -m oqs_package.cli decompose --model model.json --epsilon-s 1e-10
    python -m oqs_package.cli coms --model model.json --brute-force
    python -m oqs_package.cli stationary --model model.json --initial rho0.json
    python -m oqs_package.cli evolve --model model.json --initial rho0.json --t-max 20 --out run.csv
    python -m oqs_package.cli example figure1 --out examples_dir
"""

from dataclasses import dataclass, asdict
from pathlib import Path
import argparse
import logging
import sys
import numpy as np

from ..model.system import load_model, dump_model
from ..builtin_models.two_tls import (
    BUILTIN_NAMES,
    builtin_spec,
    two_tls_model,
    two_tls_analytics,
    psi_populations,
)
from ..dynamics.rates import COHERENCE_CONVENTIONS
from ..utils.config_helper import get_default_samples, get_figure1_initial_conditions
from ..utils.data_helper import to_canonical_json, save_json
from ..utils.error_helper import (
    ModelValidationError,
    DensityStateError,
    SpectralRangeError,
    KernelDimensionError,
    IntegrationError,
    NamedComError,
    EnumerationLimitError,
    UsageError,
)
from .analysis import Analysis
from .initial_state import load_initial_state

COMMANDS = ("verify", "decompose", "coms", "stationary", "evolve", "example")

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2

VALIDATION_ERRORS = (
    ModelValidationError,
    DensityStateError,
    SpectralRangeError,
    KernelDimensionError,
    IntegrationError,
    NamedComError,
)
USAGE_ERRORS = (UsageError, FileNotFoundError, EnumerationLimitError)


@dataclass(frozen=True)
class CommandRequest:
    command: str
    model_path: str | None = None
    initial_path: str | None = None
    t_max: float | None = None
    samples: int | None = None
    epsilon_s: float | None = None
    brute_force: bool = False
    coherences: bool = False
    convention: str | None = None
    out_path: str | None = None
    summary_path: str | None = None
    example_name: str | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"Unknown command '{self.command}', expected one of {COMMANDS}")
        if self.command == "example":
            if self.example_name not in BUILTIN_NAMES:
                raise UsageError(f"Unknown example '{self.example_name}', expected one of {BUILTIN_NAMES}")
            return
        if self.model_path is None:
            raise UsageError(f"'{self.command}' needs --model")
        if self.command in ("stationary", "evolve") and self.initial_path is None:
            raise UsageError(f"'{self.command}' needs --initial")
        if self.summary_path is not None and self.command != "evolve":
            raise UsageError("--summary only applies to 'evolve'")
        if self.t_max is not None and not self.t_max > 0:
            raise UsageError(f"--t-max must be positive, got {self.t_max}")
        if self.samples is not None and self.samples < 2:
            raise UsageError(f"--samples must be at least 2, got {self.samples}")
        if self.epsilon_s is not None and not self.epsilon_s >= 0:
            raise UsageError(f"--epsilon-s must be non-negative, got {self.epsilon_s}")
        if self.convention is not None and self.convention not in COHERENCE_CONVENTIONS:
            raise UsageError(f"--convention must be one of {COHERENCE_CONVENTIONS}")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="oqs_package.cli", description="Invariant subspaces, constants of motion and stationary states of open quantum systems.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("name", nargs="?", help="Builtin example name (example command only)")
    parser.add_argument("--model", dest="model_path", help="Model JSON file")
    parser.add_argument("--initial", dest="initial_path", help="Initial-state JSON file")
    parser.add_argument("--t-max", dest="t_max", type=float)
    parser.add_argument("--samples", type=int, help="Number of output times, including t = 0")
    parser.add_argument("--epsilon-s", dest="epsilon_s", type=float, help="Coupling threshold")
    parser.add_argument("--brute-force", dest="brute_force", action="store_true")
    parser.add_argument("--coherences", action="store_true", help="Add |rho_ij| columns to the trajectory CSV")
    parser.add_argument("--convention", choices=COHERENCE_CONVENTIONS, help="Coherence decay convention")
    parser.add_argument("--out", dest="out_path", help="Output file (directory for 'example')")
    parser.add_argument("--summary", dest="summary_path", help="Summary JSON of an evolve run (default: next to --out)")
    return parser


def parse_args(argv=None) -> CommandRequest:
    """
    Parses command-line arguments into a CommandRequest.

    Raises:
        UsageError: For malformed arguments.
    """
    args = build_parser().parse_args(argv)
    if args.name is not None and args.command != "example":
        raise UsageError(f"Unexpected argument '{args.name}'")
    return CommandRequest(
        command=args.command,
        model_path=args.model_path,
        initial_path=args.initial_path,
        t_max=args.t_max,
        samples=args.samples,
        epsilon_s=args.epsilon_s,
        brute_force=args.brute_force,
        coherences=args.coherences,
        convention=args.convention,
        out_path=args.out_path,
        summary_path=args.summary_path,
        example_name=args.name,
    )


def _emit(document: dict, out_path: str | None):
    if out_path is None:
        sys.stdout.write(to_canonical_json(document))
    else:
        save_json(document, out_path)


def _run_example(request: CommandRequest) -> int:
    name = request.example_name
    directory = Path(request.out_path or ".")
    directory.mkdir(parents=True, exist_ok=True)
    spec = builtin_spec(name)
    model = two_tls_model(spec, name=name)
    analytics = two_tls_analytics(spec)

    save_json(dump_model(model), directory / f"{name}.model.json")
    fixture = {"parameters": asdict(spec)}
    fixture.update(analytics.to_report())
    save_json(fixture, directory / f"{name}.analytics.json")
    if name == "figure1":
        for number, (p3, p4) in enumerate(get_figure1_initial_conditions(), start=1):
            document = {"populations": psi_populations(analytics, {3: p3, 4: p4})}
            save_json(document, directory / f"{name}.initial_{number}.json")
    logging.info("Wrote example '%s' to %s", name, directory)
    return EXIT_OK


def _run_evolve(analysis: Analysis, request: CommandRequest) -> int:
    rho0 = load_initial_state(request.initial_path, analysis.load_eigensystem())
    t_max = request.t_max or analysis.default_t_max()
    times = np.linspace(0.0, t_max, request.samples or get_default_samples())
    frame, summary = analysis.evolve(rho0, times, coherences=request.coherences)
    summary_path = request.summary_path
    if request.out_path is None:
        frame.to_csv(sys.stdout, index=False)
    else:
        out = Path(request.out_path)
        out.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(out, index=False)
        summary_path = summary_path or out.with_name(f"{out.stem}.summary.json")
    if summary_path is None:
        logging.info("No --out or --summary given; summary not written")
    else:
        save_json(summary, summary_path)
    return EXIT_OK


def _dispatch(request: CommandRequest) -> int:
    if request.command == "example":
        return _run_example(request)

    analysis = Analysis(load_model(request.model_path), epsilon_s=request.epsilon_s, convention=request.convention)
    if request.command == "verify":
        report, document = analysis.verify_report()
        _emit(document, request.out_path)
        return EXIT_OK if report.passed else EXIT_VALIDATION
    if request.command == "decompose":
        _emit(analysis.decompose_report(), request.out_path)
        return EXIT_OK
    if request.command == "coms":
        document = analysis.coms_report(brute_force=request.brute_force)
        _emit(document, request.out_path)
        return EXIT_OK if document["passed"] else EXIT_VALIDATION
    if request.command == "stationary":
        rho0 = load_initial_state(request.initial_path, analysis.load_eigensystem())
        _emit(analysis.stationary_report(rho0), request.out_path)
        return EXIT_OK
    return _run_evolve(analysis, request)


def run(request: CommandRequest) -> int:
    """
    Executes one command.

    Args:
        request (CommandRequest): The parsed request.

    Returns:
        int: 0 on success, 1 on a validation failure, 2 on a usage error.
    """
    try:
        return _dispatch(request)
    except USAGE_ERRORS as e:
        logging.error("%s", e)
        return EXIT_USAGE
    except VALIDATION_ERRORS as e:
        logging.error("%s: %s", type(e).__name__, e)
        return EXIT_VALIDATION


def main(argv=None) -> int:
    try:
        request = parse_args(argv)
    except UsageError as e:
        logging.error("%s", e)
        return EXIT_USAGE
    return run(request)
