"""Command-line interface: the ``smlab`` subcommands."""

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, TextIO

from ..bounds import EVALUATORS, BoundQuery, evaluate, evaluate_all, power_variance_bound
from ..dpp import (
    KernelFamily,
    bernoulli_profile_power,
    kernel_for_group,
    mean_count,
    restriction_eigenvalues,
    unitary_variance_bound,
)
from ..groups import GroupFamily, GroupSpec, sample_haar, stream_for
from ..harness import run_experiment, run_suite, suite_names
from ..persistence import ResultStore, load_experiment_config
from ..spectral import eigenangles, power_angles
from ..transport import TransportMethod, angles_distance
from ..utils.exceptions import LabError
from ..utils.logger import get_logger

logger = get_logger(__name__)

FAMILY_CHOICES = [family.value for family in GroupFamily]


class CommandType(Enum):
    """Types of commands."""

    SAMPLE = "sample"
    WP = "wp"
    DPP = "dpp"
    BOUNDS = "bounds"
    VERIFY = "verify"
    EXPERIMENT = "experiment"


@dataclass
class Command:
    """Represents a parsed command."""

    command_type: CommandType
    arguments: argparse.Namespace


class CommandParser:
    """Parses argv into commands."""

    def __init__(self) -> None:
        self.parser = self._build()

    def _build(self) -> argparse.ArgumentParser:
        parser = argparse.ArgumentParser(
            prog="smlab",
            description="Spectral measures of powers of Haar random matrices.",
        )
        sub = parser.add_subparsers(dest="command", required=True)

        sample = sub.add_parser("sample", help="Eigenangles of Haar draws as CSV")
        self._add_group(sample)
        sample.add_argument("--count", type=int, default=1, help="Number of draws R.")
        sample.add_argument("--seed", type=int, default=0)
        sample.add_argument("--out", type=Path, default=None, help="CSV file (default stdout).")

        wp = sub.add_parser("wp", help="W_p distance of the power's spectrum to uniform")
        self._add_group(wp)
        wp.add_argument("--m", type=int, default=1)
        wp.add_argument("--p", type=float, default=1.0)
        wp.add_argument("--method", choices=[m.value for m in TransportMethod],
                        default=TransportMethod.EXACT_FLOW.value)
        wp.add_argument("--k", type=int, default=None, help="Discretization K of the uniform law.")
        wp.add_argument("--count", type=int, default=1)
        wp.add_argument("--seed", type=int, default=0)

        dpp = sub.add_parser("dpp", help="Restriction profile, mean and variance of a count")
        self._add_group(dpp)
        dpp.add_argument("--theta", type=float, required=True)
        dpp.add_argument("--m", type=int, default=1)

        bounds = sub.add_parser("bounds", help="Every bound evaluator as JSON")
        bounds.add_argument("--n", type=int, required=True)
        bounds.add_argument("--m", type=int, default=1)
        bounds.add_argument("--p", type=float, default=1.0)
        bounds.add_argument("--t", type=float, default=None)
        bounds.add_argument("--u", type=float, default=None)
        bounds.add_argument("--sigma-sq", type=float, default=None, dest="sigma_sq")
        bounds.add_argument("--lipschitz", type=float, default=None)
        bounds.add_argument("--j", type=int, default=None, help="Eigenvalue index.")
        bounds.add_argument("--only", choices=sorted(EVALUATORS), default=None,
                            help="Run a single evaluator; missing inputs are an error.")

        verify = sub.add_parser("verify", help="Run a verification suite")
        verify.add_argument("--suite", choices=suite_names(), required=True)
        verify.add_argument("--fast", action="store_true", help="Reduced sizes and budgets.")

        experiment = sub.add_parser("experiment", help="Run and persist a configured experiment")
        experiment.add_argument("--config", type=Path, required=True, dest="config_file")
        experiment.add_argument("--out", type=Path, default=None, help="Output directory.")
        return parser

    @staticmethod
    def _add_group(parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--group", choices=FAMILY_CHOICES, required=True)
        parser.add_argument("--n", type=int, required=True, help="Rank N (Sp(N) is 2N x 2N).")

    def parse(self, argv: Optional[Sequence[str]] = None) -> Command:
        """Parse argv; argparse exits with status 2 on usage errors."""
        args = self.parser.parse_args(argv)
        return Command(command_type=CommandType(args.command), arguments=args)


def _spec(args: argparse.Namespace) -> GroupSpec:
    return GroupSpec(GroupFamily.parse(args.group), args.n)


class CLI:
    """Dispatches parsed commands and maps outcomes to exit codes."""

    def __init__(self, out: Optional[TextIO] = None):
        self.parser = CommandParser()
        self.out = out if out is not None else sys.stdout
        self.handlers: Dict[CommandType, Callable[[argparse.Namespace], int]] = {
            CommandType.SAMPLE: self._sample,
            CommandType.WP: self._wp,
            CommandType.DPP: self._dpp,
            CommandType.BOUNDS: self._bounds,
            CommandType.VERIFY: self._verify,
            CommandType.EXPERIMENT: self._experiment,
        }

    def run(self, argv: Optional[Sequence[str]] = None) -> int:
        """Run one command; 0 on success, 1 on failed checks or a lab error."""
        command = self.parser.parse(argv)
        try:
            return self.handlers[command.command_type](command.arguments)
        except LabError as e:
            logger.error(str(e))
            print(f"Error: {e}", file=sys.stderr)
            return 1

    def _write_json(self, data: object) -> None:
        self.out.write(json.dumps(data, indent=2, sort_keys=True) + "\n")

    def _sample(self, args: argparse.Namespace) -> int:
        spec = _spec(args)
        rows: List[List[object]] = []
        for replica in range(args.count):
            angle_set = eigenangles(sample_haar(spec, stream_for(args.seed, replica)))
            rows.extend([replica, j, float(a)] for j, a in enumerate(angle_set.angles))

        def emit(handle: TextIO) -> None:
            writer = csv.writer(handle)
            writer.writerow(["replica", "index", "angle"])
            writer.writerows(rows)

        if args.out is None:
            emit(self.out)
        else:
            args.out.parent.mkdir(parents=True, exist_ok=True)
            with open(args.out, "w", encoding="utf-8", newline="") as f:
                emit(f)
            logger.info(f"Wrote {len(rows)} eigenangles to {args.out}")
        return 0

    def _wp(self, args: argparse.Namespace) -> int:
        spec = _spec(args)
        method = TransportMethod(args.method)
        writer = csv.writer(self.out)
        writer.writerow(["replica", "group", "m", "p", "method", "K", "value", "lower", "upper"])
        for replica in range(args.count):
            sample = sample_haar(spec, stream_for(args.seed, replica))
            angle_set = power_angles(eigenangles(sample), args.m)
            result = angles_distance(angle_set, args.p, method, args.k)
            writer.writerow([replica, spec.label, args.m, args.p, method.value,
                             result.discretization, result.value, result.lower, result.upper])
        return 0

    def _dpp(self, args: argparse.Namespace) -> int:
        spec = _spec(args)
        if args.m > 1:
            if spec.family is not GroupFamily.UNITARY:
                print("Error: --m > 1 is only available for the unitary group", file=sys.stderr)
                return 1
            profile = bernoulli_profile_power(spec.rank, args.m, args.theta)
            mean = spec.rank * args.theta / (2.0 * math.pi)
        else:
            kernel = kernel_for_group(spec)
            profile = restriction_eigenvalues(kernel, args.theta)
            mean = mean_count(kernel, args.theta)
        data = {
            "group": spec.label,
            "theta": args.theta,
            "m": args.m,
            "lambdas": [float(x) for x in profile.lambdas],
            "blocks": list(profile.blocks),
            "mean": mean,
            "profile_mean": profile.mean,
            "variance": profile.variance,
        }
        if profile.kernel is not None and profile.kernel.family is KernelFamily.UNITARY:
            m_eff = min(args.m, spec.rank)
            data["variance_bound"] = (unitary_variance_bound(spec.rank) if m_eff == 1
                                      else power_variance_bound(spec.rank, m_eff))
        self._write_json(data)
        return 0

    def _bounds(self, args: argparse.Namespace) -> int:
        query = BoundQuery(N=args.n, m=args.m, p=args.p, t=args.t, u=args.u, j=args.j,
                           sigma_sq=args.sigma_sq, L=args.lipschitz)
        if args.only is not None:
            bounds = {args.only: evaluate(args.only, query)}
        else:
            bounds = evaluate_all(query)
        self._write_json({"query": query.present(), "bounds": bounds})
        return 0

    def _verify(self, args: argparse.Namespace) -> int:
        report = run_suite(args.suite, fast=args.fast)
        report.print_report(file=self.out)
        return 0 if report.passed else 1

    def _experiment(self, args: argparse.Namespace) -> int:
        config = load_experiment_config(args.config_file)
        result = run_experiment(config)
        path = ResultStore(args.out).persist(result)
        self._write_json({
            "result": str(path),
            "passed": result.passed,
            "checks": len(result.comparisons),
            "failures": [c.label for c in result.failures()],
        })
        return 0 if result.passed else 1


# Module exports
__all__ = ["CommandParser", "Command", "CommandType", "CLI"]
