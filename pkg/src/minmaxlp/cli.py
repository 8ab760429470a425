"""Command-line front end.

Four subcommands share one input format (the JSON program document): `solve`
runs the full pipeline, `phase1` only searches for a strict interior point,
`reduce` dumps the min-max instance a stage would hand to the solver, and
`viz` draws a two-dimensional program and its dual as SVG.

Exit codes double as the classification: 0 solved or succeeded, 2 unbounded,
3 no feasible answer (infeasible program, empty interior, or a rejected
interior point), 4 unusable input.  Output is byte deterministic for a fixed
seed.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

import numpy as np

from .errors import LPError
from .figure import render_svg
from .model import LinearProgram, Sense, SolutionStatus, load_lp, save_solution, _dumps
from .reduction import (
    PhaseOneStatus,
    SolveOptions,
    build_support_problem,
    dual_constraint_points,
    phase1,
    solve,
)
from .transforms import (
    EPS_STRICT,
    make_origin_strictly_feasible,
    rotate_problem,
    rotation_to_last_axis,
)

EXIT_OK = 0
EXIT_UNBOUNDED = 2
EXIT_INFEASIBLE = 3
EXIT_INPUT = 4

_STATUS_EXIT = {
    SolutionStatus.OPTIMAL: EXIT_OK,
    SolutionStatus.UNBOUNDED: EXIT_UNBOUNDED,
    SolutionStatus.INFEASIBLE: EXIT_INFEASIBLE,
    SolutionStatus.ORIGIN_NOT_INTERIOR: EXIT_INFEASIBLE,
    SolutionStatus.INPUT_ERROR: EXIT_INPUT,
}


@dataclass
class CliConfig:
    command: str
    input: str
    output: str | None = None
    seed: int = 0
    tolerance: float = 1e-9
    solver: str = "exact"
    interior_point: np.ndarray | None = None
    stage: str = "support"


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors, which this tool reserves for
    # unbounded programs; usage problems are input problems
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="minmaxlp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, blurb in (
        ("solve", "solve the program end to end"),
        ("phase1", "find a strict interior point"),
        ("reduce", "emit the min-max instance for a stage"),
        ("viz", "draw a two-dimensional program as SVG"),
    ):
        p = sub.add_parser(name, help=blurb)
        p.add_argument("--input", required=True, help="program JSON file")
        p.add_argument("--output", help="write here instead of stdout")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--tolerance", type=float, default=1e-9)
        p.add_argument("--solver", choices=("exact", "subgradient"), default="exact")
        p.add_argument(
            "--interior-point",
            help='known strict interior point as "v1,v2,..."',
        )
        if name == "reduce":
            p.add_argument("--stage", choices=("phase1", "support"), default="support")
    return parser


def _parse_point(text: str | None) -> np.ndarray | None:
    if text is None:
        return None
    try:
        return np.array([float(part) for part in text.split(",")], dtype=float)
    except ValueError as exc:
        raise LPError(f"bad --interior-point: {exc}") from None


def _check_config(config: CliConfig) -> None:
    if not config.tolerance > 0:
        raise LPError("--tolerance must be positive")


def _interior(lp: LinearProgram, config: CliConfig, options: SolveOptions):
    """Shared hint-or-search step; returns (point, exit_code)."""
    if config.interior_point is not None:
        p0 = config.interior_point
        if p0.shape != (lp.dimension,) or not np.isfinite(p0).all():
            raise LPError("--interior-point does not match the program dimension")
        if float((lp.A @ p0 - lp.b).max()) >= -EPS_STRICT:
            print("supplied point is not strictly interior", file=sys.stderr)
            return None, EXIT_INFEASIBLE
        return p0, EXIT_OK
    res = phase1(lp, options)
    if res.status is PhaseOneStatus.NO_STRICT_INTERIOR:
        print("program has no strict interior point", file=sys.stderr)
        return None, EXIT_INFEASIBLE
    return res.p0, EXIT_OK


def run(config: CliConfig, text: bytes) -> tuple[int, bytes]:
    """Execute one command against a program document; returns the exit code
    and the bytes destined for the output stream."""
    lp = load_lp(text)
    options = SolveOptions(seed=config.seed, tolerance=config.tolerance, solver=config.solver)

    if config.command == "solve":
        sol = solve(lp, interior_hint=config.interior_point, options=options)
        return _STATUS_EXIT[sol.status], save_solution(sol)

    if config.command == "phase1":
        res = phase1(lp, options)
        doc = {
            "status": res.status.value,
            "p0": None if res.p0 is None else [float(v) for v in res.p0],
            "margin": None if res.margin is None else float(res.margin),
        }
        code = EXIT_OK if res.status is PhaseOneStatus.STRICT_INTERIOR else EXIT_INFEASIBLE
        return code, _dumps(doc)

    if config.command == "reduce":
        if config.stage == "phase1":
            G = [[float(v) for v in row] for row in lp.A]
            h = [float(-v) for v in lp.b]
        else:
            p0, code = _interior(lp, config, options)
            if p0 is None:
                return code, b""
            c = lp.c if lp.sense is Sense.MAXIMIZE else -lp.c
            translated, _ = make_origin_strictly_feasible(lp, p0)
            rotated = rotate_problem(translated, rotation_to_last_axis(c))
            spp = build_support_problem(dual_constraint_points(rotated))
            G = [[float(v) for v in row] for row in spp.minmax.G]
            h = [float(v) for v in spp.minmax.h]
        return EXIT_OK, _dumps({"G": G, "h": h, "stage": config.stage})

    if config.command == "viz":
        if lp.dimension != 2:
            raise LPError("viz needs a two-dimensional program")
        sol = solve(lp, interior_hint=config.interior_point, options=options)
        return EXIT_OK, render_svg(lp, sol)

    raise LPError(f"unknown command {config.command!r}")


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = CliConfig(
            command=args.command,
            input=args.input,
            output=args.output,
            seed=args.seed,
            tolerance=args.tolerance,
            solver=args.solver,
            interior_point=_parse_point(args.interior_point),
            stage=getattr(args, "stage", "support"),
        )
        _check_config(config)
        with open(config.input, "rb") as f:
            text = f.read()
    except (OSError, LPError) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INPUT

    try:
        code, payload = run(config, text)
    except LPError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INPUT

    if payload:
        if config.output is not None:
            with open(config.output, "wb") as f:
                f.write(payload)
        else:
            sys.stdout.write(payload.decode("utf-8"))
    return code
