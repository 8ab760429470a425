"""The full pipeline from LP to min-max and back.

Steps: find a strict interior point (or verify a supplied one), translate it
to the origin, rotate the objective onto the last axis, dualize each
constraint plane into a point, and search for the non-vertical plane that
supports those points from below with the most negative z-intercept.  That
search is a piecewise-linear min-max in the first d-1 coordinates of the
plane's slope; its optimum dualizes straight back to the LP optimum.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ReductionError
from .minmax import (
    MinMaxResult,
    MinMaxStatus,
    PiecewiseMaxProblem,
    SubgradientParams,
    evaluate,
    solve_exact,
    solve_subgradient,
)
from .model import LinearProgram, Sense, Solution, SolutionStatus, validate
from .transforms import (
    EPS_STRICT,
    ProblemTransform,
    make_origin_strictly_feasible,
    recover_solution,
    rotate_problem,
    rotation_to_last_axis,
)

# |t*| below this is "intercept reached zero": unbounded
EPS_UNBOUNDED = 1e-9


class PhaseOneStatus(str, Enum):
    STRICT_INTERIOR = "strict_interior"
    NO_STRICT_INTERIOR = "no_strict_interior"


@dataclass(frozen=True, eq=False)
class PhaseOneResult:
    """Outcome of the interior-point search.

    ``margin`` is max(A p0 - b) at the returned point: strictly negative
    exactly when p0 sits inside every constraint.
    """

    status: PhaseOneStatus
    p0: np.ndarray | None
    margin: float | None


@dataclass(frozen=True, eq=False)
class SupportPlaneProblem:
    """Dualized constraints plus the min-max instance that finds their best
    lower supporting plane z = w . x' + t (one piece w . q' - q_z per dual
    point q; the optimal value is -t*)."""

    duals: np.ndarray
    minmax: PiecewiseMaxProblem


@dataclass(frozen=True)
class SolveOptions:
    seed: int = 0
    tolerance: float = 1e-9
    solver: str = "exact"


def _run_minmax(prob: PiecewiseMaxProblem, options: SolveOptions) -> MinMaxResult:
    if options.solver == "exact":
        return solve_exact(prob, seed=options.seed, tolerance=options.tolerance)
    if options.solver == "subgradient":
        return solve_subgradient(prob, SubgradientParams())
    raise ReductionError(f"unknown solver {options.solver!r}")


def phase1(lp: LinearProgram, options: SolveOptions | None = None) -> PhaseOneResult:
    """Search for a strict interior point by minimizing max(A p - b).

    A negative optimum certifies its argmin as strictly feasible.  The
    iterative backend starts at p = 0, where the max is -min(b), so the
    search is feasible from the first step.  NoStrictInterior covers both
    genuinely infeasible programs and feasible ones with empty interior;
    the construction cannot tell them apart.
    """
    options = options or SolveOptions()
    result = _run_minmax(PiecewiseMaxProblem(G=lp.A, h=-lp.b), options)
    # a descent to minus infinity just means arbitrarily deep interior;
    # the witness point is still strictly inside
    p0 = result.x_star
    margin = float(result.value)
    if margin < -EPS_STRICT:
        return PhaseOneResult(PhaseOneStatus.STRICT_INTERIOR, p0, margin)
    return PhaseOneResult(PhaseOneStatus.NO_STRICT_INTERIOR, p0, margin)


def dual_constraint_points(lp: LinearProgram) -> np.ndarray:
    """Dual points -A_i / b_i of the constraint planes, in row order.

    Requires every offset positive, i.e. the origin strictly inside; that is
    what the translation step guarantees.
    """
    bad = np.flatnonzero(lp.b <= 0)
    if bad.size:
        row = int(bad[0])
        raise ReductionError(
            f"row {row}: offset must be positive before dualizing, got {lp.b[row]!r}; "
            "translate a strict interior point to the origin first"
        )
    duals = -lp.A / lp.b[:, None]
    duals.setflags(write=False)
    return duals


def build_support_problem(duals: np.ndarray) -> SupportPlaneProblem:
    """Encode "support the dual points from below with maximal intercept".

    For a plane z = w . x' + t to sit below every dual point q we need
    t <= q_z - w . q'; the best intercept for a slope w is therefore
    min_q (q_z - w . q'), and maximizing it over w is the min-max instance
    minimize over w of max_q (w . q' - q_z).
    """
    duals = np.asarray(duals, dtype=float)
    if duals.ndim != 2 or duals.shape[0] < 1:
        raise ReductionError("need at least one dual point")
    if duals.shape[1] < 2:
        raise ReductionError("dual points must have at least two coordinates")
    return SupportPlaneProblem(
        duals=duals,
        minmax=PiecewiseMaxProblem(G=duals[:, :-1], h=-duals[:, -1]),
    )


def classify_and_recover(
    spp: SupportPlaneProblem, result: MinMaxResult, eps_unbounded: float = EPS_UNBOUNDED
) -> tuple[SolutionStatus, np.ndarray | None]:
    """Read the LP outcome off the min-max result.

    The optimal intercept is t* = -value.  An intercept at (or numerically
    indistinguishable from) zero means feasible planes exist with arbitrarily
    small negative intercept, i.e. the LP is unbounded.  Otherwise the optimal
    plane is ((w*, -1), -t*) and its dual point (w*, -1)/t* is the optimum,
    with last coordinate -1/t* > 0.
    """
    if result.status is MinMaxStatus.UNBOUNDED_BELOW:
        return SolutionStatus.UNBOUNDED, None
    if result.x_star is None or result.value is None:
        raise ReductionError("min-max result carries no minimizer")
    check, _ = evaluate(spp.minmax, result.x_star)
    if abs(check - result.value) > 1e-6 * (1 + abs(check)):
        raise ReductionError("min-max result does not certify against this problem")
    t_star = -float(result.value)
    if t_star >= -eps_unbounded:
        return SolutionStatus.UNBOUNDED, None
    point = np.append(result.x_star, -1.0) / t_star
    return SolutionStatus.OPTIMAL, point


def _pull_inside(A: np.ndarray, b: np.ndarray, p0: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Shrink x toward the interior point p0 just enough to be feasible.

    A no-op when x already satisfies every constraint; otherwise the largest
    step along the segment [p0, x] that stays inside.  Soaks up the small
    infeasibility an approximate min-max solve can leave.
    """
    direction = A @ (x - p0)
    room = b - A @ p0
    rising = direction > 0
    if not rising.any():
        return x
    step = float(np.min(room[rising] / direction[rising]))
    if step >= 1.0:
        return x
    return p0 + max(step, 0.0) * (x - p0)


def solve(
    lp: LinearProgram,
    interior_hint: np.ndarray | None = None,
    options: SolveOptions | None = None,
) -> Solution:
    """Solve the LP end to end; statuses cover every outcome, so this only
    raises on configuration problems (unknown solver, dimension cap)."""
    options = options or SolveOptions()
    if not validate(lp).ok:
        return Solution(status=SolutionStatus.INPUT_ERROR)

    # the pipeline maximizes; flip the objective for minimize and report
    # values against the original one
    c = lp.c if lp.sense is Sense.MAXIMIZE else -lp.c

    if interior_hint is not None:
        p0 = np.asarray(interior_hint, dtype=float)
        if p0.shape != (lp.dimension,) or not np.isfinite(p0).all():
            return Solution(status=SolutionStatus.INPUT_ERROR)
        if float((lp.A @ p0 - lp.b).max()) >= -EPS_STRICT:
            return Solution(status=SolutionStatus.ORIGIN_NOT_INTERIOR)
    else:
        ph = phase1(lp, options)
        if ph.status is PhaseOneStatus.NO_STRICT_INTERIOR:
            return Solution(status=SolutionStatus.INFEASIBLE)
        p0 = ph.p0

    if not c.any():
        # constant objective: any feasible point is optimal
        return Solution(
            status=SolutionStatus.OPTIMAL,
            x=p0,
            objective=0.0,
            residual=float((lp.A @ p0 - lp.b).max()),
            interior_point=p0,
        )

    working = LinearProgram(dimension=lp.dimension, A=lp.A, b=lp.b, c=c)
    translated, translation = make_origin_strictly_feasible(working, p0)
    rotation = rotation_to_last_axis(c)
    rotated = rotate_problem(translated, rotation)

    duals = dual_constraint_points(rotated)
    spp = build_support_problem(duals)
    result = _run_minmax(spp.minmax, options)
    status, dual_point = classify_and_recover(spp, result, eps_unbounded=options.tolerance)

    if status is SolutionStatus.UNBOUNDED:
        return Solution(status=SolutionStatus.UNBOUNDED, interior_point=p0)

    transform = ProblemTransform(rotation=rotation, translation=translation)
    x = recover_solution(transform, dual_point)
    x = _pull_inside(lp.A, lp.b, p0, x)
    return Solution(
        status=SolutionStatus.OPTIMAL,
        x=x,
        objective=float(lp.c @ x),
        residual=float((lp.A @ x - lp.b).max()),
        interior_point=p0,
    )
