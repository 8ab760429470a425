"""Solve strictly-feasible LPs by dualizing constraints into points and
finding the best lower supporting hyperplane via a piecewise-linear min-max."""

from .dual_geometry import (
    Plane,
    Side,
    dual_of_plane,
    dual_of_point,
    is_feasible_dual_plane,
    same_side_as_origin,
    side_of,
    z_intercept,
)
from .errors import (
    DimensionCapError,
    GeometryError,
    LoadError,
    LPError,
    ReductionError,
    SolverError,
    TransformError,
)
from .minmax import (
    MinMaxResult,
    MinMaxStatus,
    PiecewiseMaxProblem,
    SubgradientParams,
    evaluate,
    solve_exact,
    solve_subgradient,
)
from .model import (
    LinearProgram,
    Sense,
    Solution,
    SolutionStatus,
    ValidationReport,
    load_lp,
    load_solution,
    save_lp,
    save_solution,
    validate,
)
from .reduction import (
    PhaseOneResult,
    PhaseOneStatus,
    SolveOptions,
    SupportPlaneProblem,
    build_support_problem,
    classify_and_recover,
    dual_constraint_points,
    phase1,
    solve,
)
from .transforms import (
    HouseholderRotation,
    ProblemTransform,
    Translation,
    apply_rotation,
    make_origin_strictly_feasible,
    recover_solution,
    rotate_problem,
    rotation_to_last_axis,
)

__all__ = [
    "DimensionCapError",
    "GeometryError",
    "HouseholderRotation",
    "LPError",
    "LinearProgram",
    "LoadError",
    "MinMaxResult",
    "MinMaxStatus",
    "PhaseOneResult",
    "PhaseOneStatus",
    "PiecewiseMaxProblem",
    "Plane",
    "ProblemTransform",
    "ReductionError",
    "Sense",
    "Side",
    "Solution",
    "SolutionStatus",
    "SolveOptions",
    "SolverError",
    "SubgradientParams",
    "SupportPlaneProblem",
    "TransformError",
    "Translation",
    "ValidationReport",
    "apply_rotation",
    "build_support_problem",
    "classify_and_recover",
    "dual_constraint_points",
    "dual_of_plane",
    "dual_of_point",
    "evaluate",
    "is_feasible_dual_plane",
    "load_lp",
    "load_solution",
    "make_origin_strictly_feasible",
    "phase1",
    "recover_solution",
    "rotate_problem",
    "rotation_to_last_axis",
    "same_side_as_origin",
    "save_lp",
    "save_solution",
    "side_of",
    "solve",
    "solve_exact",
    "solve_subgradient",
    "validate",
    "z_intercept",
]
