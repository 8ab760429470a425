"""Minimize the pointwise maximum of affine pieces: min over x of
max_i (G_i . x + h_i).

Two backends.  The exact one solves the epigraph LP (minimize t subject to
G_i . x + h_i <= t) by randomized incremental insertion inside a symmetric
bounding box, recursing on one fewer variable each time a constraint is
violated; it is intended for low dimension.  The iterative one takes Polyak
subgradient steps toward a slowly lowered target level and scales to any
dimension at the price of approximate answers.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DimensionCapError, SolverError

# exact backend refuses instances wider than this many variables
D_MAX = 10

# bounding-box multiple of the instance's own scale
BOX_FACTOR = 1e6

# a piece counts as active when within this relative slack of the max
ACTIVE_TOL = 1e-7

# objective coefficients below this are ties, resolved toward zero
TIE_TOL = 1e-12


class MinMaxStatus(str, Enum):
    MINIMIZED = "minimized"
    UNBOUNDED_BELOW = "unbounded_below"


@dataclass(frozen=True, eq=False)
class PiecewiseMaxProblem:
    """The function x -> max_i (G_i . x + h_i), given by its pieces."""

    G: np.ndarray
    h: np.ndarray

    def __post_init__(self) -> None:
        G = np.array(self.G, dtype=float)
        h = np.array(self.h, dtype=float)
        if G.ndim != 2 or G.shape[0] < 1:
            raise SolverError("G must be a matrix with at least one row")
        if h.shape != (G.shape[0],):
            raise SolverError("h must have one entry per row of G")
        if not (np.isfinite(G).all() and np.isfinite(h).all()):
            raise SolverError("pieces must be finite")
        G.setflags(write=False)
        h.setflags(write=False)
        object.__setattr__(self, "G", G)
        object.__setattr__(self, "h", h)

    @property
    def m(self) -> int:
        return self.G.shape[0]

    @property
    def d(self) -> int:
        return self.G.shape[1]


@dataclass(frozen=True, eq=False)
class MinMaxResult:
    status: MinMaxStatus
    x_star: np.ndarray | None
    value: float | None
    active_set: tuple[int, ...] | None
    converged: bool = True


def evaluate(prob: PiecewiseMaxProblem, x: np.ndarray) -> tuple[float, int]:
    """Value of the max at ``x`` and the smallest index attaining it."""
    x = np.asarray(x, dtype=float)
    if x.shape != (prob.d,):
        raise SolverError(f"expected a point of length {prob.d}, got shape {x.shape}")
    values = prob.G @ x + prob.h
    index = int(np.argmax(values))
    return float(values[index]), index


def _active_set(prob: PiecewiseMaxProblem, x: np.ndarray, value: float) -> tuple[int, ...]:
    values = prob.G @ x + prob.h
    return tuple(int(i) for i in np.flatnonzero(values >= value - ACTIVE_TOL * (1 + abs(value))))


# ---------------------------------------------------------------------------
# exact backend: randomized incremental LP on the epigraph


def _solve_interval(A: np.ndarray, b: np.ndarray, c0: float, lo: float, hi: float, tol: float):
    """One-variable base case: intersect half-lines, then optimize."""
    for a, rhs in zip(A[:, 0], b):
        # rows are unit-normalized on entry, so |a| is never small here
        bound = rhs / a
        if a > 0:
            hi = min(hi, bound)
        else:
            lo = max(lo, bound)
    if lo > hi + tol * (1 + abs(lo) + abs(hi)):
        return None
    if lo > hi:
        lo = hi = 0.5 * (lo + hi)
    if abs(c0) <= TIE_TOL:
        x = min(max(0.0, lo), hi)
    elif c0 > 0:
        x = lo
    else:
        x = hi
    return np.array([x])


def _seidel(A: np.ndarray, b: np.ndarray, c: np.ndarray, lo: np.ndarray, hi: np.ndarray,
            rng: np.random.Generator, tol: float):
    """Minimize c . x over {A x <= b, lo <= x <= hi}, or None when the
    half-spaces are (numerically) inconsistent.

    Constraints are visited in random order; a violated one must be tight at
    the optimum, so that variable is eliminated and the prefix re-solved one
    dimension down.  The box is kept implicit: the running point always
    satisfies it, and eliminated coordinates re-enter as two ordinary rows.
    """
    # normalize rows so pivots and violation thresholds are scale-free
    keep = []
    if A.shape[0]:
        norms = np.linalg.norm(A, axis=1)
        for i, norm in enumerate(norms):
            if norm <= 1e-13:
                if b[i] < -tol:
                    return None  # 0 . x <= negative: inconsistent
                continue  # vacuous row
            keep.append(i)
        A = A[keep] / norms[keep][:, None]
        b = b[keep] / norms[keep]

    dim = c.size
    if dim == 1:
        return _solve_interval(A, b, float(c[0]), float(lo[0]), float(hi[0]), tol)

    tie = np.abs(c) <= TIE_TOL * max(1.0, float(np.abs(c).max()))
    x = np.where(c > 0, lo, hi)
    x[tie] = np.clip(0.0, lo[tie], hi[tie])

    order = rng.permutation(A.shape[0])
    for position, i in enumerate(order):
        row, rhs = A[i], b[i]
        slack = tol * (1 + abs(rhs)) + 1e-12 * (1 + float(np.abs(x).max()))
        if row @ x <= rhs + slack:
            continue
        # optimum lies on row . x = rhs; eliminate the largest coordinate
        k = int(np.argmax(np.abs(row)))
        pivot = row[k]
        rest = np.delete(np.arange(dim), k)
        alpha = row[rest] / pivot  # x_k = beta - alpha . x_rest
        beta = rhs / pivot

        prefix = A[order[:position]]
        sub_A = prefix[:, rest] - np.outer(prefix[:, k], alpha)
        sub_b = b[order[:position]] - prefix[:, k] * beta
        # the box on x_k becomes two ordinary rows of the subproblem
        sub_A = np.vstack([sub_A, -alpha[None, :], alpha[None, :]])
        sub_b = np.concatenate([sub_b, [hi[k] - beta, beta - lo[k]]])
        sub_c = c[rest] - c[k] * alpha

        sub_x = _seidel(sub_A, sub_b, sub_c, lo[rest], hi[rest], rng, tol)
        if sub_x is None:
            return None
        x = np.empty(dim)
        x[rest] = sub_x
        x[k] = beta - alpha @ sub_x
    return x


def _epigraph_minimum(prob: PiecewiseMaxProblem, box: float, rng: np.random.Generator,
                      tol: float):
    """Solve min t s.t. G x + h <= t inside |x_j| <= box, |t| <= box.

    Returns (x, t, box_active).
    """
    d = prob.d
    A = np.hstack([prob.G, -np.ones((prob.m, 1))])
    b = -prob.h
    c = np.zeros(d + 1)
    c[-1] = 1.0
    lo = np.full(d + 1, -box)
    hi = np.full(d + 1, box)
    z = _seidel(A, b, c, lo, hi, rng, tol)
    if z is None:
        raise SolverError(
            "incremental solve hit an inconsistent subsystem; retry with a different seed"
        )
    box_active = bool(np.any(np.abs(z) >= box * (1 - 1e-7)))
    return z[:d], float(z[-1]), box_active


def solve_exact(prob: PiecewiseMaxProblem, seed: int = 0, d_max: int = D_MAX,
                tolerance: float = 1e-9) -> MinMaxResult:
    """Exact minimization via the epigraph LP.

    A symmetric box at 10^6 times the instance scale makes every subproblem
    bounded; if the optimum presses against the box, the box is doubled once
    and the solve repeated.  Still pressing with a strictly better value means
    genuine descent to minus infinity: UnboundedBelow, with the last iterate
    as witness.  Raises :class:`DimensionCapError` above ``d_max`` variables.
    """
    if prob.d > d_max:
        raise DimensionCapError(
            f"exact backend is capped at {d_max} variables, got {prob.d}; "
            "use solve_subgradient"
        )
    rng = np.random.default_rng(seed)
    scale = 1.0 + float(np.abs(prob.h).max()) + float(np.linalg.norm(prob.G, axis=1).max())
    box = BOX_FACTOR * scale
    x, t, box_active = _epigraph_minimum(prob, box, rng, tolerance)
    if box_active:
        x2, t2, box_active2 = _epigraph_minimum(prob, 2 * box, rng, tolerance)
        if box_active2 and t2 < t - tolerance * (1 + abs(t)):
            value, _ = evaluate(prob, x2)
            return MinMaxResult(
                status=MinMaxStatus.UNBOUNDED_BELOW,
                x_star=x2,
                value=value,
                active_set=_active_set(prob, x2, value),
            )
        if t2 <= t:
            x, t = x2, t2
    value, _ = evaluate(prob, x)
    return MinMaxResult(
        status=MinMaxStatus.MINIMIZED,
        x_star=x,
        value=value,
        active_set=_active_set(prob, x, value),
    )


# ---------------------------------------------------------------------------
# iterative backend: Polyak steps toward a descending target level


@dataclass(frozen=True)
class SubgradientParams:
    max_iters: int = 20000
    step_rule: str = "polyak-level"
    tolerance: float = 1e-7
    x0: np.ndarray | None = None


# iterations a level may run without delta/2 progress before halving delta
LEVEL_PATIENCE = 400

# best value below which the run is declared unbounded
UNBOUNDED_VALUE = -1e12


def solve_subgradient(prob: PiecewiseMaxProblem,
                      params: SubgradientParams | None = None) -> MinMaxResult:
    """Approximate minimization by subgradient steps.

    Each step moves against the gradient of the currently maximal piece with
    the Polyak step length for the target ``f_best - delta``; when a level
    stalls, ``delta`` halves and the iterate restarts from the incumbent.
    Always returns the best point seen, flagged ``converged`` once ``delta``
    shrinks below the requested tolerance.
    """
    params = params or SubgradientParams()
    if params.step_rule != "polyak-level":
        raise SolverError(f"unknown step rule {params.step_rule!r}")
    if params.max_iters < 1:
        raise SolverError("max_iters must be positive")

    x = np.zeros(prob.d) if params.x0 is None else np.array(params.x0, dtype=float)
    if x.shape != (prob.d,):
        raise SolverError(f"x0 must have length {prob.d}")

    f_best, _ = evaluate(prob, x)
    x_best = x.copy()

    if not prob.G.any():
        # every piece is constant; the start point is already optimal
        return MinMaxResult(
            status=MinMaxStatus.MINIMIZED,
            x_star=x_best,
            value=f_best,
            active_set=_active_set(prob, x_best, f_best),
        )

    delta = 0.5 * (1.0 + abs(f_best))
    level_best = f_best
    stalled = 0
    streak = 0  # consecutive successful levels; sustained descent doubles delta
    converged = False

    for _ in range(params.max_iters):
        f, argmax = evaluate(prob, x)
        if not np.isfinite(f):
            x = x_best.copy()
            delta *= 0.5
            stalled = 0
            continue
        if f < f_best:
            f_best, x_best = f, x.copy()
        if f_best < UNBOUNDED_VALUE:
            return MinMaxResult(
                status=MinMaxStatus.UNBOUNDED_BELOW,
                x_star=x_best,
                value=f_best,
                active_set=_active_set(prob, x_best, f_best),
                converged=False,
            )
        g = prob.G[argmax]
        gg = float(g @ g)
        if gg == 0.0:
            # a constant piece is the max: its value floors the function
            converged = True
            break
        x = x - ((f - (f_best - delta)) / gg) * g
        stalled += 1
        if f_best <= level_best - 0.5 * delta:
            level_best = f_best
            stalled = 0
            streak += 1
            if streak >= 10:
                delta *= 2.0  # chase runaway descent geometrically
                streak = 0
        elif stalled >= LEVEL_PATIENCE:
            # too ambitious a target: lower the bar but keep the iterate,
            # whose distance-to-optimum progress is worth preserving
            delta *= 0.5
            stalled = 0
            streak = 0
            level_best = f_best
        if delta <= 0.25 * params.tolerance * (1.0 + abs(f_best)):
            converged = True
            break

    return MinMaxResult(
        status=MinMaxStatus.MINIMIZED,
        x_star=x_best,
        value=f_best,
        active_set=_active_set(prob, x_best, f_best),
        converged=converged,
    )
