"""Coordinate changes that normalize an LP before the dual reduction.

Two steps: translate a strictly feasible point to the origin (so every
constraint offset becomes positive), then rotate the objective onto the last
coordinate axis.  The rotation is a Householder reflection with its first row
negated, which fixes the determinant at +1 while still sending c/||c|| to e_d;
it is applied implicitly in O(d) per vector.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import TransformError
from .model import LinearProgram

# how far inside every constraint a point must sit to count as interior
EPS_STRICT = 1e-9

# below this, the objective is already aligned with e_d and no reflection runs
EPS_IDENTITY = 1e-14


@dataclass(frozen=True, eq=False)
class Translation:
    """Shift that takes ``p0`` to the origin: y = x - p0."""

    p0: np.ndarray

    def __post_init__(self) -> None:
        p0 = np.array(self.p0, dtype=float)
        p0.setflags(write=False)
        object.__setattr__(self, "p0", p0)


@dataclass(frozen=True, eq=False)
class HouseholderRotation:
    """Rotation sending the unit objective direction to e_d.

    ``u_hat`` is the unit reflection axis; ``None`` means the objective
    already points along e_d and the map is the identity.  The first-row
    negation turns the reflection (det -1) into a rotation (det +1) without
    moving e_d, since the reflected objective has first coordinate zero.
    """

    d: int
    u_hat: np.ndarray | None
    negate_first_row: bool

    def __post_init__(self) -> None:
        if self.u_hat is not None:
            u_hat = np.array(self.u_hat, dtype=float)
            u_hat.setflags(write=False)
            object.__setattr__(self, "u_hat", u_hat)

    @property
    def matrix(self) -> np.ndarray:
        """Dense form, for inspection and tests; solvers use apply_rotation."""
        R = np.eye(self.d)
        if self.u_hat is not None:
            R -= 2.0 * np.outer(self.u_hat, self.u_hat)
        if self.negate_first_row:
            R[0] = -R[0]
        return R


def make_origin_strictly_feasible(
    lp: LinearProgram, p0: np.ndarray
) -> tuple[LinearProgram, Translation]:
    """Translate ``lp`` so that the interior point ``p0`` becomes the origin.

    The shifted program has b' = b - A p0, which is strictly positive; raises
    :class:`TransformError` naming the first violated row when ``p0`` is not
    strictly inside.
    """
    p0 = np.asarray(p0, dtype=float)
    if p0.shape != (lp.dimension,):
        raise TransformError(f"interior point must have {lp.dimension} coordinates")
    if not np.isfinite(p0).all():
        raise TransformError("interior point must be finite")
    margins = lp.A @ p0 - lp.b
    loose = np.flatnonzero(margins >= -EPS_STRICT)
    if loose.size:
        row = int(loose[0])
        raise TransformError(
            f"point is not strictly interior: row {row} has margin {margins[row]:.3e}"
        )
    shifted = LinearProgram(
        dimension=lp.dimension,
        A=lp.A,
        b=lp.b - lp.A @ p0,
        c=lp.c,
        sense=lp.sense,
        name=lp.name,
    )
    return shifted, Translation(p0)


def rotation_to_last_axis(c: np.ndarray) -> HouseholderRotation:
    """Build the rotation taking direction ``c`` to the last axis."""
    c = np.asarray(c, dtype=float)
    if c.ndim != 1 or c.size < 2:
        raise TransformError("rotation needs at least two coordinates")
    norm = float(np.linalg.norm(c))
    if norm == 0.0:
        raise TransformError("objective must be nonzero to define a rotation")
    u = c / norm
    u = u.copy()
    u[-1] -= 1.0
    u_norm = float(np.linalg.norm(u))
    if u_norm < EPS_IDENTITY:
        return HouseholderRotation(d=c.size, u_hat=None, negate_first_row=False)
    return HouseholderRotation(d=c.size, u_hat=u / u_norm, negate_first_row=True)


def apply_rotation(
    rotation: HouseholderRotation, v: np.ndarray, inverse: bool = False
) -> np.ndarray:
    """Apply the rotation (or its inverse) to a vector or to rows of a matrix."""
    v = np.array(np.asarray(v, dtype=float))
    if v.shape[-1] != rotation.d:
        raise TransformError(f"expected vectors of length {rotation.d}, got {v.shape[-1]}")
    if rotation.u_hat is None:
        return v
    u = rotation.u_hat

    def reflect(w: np.ndarray) -> np.ndarray:
        return w - 2.0 * np.multiply.outer(w @ u, u)

    single = v.ndim == 1
    rows = v[None, :] if single else v
    if inverse:
        rows = rows.copy()
        if rotation.negate_first_row:
            rows[:, 0] = -rows[:, 0]
        out = reflect(rows)
    else:
        out = reflect(rows)
        if rotation.negate_first_row:
            out[:, 0] = -out[:, 0]
    return out[0] if single else out


def rotate_problem(lp: LinearProgram, rotation: HouseholderRotation) -> LinearProgram:
    """Rotate coordinates so the objective points along the last axis.

    Constraint rows rotate like points (y = R x turns pi . x <= beta into
    (R pi) . y <= beta); offsets are untouched.
    """
    if rotation.d != lp.dimension:
        raise TransformError(
            f"rotation is {rotation.d}-dimensional but the program has dimension {lp.dimension}"
        )
    return LinearProgram(
        dimension=lp.dimension,
        A=apply_rotation(rotation, lp.A),
        b=lp.b,
        c=apply_rotation(rotation, lp.c),
        sense=lp.sense,
        name=lp.name,
    )


@dataclass(frozen=True, eq=False)
class ProblemTransform:
    """Composition used by the pipeline: translate, then rotate."""

    rotation: HouseholderRotation
    translation: Translation

    def forward(self, x: np.ndarray) -> np.ndarray:
        return apply_rotation(self.rotation, np.asarray(x, dtype=float) - self.translation.p0)

    def inverse(self, y: np.ndarray) -> np.ndarray:
        return apply_rotation(self.rotation, y, inverse=True) + self.translation.p0


def recover_solution(transform: ProblemTransform, y: np.ndarray) -> np.ndarray:
    """Map a point found in reduced coordinates back to the original ones."""
    return transform.inverse(np.asarray(y, dtype=float))
