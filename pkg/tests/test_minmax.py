"""Min-max solver tests: pinned small cases, oracle cross-checks, optimality
certificates, determinism."""

import numpy as np
import pytest

from bruteforce import reference_minmax
from minmaxlp.errors import DimensionCapError, SolverError
from minmaxlp.minmax import (
    MinMaxStatus,
    PiecewiseMaxProblem,
    SubgradientParams,
    evaluate,
    solve_exact,
    solve_subgradient,
)


def v_problem(h0=0.0, h1=0.0):
    return PiecewiseMaxProblem(G=[[1.0], [-1.0]], h=[h0, h1])


class TestEvaluate:
    def test_tie_takes_smallest_index(self):
        value, index = evaluate(v_problem(-3.0, -1.0), np.array([1.0]))
        assert value == -2.0
        assert index == 0

    def test_at_origin_reads_offsets(self):
        prob = PiecewiseMaxProblem(G=[[1.0, 2.0], [3.0, 4.0], [0.0, 0.0]], h=[1.0, 7.0, 2.0])
        assert evaluate(prob, np.zeros(2)) == (7.0, 1)

    def test_constant_piece(self):
        prob = PiecewiseMaxProblem(G=[[0.0, 0.0]], h=[5.0])
        assert evaluate(prob, np.array([42.0, -3.0])) == (5.0, 0)

    def test_length_mismatch(self):
        with pytest.raises(SolverError):
            evaluate(v_problem(), np.zeros(2))


class TestConstruction:
    def test_empty_rejected(self):
        with pytest.raises(SolverError):
            PiecewiseMaxProblem(G=np.zeros((0, 2)), h=np.zeros(0))

    def test_offset_mismatch_rejected(self):
        with pytest.raises(SolverError):
            PiecewiseMaxProblem(G=[[1.0]], h=[1.0, 2.0])

    def test_nonfinite_rejected(self):
        with pytest.raises(SolverError):
            PiecewiseMaxProblem(G=[[np.nan]], h=[0.0])


class TestSolveExact:
    def test_shifted_v(self):
        result = solve_exact(v_problem(-3.0, -1.0), seed=0)
        assert result.status is MinMaxStatus.MINIMIZED
        assert result.value == pytest.approx(-2.0, abs=1e-9)
        np.testing.assert_allclose(result.x_star, [1.0], atol=1e-9)
        assert result.active_set == (0, 1)

    def test_symmetric_v(self):
        result = solve_exact(v_problem(), seed=0)
        assert result.value == pytest.approx(0.0, abs=1e-9)
        np.testing.assert_allclose(result.x_star, [0.0], atol=1e-9)

    def test_single_piece_unbounded(self):
        result = solve_exact(PiecewiseMaxProblem(G=[[1.0, 0.0]], h=[0.0]), seed=0)
        assert result.status is MinMaxStatus.UNBOUNDED_BELOW

    def test_flat_direction_is_bounded(self):
        # pieces ignore the second coordinate; ties must settle at zero,
        # not at the bounding box
        prob = PiecewiseMaxProblem(G=[[1.0, 0.0], [-1.0, 0.0]], h=[0.0, 0.0])
        result = solve_exact(prob, seed=0)
        assert result.status is MinMaxStatus.MINIMIZED
        assert result.value == pytest.approx(0.0, abs=1e-9)
        np.testing.assert_allclose(result.x_star, [0.0, 0.0], atol=1e-9)

    def test_single_constant_piece(self):
        result = solve_exact(PiecewiseMaxProblem(G=[[0.0]], h=[1.0]), seed=0)
        assert result.status is MinMaxStatus.MINIMIZED
        assert result.value == pytest.approx(1.0, abs=1e-12)
        np.testing.assert_allclose(result.x_star, [0.0], atol=1e-9)

    def test_dimension_cap(self):
        prob = PiecewiseMaxProblem(G=np.ones((1, 11)), h=[0.0])
        with pytest.raises(DimensionCapError, match="subgradient"):
            solve_exact(prob, seed=0)

    def test_value_matches_evaluate(self):
        rng = np.random.default_rng(20)
        for trial in range(30):
            d = int(rng.integers(1, 4))
            m = int(rng.integers(2, 9))
            prob = PiecewiseMaxProblem(rng.standard_normal((m, d)), rng.standard_normal(m))
            result = solve_exact(prob, seed=trial)
            if result.status is MinMaxStatus.MINIMIZED:
                value, _ = evaluate(prob, result.x_star)
                assert abs(value - result.value) <= 1e-9 * (1 + abs(result.value))

    def test_matches_reference_oracle(self):
        rng = np.random.default_rng(21)
        minimized = 0
        unbounded = 0
        for trial in range(120):
            d = int(rng.integers(1, 4))
            m = int(rng.integers(1, 9))
            G = rng.standard_normal((m, d))
            h = rng.standard_normal(m)
            ref_status, ref_value = reference_minmax(G, h)
            result = solve_exact(PiecewiseMaxProblem(G, h), seed=trial)
            if ref_status == "unbounded_below":
                assert result.status is MinMaxStatus.UNBOUNDED_BELOW
                unbounded += 1
            else:
                assert result.status is MinMaxStatus.MINIMIZED
                assert abs(result.value - ref_value) <= 1e-8 * (1 + abs(ref_value))
                minimized += 1
        # the generator must exercise both outcomes
        assert minimized >= 20 and unbounded >= 20

    def test_seed_determinism_is_bit_exact(self):
        rng = np.random.default_rng(22)
        prob = PiecewiseMaxProblem(rng.standard_normal((6, 3)), rng.standard_normal(6))
        first = solve_exact(prob, seed=7)
        second = solve_exact(prob, seed=7)
        assert first.status is second.status
        assert first.value == second.value
        assert first.x_star.tobytes() == second.x_star.tobytes()
        assert first.active_set == second.active_set

    def test_value_invariant_under_piece_shuffle(self):
        rng = np.random.default_rng(23)
        for trial in range(20):
            m = int(rng.integers(2, 8))
            G = rng.standard_normal((m, 2))
            h = rng.standard_normal(m)
            base = solve_exact(PiecewiseMaxProblem(G, h), seed=0)
            perm = rng.permutation(m)
            shuffled = solve_exact(PiecewiseMaxProblem(G[perm], h[perm]), seed=0)
            assert base.status is shuffled.status
            if base.status is MinMaxStatus.MINIMIZED:
                assert shuffled.value == pytest.approx(base.value, abs=1e-9 * (1 + abs(base.value)))


def _simplex_grid(k: int, resolution: float) -> np.ndarray:
    """All weight vectors on the k-simplex with the given spacing."""
    steps = int(round(1.0 / resolution))
    if k == 1:
        return np.ones((1, 1))
    if k == 2:
        lam = np.linspace(0.0, 1.0, steps + 1)
        return np.column_stack([lam, 1.0 - lam])
    axes = np.meshgrid(*([np.linspace(0.0, 1.0, steps + 1)] * (k - 1)), indexing="ij")
    flat = np.column_stack([a.ravel() for a in axes])
    keep = flat.sum(axis=1) <= 1.0 + 1e-12
    flat = flat[keep]
    return np.column_stack([flat, 1.0 - flat.sum(axis=1)])


def test_zero_gradient_certificate():
    """At a reported minimum, zero must lie in the hull of the active
    pieces' gradients (searched on a weight grid)."""
    rng = np.random.default_rng(24)
    checked = 0
    trial = 0
    while checked < 25:
        trial += 1
        d = int(rng.integers(1, 4))
        m = int(rng.integers(d + 1, 9))
        prob = PiecewiseMaxProblem(rng.standard_normal((m, d)), rng.standard_normal(m))
        result = solve_exact(prob, seed=trial)
        if result.status is not MinMaxStatus.MINIMIZED:
            continue
        gradients = prob.G[list(result.active_set)]
        k = gradients.shape[0]
        if k > 4:
            continue  # degenerate pile-up; certificate grid would be too coarse
        resolution = 1e-3 if k <= 3 else 1e-2
        weights = _simplex_grid(k, resolution)
        combos = weights @ gradients
        best = float(np.linalg.norm(combos, axis=1).min())
        scale = 1.0 + float(np.abs(gradients).max())
        assert best <= 5 * resolution * k * scale
        checked += 1


class TestSolveSubgradient:
    def test_v_problem_converges(self):
        result = solve_subgradient(v_problem())
        assert result.status is MinMaxStatus.MINIMIZED
        assert result.value <= 1e-6
        assert result.converged

    def test_constant_problem_immediate(self):
        prob = PiecewiseMaxProblem(G=np.zeros((3, 2)), h=[1.0, 5.0, 2.0])
        result = solve_subgradient(prob)
        assert result.value == 5.0
        assert result.converged
        np.testing.assert_array_equal(result.x_star, np.zeros(2))

    def test_tracks_exact_backend(self):
        rng = np.random.default_rng(25)
        checked = 0
        trial = 0
        while checked < 20:
            trial += 1
            G = rng.standard_normal((10, 3))
            h = rng.standard_normal(10)
            prob = PiecewiseMaxProblem(G, h)
            exact = solve_exact(prob, seed=trial)
            if exact.status is not MinMaxStatus.MINIMIZED:
                continue
            approx = solve_subgradient(prob)
            assert approx.status is MinMaxStatus.MINIMIZED
            assert abs(approx.value - exact.value) <= 1e-5 * (1 + abs(exact.value))
            checked += 1

    def test_runaway_descent_flags_unbounded(self):
        result = solve_subgradient(PiecewiseMaxProblem(G=[[1.0, 0.0]], h=[0.0]))
        assert result.status is MinMaxStatus.UNBOUNDED_BELOW
        assert result.value < -1e12
        assert not result.converged

    def test_custom_start_point(self):
        result = solve_subgradient(v_problem(), SubgradientParams(x0=np.array([10.0])))
        assert result.value <= 1e-6

    def test_unknown_step_rule_rejected(self):
        with pytest.raises(SolverError, match="step rule"):
            solve_subgradient(v_problem(), SubgradientParams(step_rule="constant"))

    def test_works_above_exact_cap(self):
        rng = np.random.default_rng(26)
        d = 15
        G = np.vstack([np.eye(d), -np.eye(d)]) + 0.01 * rng.standard_normal((2 * d, d))
        h = np.zeros(2 * d)
        result = solve_subgradient(PiecewiseMaxProblem(G, h))
        assert result.status is MinMaxStatus.MINIMIZED
        assert result.value <= 1e-4
