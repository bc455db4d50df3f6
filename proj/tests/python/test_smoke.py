import numpy as np
import pytest

remest = pytest.importorskip("remest")


def test_solve_worked_instance():
    spec = remest.ProblemSpec.homogeneous(5, 3, 1.0, 1.0)
    result = remest.solve(spec)
    assert result.optimal_cost == pytest.approx(1.0)
    assert result.schedule.to_string() == "01010"
    assert result.table.value(1, 0, 3) == pytest.approx(1.0)


def test_homogeneous_formula_matches_solver():
    for horizon in range(1, 9):
        for budget in range(1, min(horizon, 4) + 1):
            for lam in (0.0, 0.5, 1.0, -1.0, 2.0):
                spec = remest.ProblemSpec.homogeneous(horizon, budget, 1.0, lam)
                formula = remest.homogeneous_cost(horizon, budget, 1.0, lam)
                assert remest.solve(spec).optimal_cost == pytest.approx(formula, abs=1e-12)


def test_uniform_schedule_and_spacing():
    assert remest.spacing(5, 3) == 2
    assert remest.uniform_schedule(5, 3).to_string() == "01010"
    assert remest.min_budget(9, 1.0, 1.0, 1.0) == 4
    assert remest.min_budget(3, 1.0, 1.0, 0.5) is None


def test_adversarial_noise_is_tight():
    spec = remest.ProblemSpec.homogeneous(6, 2, 1.0, 1.5)
    schedule = remest.solve(spec).schedule
    bounds = remest.evaluate_schedule(schedule, spec)
    noise = remest.adversarial_noise(schedule, spec)
    trajectory = remest.simulate(schedule, noise, spec)
    assert trajectory.cost == pytest.approx(bounds.max_radius)
    assert np.allclose(trajectory.errors, bounds.radii)


def test_rotation_matrix_roundtrip():
    spec = remest.ProblemSpec.homogeneous(3, 1, 1.0, 2.0, 2)
    spec.rotation = np.array([[0.0, -1.0], [1.0, 0.0]])
    remest.validate_spec(spec)
    schedule = remest.Schedule("010")
    bounds = remest.evaluate_schedule(schedule, spec)
    assert bounds.radii == pytest.approx([1.0, 0.0, 1.0])


def test_validation_error_is_a_value_error():
    spec = remest.ProblemSpec.homogeneous(3, 1, -1.0, 1.0)
    with pytest.raises(ValueError):
        remest.validate_spec(spec)


def test_oracles_agree_on_a_tiny_instance():
    spec = remest.ProblemSpec.homogeneous(2, 1, 1.0, 1.0)
    cost, optimal = remest.enumerate_schedules(spec)
    assert cost == pytest.approx(1.0)
    assert {s.to_string() for s in optimal} == {"10", "01"}
    assert remest.game_tree_minimax(spec) == pytest.approx(1.0)
    assert remest.coordinator_value(spec) == pytest.approx(1.0)
    assert remest.coordinator_value(spec, full_prescriptions=True) == pytest.approx(1.0)
