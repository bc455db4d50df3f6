"""Worst-case transmission scheduling for remote estimation of a bounded-noise
autoregressive source.

The heavy lifting lives in the compiled extension ``remest._core``; this
package re-exports its public surface.
"""

from ._core import (
    ChannelSymbol,
    GuardError,
    ProblemSpec,
    RadiusTrajectory,
    Schedule,
    SolveResult,
    Trajectory,
    ValidationError,
    ValueTable,
    adversarial_noise,
    coordinator_value,
    enumerate_schedules,
    evaluate_schedule,
    game_tree_minimax,
    homogeneous_cost,
    min_budget,
    radius_at,
    simulate,
    solve,
    spacing,
    uniform_schedule,
    validate_spec,
)

__all__ = [
    "ChannelSymbol",
    "GuardError",
    "ProblemSpec",
    "RadiusTrajectory",
    "Schedule",
    "SolveResult",
    "Trajectory",
    "ValidationError",
    "ValueTable",
    "adversarial_noise",
    "coordinator_value",
    "enumerate_schedules",
    "evaluate_schedule",
    "game_tree_minimax",
    "homogeneous_cost",
    "min_budget",
    "radius_at",
    "simulate",
    "solve",
    "spacing",
    "uniform_schedule",
    "validate_spec",
]

__version__ = "0.1.0"
