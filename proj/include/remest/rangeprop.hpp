#ifndef REMEST_RANGEPROP_HPP
#define REMEST_RANGEPROP_HPP

#include <vector>

#include "remest/model.hpp"

namespace remest {

enum class RangeKind { PreTransmission, PostTransmission };

/// The estimator's conditional range, kept as a ball (center, radius).
/// Under the optimal strategies the range stays a ball, so the pair is an
/// exact representation, never an approximation.
struct RangeState {
  Vector center;
  double radius = 0.0;
  RangeKind kind = RangeKind::PostTransmission;
};

/// One-step range propagation to the pre-transmission range at time next_t:
/// center lambda·A·c, radius |lambda|·r + a_{next_t}.
RangeState propagate_range(const RangeState& post, const ProblemSpec& spec, int next_t);

/// Conditions a pre-transmission range on the received symbol: a transmission
/// collapses the range to the received point, no transmission keeps it.
RangeState condition_range(const RangeState& pre, const ChannelSymbol& y);

/// Per-time worst-case error radii of a schedule under the optimal estimator.
struct RadiusTrajectory {
  std::vector<double> radii;  // r_1..r_T, zero at transmission times
  double max_radius = 0.0;
  int argmax_t = 1;  // earliest time attaining max_radius
};

/// A closed-loop rollout: states, estimates, channel symbols, per-time errors
/// and the max-error cost.
struct Trajectory {
  std::vector<Vector> states;
  std::vector<Vector> estimates;
  std::vector<ChannelSymbol> symbols;
  std::vector<double> errors;
  double cost = 0.0;
};

/// Optimal estimate update: the received state on a transmission, else
/// lambda·A·(previous estimate). The recursion starts from the zero vector.
Vector estimator_step(const Vector& prev_center, const ChannelSymbol& y, const ProblemSpec& spec);

/// Worst-case radii of a feasible schedule: zero at transmission times, else
/// radius_at(t, tau) with tau the most recent transmission before t.
RadiusTrajectory evaluate_schedule(const Schedule& schedule, const ProblemSpec& spec);

/// A noise sequence with ‖n_t‖ = a_t that drives every per-time error to its
/// worst-case radius: each step pushes along the current error direction
/// (rotated by A and signed by lambda), or along the first coordinate axis
/// when the error is zero.
std::vector<Vector> adversarial_noise(const Schedule& schedule, const ProblemSpec& spec);

/// Rolls the closed loop (source, schedule, optimal estimator) under the given
/// admissible noise sequence.
Trajectory simulate(const Schedule& schedule, const std::vector<Vector>& noise,
                    const ProblemSpec& spec);

}  // namespace remest

#endif  // REMEST_RANGEPROP_HPP
