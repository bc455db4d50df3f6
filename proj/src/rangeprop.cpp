#include "remest/rangeprop.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "remest/range_dp.hpp"

namespace remest {

namespace {

void require_feasible(const Schedule& schedule, const ProblemSpec& spec) {
  if (schedule.horizon() != spec.horizon) {
    throw std::invalid_argument("schedule length does not match spec horizon");
  }
  if (schedule.transmissions() > spec.budget) {
    throw std::invalid_argument("schedule exceeds the transmission budget");
  }
}

Vector canonical_unit(int dim) {
  Vector e = Vector::Zero(dim);
  e(0) = 1.0;
  return e;
}

double sign_or_one(double x) { return x < 0.0 ? -1.0 : 1.0; }

}  // namespace

RangeState propagate_range(const RangeState& post, const ProblemSpec& spec, int next_t) {
  if (next_t < 2 || next_t > spec.horizon) {
    throw std::out_of_range("propagate_range: next_t out of range");
  }
  RangeState pre;
  pre.center = spec.lambda * (spec.rotation * post.center);
  pre.radius = std::abs(spec.lambda) * post.radius + spec.radius(next_t);
  pre.kind = RangeKind::PreTransmission;
  return pre;
}

RangeState condition_range(const RangeState& pre, const ChannelSymbol& y) {
  RangeState post = pre;
  post.kind = RangeKind::PostTransmission;
  if (y.transmitted()) {
    post.center = y.value();
    post.radius = 0.0;
  }
  return post;
}

Vector estimator_step(const Vector& prev_center, const ChannelSymbol& y, const ProblemSpec& spec) {
  if (y.transmitted()) {
    if (y.value().size() != spec.dim) {
      throw std::invalid_argument("estimator_step: received vector dimension mismatch");
    }
    return y.value();
  }
  if (prev_center.size() != spec.dim) {
    throw std::invalid_argument("estimator_step: center dimension mismatch");
  }
  return spec.lambda * (spec.rotation * prev_center);
}

RadiusTrajectory evaluate_schedule(const Schedule& schedule, const ProblemSpec& spec) {
  require_feasible(schedule, spec);
  RadiusTrajectory out;
  out.radii.assign(static_cast<std::size_t>(spec.horizon), 0.0);
  int tau = 0;
  for (int t = 1; t <= spec.horizon; ++t) {
    if (schedule.decisions[static_cast<std::size_t>(t) - 1]) {
      out.radii[static_cast<std::size_t>(t) - 1] = 0.0;
      tau = t;
    } else {
      out.radii[static_cast<std::size_t>(t) - 1] = radius_at(t, tau, spec);
    }
  }
  out.max_radius = 0.0;
  out.argmax_t = 1;
  for (int t = 1; t <= spec.horizon; ++t) {
    const double r = out.radii[static_cast<std::size_t>(t) - 1];
    if (r > out.max_radius) {
      out.max_radius = r;
      out.argmax_t = t;
    }
  }
  return out;
}

std::vector<Vector> adversarial_noise(const Schedule& schedule, const ProblemSpec& spec) {
  require_feasible(schedule, spec);
  const int n = spec.dim;
  const double sgn = sign_or_one(spec.lambda);

  std::vector<Vector> noise;
  noise.reserve(static_cast<std::size_t>(spec.horizon));

  // Walk the closed loop, steering each noise step along the current error
  // direction so the error norm follows the radius recursion exactly.
  Vector error = Vector::Zero(n);  // x_t − x̃_t after conditioning on y_t
  for (int t = 1; t <= spec.horizon; ++t) {
    Vector direction = error.norm() > 0.0 ? Vector(error / error.norm()) : canonical_unit(n);
    Vector n_t = spec.radius(t) * sgn * (spec.rotation * direction);
    noise.push_back(n_t);
    // Error advances to lambda·A·e + n_t, then collapses on a transmission.
    error = spec.lambda * (spec.rotation * error) + n_t;
    if (schedule.decisions[static_cast<std::size_t>(t) - 1]) {
      error = Vector::Zero(n);
    }
  }
  return noise;
}

Trajectory simulate(const Schedule& schedule, const std::vector<Vector>& noise,
                    const ProblemSpec& spec) {
  require_feasible(schedule, spec);
  if (static_cast<int>(noise.size()) != spec.horizon) {
    throw std::invalid_argument("simulate: need one noise vector per time step");
  }
  for (int t = 1; t <= spec.horizon; ++t) {
    const Vector& n_t = noise[static_cast<std::size_t>(t) - 1];
    if (n_t.size() != spec.dim) {
      throw std::invalid_argument("simulate: noise dimension mismatch at t=" + std::to_string(t));
    }
    const double bound = spec.radius(t);
    if (n_t.norm() > bound + std::max(kAbsTol, kRelTol * bound)) {
      throw std::invalid_argument("simulate: noise norm exceeds a_t at t=" + std::to_string(t));
    }
  }

  Trajectory traj;
  traj.states.reserve(static_cast<std::size_t>(spec.horizon));
  traj.estimates.reserve(static_cast<std::size_t>(spec.horizon));
  traj.symbols.reserve(static_cast<std::size_t>(spec.horizon));
  traj.errors.reserve(static_cast<std::size_t>(spec.horizon));

  Vector x = noise[0];  // x_1 = n_1
  Vector center = Vector::Zero(spec.dim);
  traj.cost = 0.0;
  for (int t = 1; t <= spec.horizon; ++t) {
    const int u = schedule.decisions[static_cast<std::size_t>(t) - 1] ? 1 : 0;
    const ChannelSymbol y = channel(x, u);
    center = estimator_step(center, y, spec);
    const double err = (x - center).norm();
    traj.states.push_back(x);
    traj.estimates.push_back(center);
    traj.symbols.push_back(y);
    traj.errors.push_back(err);
    traj.cost = std::max(traj.cost, err);
    if (t < spec.horizon) {
      x = source_step(x, noise[static_cast<std::size_t>(t)], spec);
    }
  }
  return traj;
}

}  // namespace remest
