#include "remest/model.hpp"

#include <algorithm>

namespace remest {

ProblemSpec ProblemSpec::homogeneous(int horizon, int budget, double a, double lambda, int dim) {
  ProblemSpec spec;
  spec.horizon = horizon;
  spec.budget = budget;
  spec.noise_radii.assign(static_cast<std::size_t>(std::max(horizon, 0)), a);
  spec.lambda = lambda;
  spec.rotation = Matrix::Identity(dim, dim);
  spec.dim = dim;
  return spec;
}

ProblemSpec validate_spec(const ProblemSpec& spec) {
  if (spec.horizon < 1) {
    throw ValidationError("horizon", "horizon must be at least 1, got " + std::to_string(spec.horizon));
  }
  if (spec.budget < 0) {
    throw ValidationError("budget", "budget must be nonnegative, got " + std::to_string(spec.budget));
  }
  if (spec.dim < 1) {
    throw ValidationError("dim", "dim must be at least 1, got " + std::to_string(spec.dim));
  }
  if (static_cast<int>(spec.noise_radii.size()) != spec.horizon) {
    throw ValidationError("noise_radii", "noise_radii must have one entry per time step (expected " +
                                             std::to_string(spec.horizon) + ", got " +
                                             std::to_string(spec.noise_radii.size()) + ")");
  }
  for (std::size_t i = 0; i < spec.noise_radii.size(); ++i) {
    const double a = spec.noise_radii[i];
    if (!std::isfinite(a) || a < 0.0) {
      throw ValidationError("noise_radii", "noise radius a_" + std::to_string(i + 1) +
                                               " must be finite and nonnegative, got " + std::to_string(a));
    }
  }
  if (!std::isfinite(spec.lambda)) {
    throw ValidationError("lambda", "lambda must be finite");
  }
  if (spec.rotation.rows() != spec.dim || spec.rotation.cols() != spec.dim) {
    throw ValidationError("rotation", "rotation must be " + std::to_string(spec.dim) + "x" +
                                          std::to_string(spec.dim));
  }
  if (!spec.rotation.allFinite()) {
    throw ValidationError("rotation", "rotation entries must be finite");
  }
  const Matrix residual =
      spec.rotation.transpose() * spec.rotation - Matrix::Identity(spec.dim, spec.dim);
  const double defect = residual.cwiseAbs().maxCoeff();
  if (defect > kOrthoTol) {
    throw ValidationError("rotation", "rotation is not orthogonal (max |AᵀA - I| = " +
                                          std::to_string(defect) + ")");
  }
  return spec;
}

int Schedule::transmissions() const {
  int count = 0;
  for (const auto u : decisions) count += (u != 0);
  return count;
}

bool Schedule::feasible_for(const ProblemSpec& spec) const {
  return horizon() == spec.horizon && transmissions() <= spec.budget;
}

std::string Schedule::to_string() const {
  std::string out;
  out.reserve(decisions.size());
  for (const auto u : decisions) out.push_back(u ? '1' : '0');
  return out;
}

Schedule Schedule::from_string(const std::string& bits) {
  Schedule s;
  s.decisions.reserve(bits.size());
  for (const char c : bits) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("schedule string must contain only '0' and '1'");
    }
    s.decisions.push_back(c == '1' ? 1 : 0);
  }
  return s;
}

Schedule Schedule::all_off(int horizon) {
  Schedule s;
  s.decisions.assign(static_cast<std::size_t>(std::max(horizon, 0)), 0);
  return s;
}

Schedule Schedule::all_on(int horizon) {
  Schedule s;
  s.decisions.assign(static_cast<std::size_t>(std::max(horizon, 0)), 1);
  return s;
}

const Vector& ChannelSymbol::value() const {
  if (!value_.has_value()) {
    throw std::logic_error("no-transmission symbol carries no value");
  }
  return *value_;
}

Vector source_step(const Vector& x, const Vector& noise, const ProblemSpec& spec) {
  if (x.size() != spec.dim || noise.size() != spec.dim) {
    throw std::invalid_argument("source_step: vector dimension does not match spec.dim");
  }
  return spec.lambda * (spec.rotation * x) + noise;
}

int energy_step(int energy, int u) {
  if (u != 0 && u != 1) {
    throw std::invalid_argument("energy_step: u must be 0 or 1");
  }
  if (energy < 0) {
    throw std::invalid_argument("energy_step: energy must be nonnegative");
  }
  if (u == 1 && energy == 0) {
    throw std::invalid_argument("energy_step: cannot transmit with zero energy");
  }
  return std::max(energy - u, 0);
}

ChannelSymbol channel(const Vector& x, int u) {
  return u ? ChannelSymbol::observation(x) : ChannelSymbol::no_transmission();
}

}  // namespace remest
