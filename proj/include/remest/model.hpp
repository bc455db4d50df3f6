#ifndef REMEST_MODEL_HPP
#define REMEST_MODEL_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace remest {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Orthogonality tolerance for the rotation matrix (max-abs entry of AᵀA − I).
inline constexpr double kOrthoTol = 1e-9;
/// Relative tolerance for floating-point agreement checks.
inline constexpr double kRelTol = 1e-9;
/// Absolute floor used together with kRelTol.
inline constexpr double kAbsTol = 1e-12;

/// True when |a − b| ≤ max(kAbsTol, kRelTol·max(|a|,|b|)).
inline bool nearly_equal(double a, double b) {
  return std::abs(a - b) <= std::max(kAbsTol, kRelTol * std::max(std::abs(a), std::abs(b)));
}

/// Invalid problem data; `field()` names the offending ProblemSpec field.
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string field, const std::string& message)
      : std::invalid_argument(message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// A bounded-noise autoregressive source observed by a budget-constrained sensor.
///
/// The source is x_{t+1} = lambda·A·x_t + n_{t+1} with ‖n_t‖ ≤ noise_radii[t−1]
/// and x_1 = n_1, over times t = 1..horizon. The sensor may transmit the exact
/// state at most `budget` times.
struct ProblemSpec {
  int horizon = 1;                  // T ≥ 1
  int budget = 0;                   // K ≥ 0 transmission units
  std::vector<double> noise_radii;  // a_1..a_T, nonnegative
  double lambda = 1.0;
  Matrix rotation;                  // n×n orthogonal
  int dim = 1;

  /// Scalar spec with identity rotation and constant noise radius.
  static ProblemSpec homogeneous(int horizon, int budget, double a, double lambda, int dim = 1);

  /// Noise radius a_t, 1-based.
  double radius(int t) const { return noise_radii.at(static_cast<std::size_t>(t) - 1); }
};

/// Returns the spec unchanged if every invariant holds, else throws ValidationError.
ProblemSpec validate_spec(const ProblemSpec& spec);

/// Binary transmission sequence u_1..u_T.
struct Schedule {
  std::vector<std::uint8_t> decisions;

  int horizon() const { return static_cast<int>(decisions.size()); }
  int transmissions() const;
  /// Length matches the spec horizon and the number of ones is within budget.
  bool feasible_for(const ProblemSpec& spec) const;
  /// "01010" encoding, one character per time step.
  std::string to_string() const;
  static Schedule from_string(const std::string& bits);
  static Schedule all_off(int horizon);
  static Schedule all_on(int horizon);

  bool operator==(const Schedule&) const = default;
};

/// Source state, remaining energy and time index along a trajectory.
struct SystemState {
  Vector x;
  int energy = 0;
  int t = 1;
};

/// Channel output y_t: the transmitted state vector, or the no-transmission symbol.
class ChannelSymbol {
 public:
  static ChannelSymbol no_transmission() { return ChannelSymbol{}; }
  static ChannelSymbol observation(Vector x) {
    ChannelSymbol s;
    s.value_ = std::move(x);
    return s;
  }

  bool transmitted() const { return value_.has_value(); }
  /// The carried state vector; throws if this is the no-transmission symbol.
  const Vector& value() const;

 private:
  std::optional<Vector> value_;
};

/// One source step: lambda·A·x + noise. The caller guarantees ‖noise‖ ≤ a_{t+1}.
Vector source_step(const Vector& x, const Vector& noise, const ProblemSpec& spec);

/// Energy update max(e − u, 0); transmitting at zero energy is an error.
int energy_step(int energy, int u);

/// Channel map: the state itself when u = 1, the no-transmission symbol when u = 0.
ChannelSymbol channel(const Vector& x, int u);

}  // namespace remest

#endif  // REMEST_MODEL_HPP
