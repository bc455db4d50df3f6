#ifndef REMEST_ORACLE_HPP
#define REMEST_ORACLE_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "remest/model.hpp"

namespace remest::oracle {

/// Thrown when an instance exceeds a brute-force size guard.
class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Maximum horizon accepted by enumerate_schedules (2^T sequences).
inline constexpr int kEnumerationHorizonCap = 20;

struct EnumerationResult {
  double min_cost = 0.0;
  std::vector<Schedule> optimal;  // every cost-minimal feasible schedule
};

/// Evaluates every binary sequence with at most K ones and returns the
/// minimum worst-case cost together with the full argmin set.
EnumerationResult enumerate_schedules(const ProblemSpec& spec);

struct GameTreeResult {
  double value = 0.0;
  /// Strategies enumerated to completion (pruned branches not included).
  std::uint64_t strategies_completed = 0;
};

/// Exact closed-loop minimax for a 1-D source with per-stage two-point noise
/// support. Enumerates every sensor strategy measurable with respect to
/// (x_t, y_{1:t−1}, e_t) over reachable histories; the estimator best-responds
/// with the minimax center of the conditional range given y_{1:t}.
/// Guards: dim = 1, T ≤ 4, K ≤ 2.
GameTreeResult game_tree_minimax(const ProblemSpec& spec,
                                 const std::vector<std::array<double, 2>>& noise_support);

/// Two-point support {−a_t, +a_t} taken from the spec radii.
GameTreeResult game_tree_minimax(const ProblemSpec& spec);

/// A finite-space minimax control problem with hidden and observable state
/// parts. States, observations, actions and noise symbols are integer ids;
/// all maps must be total on the declared domains. Stage t runs 1..horizon;
/// noise[t−1] feeds the transition out of stage t.
struct FiniteMinimaxProblem {
  int horizon = 1;
  int num_hidden = 1;
  int num_observable = 1;
  int num_observations = 1;

  /// Feasible action ids at stage t in observable state s_obs.
  std::function<std::vector<int>(int t, int s_obs)> actions;
  /// noise[t−1]: noise symbol ids driving the stage t → t+1 transition.
  std::vector<std::vector<int>> noise;
  /// (hidden', observable') reached from full state (s_hid, s_obs) under (a, n).
  std::function<std::pair<int, int>(int t, int s_hid, int s_obs, int a, int n)> transition;
  /// Observation id emitted by the stage t → t+1 transition.
  std::function<int(int t, int s_hid, int s_obs, int a, int n)> observation;
  /// Instantaneous cost at stage t.
  std::function<double(int t, int s_hid, int s_obs, int a)> stage_cost;

  std::vector<int> initial_hidden_range;
  int initial_observable = 0;

  /// Abort when the number of distinct reachable information states passes this.
  std::size_t info_state_cap = 200000;
};

/// Conditional range of the hidden state plus the observable state.
struct InfoState {
  std::vector<int> hidden_range;  // sorted, deduplicated
  int s_obs = 0;
};

using InfoKey = std::tuple<int, int, std::vector<int>>;  // (t, s_obs, range)

struct CentralizedSolution {
  double value = 0.0;
  /// Minimizing action per visited information state.
  std::map<InfoKey, int> policy;
  std::size_t info_states = 0;
};

/// Backward induction over reachable information states (conditional range of
/// the hidden part, observable part). The next range is computed by filtering
/// all (hidden, noise) continuations for consistency with the realized
/// observation and observable state.
CentralizedSolution solve_centralized(const FiniteMinimaxProblem& problem);

/// Prescription families available to the coordinator encoding.
enum class PrescriptionSet {
  AllOrNone,  // always-transmit and never-transmit only
  Full,       // every map from the stage-reachable source values to {0,1}
};

/// Encodes the two-point-noise remote estimation instance as a 2T-stage
/// FiniteMinimaxProblem from the estimator's point of view: odd stages pick a
/// prescription, even stages pick an estimate from the finite set of minimax
/// centers of subsets of the stage-reachable source values. Requires dim = 1.
FiniteMinimaxProblem coordinator_problem(const ProblemSpec& spec, PrescriptionSet mode);

/// Convenience wrapper: solve_centralized(coordinator_problem(spec, mode)).value.
double coordinator_value(const ProblemSpec& spec, PrescriptionSet mode);

}  // namespace remest::oracle

#endif  // REMEST_ORACLE_HPP
