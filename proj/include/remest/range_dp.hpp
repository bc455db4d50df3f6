#ifndef REMEST_RANGE_DP_HPP
#define REMEST_RANGE_DP_HPP

#include <optional>
#include <vector>

#include "remest/model.hpp"

namespace remest {

struct SolveResult;
SolveResult solve(const ProblemSpec& spec);  // declared again below with docs

/// Backward-induction values of the reduced dynamic program, indexed by
/// (t, tau, e): time t in 1..T, last-transmission epoch tau in 0..t−1
/// (0 = never transmitted) and remaining energy e in 0..energy_cap.
///
/// The radius of the estimator's conditional range at (t, tau) is exactly
/// radius_at(t, tau), so this finite index set covers every reachable state
/// without discretizing the radius axis.
class ValueTable {
 public:
  ValueTable(int horizon, int energy_cap);

  double value(int t, int tau, int e) const { return values_[index(t, tau, e)]; }
  /// Stored per-state minimizer, ties broken toward no-transmit.
  bool transmit_decision(int t, int tau, int e) const { return decisions_[index(t, tau, e)] != 0; }

  int horizon() const { return horizon_; }
  int energy_cap() const { return energy_cap_; }

 private:
  friend SolveResult solve(const ProblemSpec& spec);

  std::size_t index(int t, int tau, int e) const;

  int horizon_;
  int energy_cap_;
  std::vector<double> values_;
  std::vector<std::uint8_t> decisions_;
};

struct SolveResult {
  double optimal_cost = 0.0;
  Schedule schedule;  // canonical optimal open-loop schedule
  ValueTable table;
};

/// Solves the reduced dynamic program by backward induction and extracts a
/// canonical optimal schedule. The forward extraction compares branches
/// through the running maximum of already-incurred stage costs and prefers
/// no-transmit on ties, so transmissions that cannot lower the overall worst
/// case are left unused.
SolveResult solve(const ProblemSpec& spec);

/// Worst-case error radius at time t when the last transmission happened at
/// tau (tau = 0: never): sum_{j=tau+1..t} |lambda|^{t−j} a_j.
double radius_at(int t, int tau, const ProblemSpec& spec);

/// Uniform transmission spacing ceil((T+1)/(K+1)).
int spacing(int horizon, int budget);

/// Optimal worst-case cost under homogeneous noise radius a:
/// (|lambda|^(Δ−1) − 1)/(|lambda| − 1)·a, or (Δ−1)·a when |lambda| = 1.
double homogeneous_cost(int horizon, int budget, double a, double lambda);

/// Transmit at multiples of the uniform spacing that fall inside the horizon.
Schedule uniform_schedule(int horizon, int budget);

/// Smallest budget K in 1..max(1, T−1) whose homogeneous cost is at most
/// epsilon; nullopt when no such budget exists.
std::optional<int> min_budget(int horizon, double a, double lambda, double epsilon);

}  // namespace remest

#endif  // REMEST_RANGE_DP_HPP
