#include "remest/range_dp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace remest {

ValueTable::ValueTable(int horizon, int energy_cap)
    : horizon_(horizon), energy_cap_(energy_cap) {
  if (horizon < 1 || energy_cap < 0) {
    throw std::invalid_argument("ValueTable: horizon must be >= 1 and energy_cap >= 0");
  }
  const std::size_t states =
      static_cast<std::size_t>(horizon) * (horizon + 1) / 2 * (energy_cap + 1);
  values_.assign(states, 0.0);
  decisions_.assign(states, 0);
}

std::size_t ValueTable::index(int t, int tau, int e) const {
  if (t < 1 || t > horizon_ || tau < 0 || tau >= t || e < 0 || e > energy_cap_) {
    throw std::out_of_range("ValueTable: index (t,tau,e) out of range");
  }
  const std::size_t base = static_cast<std::size_t>(t - 1) * t / 2;  // sum of 1..t-1
  return (base + static_cast<std::size_t>(tau)) * (energy_cap_ + 1) + static_cast<std::size_t>(e);
}

double radius_at(int t, int tau, const ProblemSpec& spec) {
  if (t < 1 || t > spec.horizon || tau < 0 || tau >= t) {
    throw std::out_of_range("radius_at: need 0 <= tau < t <= horizon");
  }
  const double growth = std::abs(spec.lambda);
  double r = 0.0;
  for (int j = tau + 1; j <= t; ++j) {
    r = growth * r + spec.radius(j);
  }
  return r;
}

namespace {

// radii[t][tau] = radius_at(t, tau), filled by the one-step recursion.
std::vector<std::vector<double>> radius_table(const ProblemSpec& spec) {
  const int T = spec.horizon;
  const double growth = std::abs(spec.lambda);
  std::vector<std::vector<double>> radii(static_cast<std::size_t>(T) + 1);
  for (int t = 1; t <= T; ++t) radii[t].assign(static_cast<std::size_t>(t), 0.0);
  for (int tau = 0; tau < T; ++tau) {
    double r = 0.0;
    for (int t = tau + 1; t <= T; ++t) {
      r = growth * r + spec.radius(t);
      radii[t][tau] = r;
    }
  }
  return radii;
}

}  // namespace

SolveResult solve(const ProblemSpec& spec) {
  const ProblemSpec checked = validate_spec(spec);
  const int T = checked.horizon;
  const int cap = std::min(checked.budget, T);
  const auto radii = radius_table(checked);

  ValueTable table(T, cap);
  // Backward induction. States: (t, tau, e) with pre-transmission radius
  // radii[t][tau]. No-transmit pays the radius now and keeps tau; transmit
  // (e > 0) pays nothing and resets tau to t.
  for (int t = T; t >= 1; --t) {
    for (int tau = 0; tau < t; ++tau) {
      const double r = radii[t][tau];
      for (int e = 0; e <= cap; ++e) {
        double value = 0.0;
        std::uint8_t transmit = 0;
        if (t == T) {
          if (e > 0 && r > 0.0) {
            value = 0.0;
            transmit = 1;
          } else {
            value = r;
          }
        } else {
          const double stay = std::max(r, table.value(t + 1, tau, e));
          if (e > 0) {
            const double go = table.value(t + 1, t, e - 1);
            if (go < stay) {
              value = go;
              transmit = 1;
            } else {
              value = stay;
            }
          } else {
            value = stay;
          }
        }
        table.values_[table.index(t, tau, e)] = value;
        table.decisions_[table.index(t, tau, e)] = transmit;
      }
    }
  }

  SolveResult result{0.0, Schedule::all_off(T), std::move(table)};
  result.optimal_cost = result.table.value(1, 0, cap);

  if (checked.budget >= T) {
    // Degenerate budget: every step can transmit, worst case 0.
    result.schedule = Schedule::all_on(T);
    result.optimal_cost = 0.0;
    return result;
  }

  // Forward extraction. Comparing max(running, branch) instead of the raw
  // branch values leaves transmissions unused when they cannot lower the
  // overall worst case, which keeps the canonical schedule parsimonious.
  int tau = 0;
  int e = cap;
  double running = 0.0;
  for (int t = 1; t <= T; ++t) {
    const double r = radii[t][tau];
    const double stay_branch =
        (t == T) ? r : std::max(r, result.table.value(t + 1, tau, e));
    const double stay = std::max(running, stay_branch);
    bool transmit = false;
    if (e > 0) {
      const double go_branch = (t == T) ? 0.0 : result.table.value(t + 1, t, e - 1);
      const double go = std::max(running, go_branch);
      transmit = go < stay;
    }
    if (transmit) {
      result.schedule.decisions[static_cast<std::size_t>(t) - 1] = 1;
      tau = t;
      --e;
    } else {
      running = std::max(running, r);
    }
  }
  return result;
}

int spacing(int horizon, int budget) {
  if (horizon < 1 || budget < 0) {
    throw std::invalid_argument("spacing: need horizon >= 1 and budget >= 0");
  }
  return (horizon + 1 + budget) / (budget + 1);  // ceil((T+1)/(K+1))
}

double homogeneous_cost(int horizon, int budget, double a, double lambda) {
  if (horizon < 1) throw std::invalid_argument("homogeneous_cost: horizon must be >= 1");
  if (budget < 1) throw std::invalid_argument("homogeneous_cost: budget must be >= 1");
  if (a < 0.0) throw std::invalid_argument("homogeneous_cost: noise radius must be >= 0");
  const int delta = spacing(horizon, budget);
  const double growth = std::abs(lambda);
  if (growth == 1.0) {
    return static_cast<double>(delta - 1) * a;
  }
  return (std::pow(growth, delta - 1) - 1.0) / (growth - 1.0) * a;
}

Schedule uniform_schedule(int horizon, int budget) {
  if (horizon < 1 || budget < 1) {
    throw std::invalid_argument("uniform_schedule: need horizon >= 1 and budget >= 1");
  }
  const int delta = spacing(horizon, budget);
  Schedule s = Schedule::all_off(horizon);
  for (int m = 1; m <= budget; ++m) {
    const long long t = static_cast<long long>(m) * delta;
    if (t > horizon) break;
    s.decisions[static_cast<std::size_t>(t) - 1] = 1;
  }
  return s;
}

std::optional<int> min_budget(int horizon, double a, double lambda, double epsilon) {
  if (horizon < 1) throw std::invalid_argument("min_budget: horizon must be >= 1");
  if (epsilon < 0.0) throw std::invalid_argument("min_budget: epsilon must be >= 0");
  const int max_budget = std::max(1, horizon - 1);
  for (int k = 1; k <= max_budget; ++k) {
    if (homogeneous_cost(horizon, k, a, lambda) <= epsilon) return k;
  }
  return std::nullopt;
}

}  // namespace remest
