#include "remest/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "remest/range_dp.hpp"
#include "remest/rangeprop.hpp"

namespace remest::oracle {

EnumerationResult enumerate_schedules(const ProblemSpec& spec) {
  const ProblemSpec checked = validate_spec(spec);
  const int T = checked.horizon;
  if (T > kEnumerationHorizonCap) {
    throw GuardError("enumerate_schedules: horizon " + std::to_string(T) + " exceeds cap " +
                     std::to_string(kEnumerationHorizonCap));
  }
  const std::uint32_t limit = std::uint32_t{1} << T;

  const auto schedule_of = [T](std::uint32_t mask) {
    Schedule s = Schedule::all_off(T);
    for (int i = 0; i < T; ++i) s.decisions[static_cast<std::size_t>(i)] = (mask >> i) & 1u;
    return s;
  };

  EnumerationResult out;
  out.min_cost = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    if (std::popcount(mask) > checked.budget) continue;
    const double cost = evaluate_schedule(schedule_of(mask), checked).max_radius;
    out.min_cost = std::min(out.min_cost, cost);
  }
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    if (std::popcount(mask) > checked.budget) continue;
    const Schedule s = schedule_of(mask);
    if (nearly_equal(evaluate_schedule(s, checked).max_radius, out.min_cost)) {
      out.optimal.push_back(s);
    }
  }
  return out;
}

namespace {

double normalize_zero(double x) { return x == 0.0 ? 0.0 : x; }

struct GamePath {
  double x;       // x_t
  int obs_label;  // interned id of y_{1:t-1}
  int energy;     // e_t
};

// Depth-first enumeration of sensor decision tables over reachable
// information nodes. Classes group paths sharing (x_t, y_{1:t-1}); one
// transmit bit is chosen per class, observation labels are re-interned after
// each stage, and the estimator contribution at stage t is the largest
// half-spread of x_t within a y_{1:t} group.
class GameTreeSearch {
 public:
  GameTreeSearch(const ProblemSpec& spec, const std::vector<std::array<double, 2>>& support)
      : spec_(spec) {
    lambda_eff_ = spec.lambda * spec.rotation(0, 0);
    support_.resize(static_cast<std::size_t>(spec.horizon));
    for (int t = 1; t <= spec.horizon; ++t) {
      auto& pts = support_[static_cast<std::size_t>(t) - 1];
      const auto& pair = support[static_cast<std::size_t>(t) - 1];
      pts = {normalize_zero(pair[0]), normalize_zero(pair[1])};
      std::sort(pts.begin(), pts.end());
      pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    }
  }

  GameTreeResult run() {
    best_ = std::numeric_limits<double>::infinity();
    completed_ = 0;
    std::vector<GamePath> roots;
    for (const double n1 : support_[0]) {
      roots.push_back(GamePath{normalize_zero(n1), 0, spec_.budget});
    }
    recurse(1, roots, 0.0);
    return GameTreeResult{best_, completed_};
  }

 private:
  void recurse(int t, const std::vector<GamePath>& paths, double running) {
    // Sensor information classes at stage t.
    std::map<std::pair<double, int>, std::vector<std::size_t>> classes;
    for (std::size_t i = 0; i < paths.size(); ++i) {
      classes[{paths[i].x, paths[i].obs_label}].push_back(i);
    }
    std::vector<const std::vector<std::size_t>*> members;
    std::vector<int> energy;
    members.reserve(classes.size());
    for (const auto& [key, idx] : classes) {
      members.push_back(&idx);
      energy.push_back(paths[idx.front()].energy);
    }
    const std::size_t n_classes = members.size();

    std::vector<std::uint8_t> decide(n_classes, 0);
    while (true) {
      apply(t, paths, members, decide, running);
      // Odometer over classes that still have energy to spend.
      std::size_t i = 0;
      for (; i < n_classes; ++i) {
        if (decide[i] == 0 && energy[i] > 0) {
          decide[i] = 1;
          std::fill(decide.begin(), decide.begin() + static_cast<std::ptrdiff_t>(i), 0);
          break;
        }
        decide[i] = 0;
      }
      if (i == n_classes) break;
    }
  }

  void apply(int t, const std::vector<GamePath>& paths,
             const std::vector<const std::vector<std::size_t>*>& members,
             const std::vector<std::uint8_t>& decide, double running) {
    const std::size_t count = paths.size();
    std::vector<std::uint8_t> u(count, 0);
    for (std::size_t c = 0; c < members.size(); ++c) {
      for (const std::size_t i : *members[c]) u[i] = decide[c];
    }

    // Re-intern y_{1:t} labels; eps is encoded as a missing value.
    std::map<std::tuple<int, bool, double>, int> intern;
    std::vector<int> labels(count);
    for (std::size_t i = 0; i < count; ++i) {
      const bool tx = u[i] != 0;
      const auto key = std::make_tuple(paths[i].obs_label, tx, tx ? paths[i].x : 0.0);
      const auto [it, inserted] = intern.try_emplace(key, static_cast<int>(intern.size()));
      labels[i] = it->second;
    }

    // Estimator best response at stage t: per y_{1:t} group, the minimax
    // center is the midpoint, so the worst error is the half-spread.
    std::map<int, std::pair<double, double>> spread;
    for (std::size_t i = 0; i < count; ++i) {
      auto [it, inserted] = spread.try_emplace(labels[i], std::make_pair(paths[i].x, paths[i].x));
      if (!inserted) {
        it->second.first = std::min(it->second.first, paths[i].x);
        it->second.second = std::max(it->second.second, paths[i].x);
      }
    }
    double stage = 0.0;
    for (const auto& [label, mm] : spread) {
      stage = std::max(stage, (mm.second - mm.first) / 2.0);
    }
    const double total = std::max(running, stage);
    if (total >= best_) return;  // cannot improve along this subtree

    if (t == spec_.horizon) {
      best_ = total;
      ++completed_;
      return;
    }

    std::vector<GamePath> next;
    next.reserve(count * 2);
    for (std::size_t i = 0; i < count; ++i) {
      const int e_next = paths[i].energy - (u[i] ? 1 : 0);
      for (const double n : support_[static_cast<std::size_t>(t)]) {
        next.push_back(GamePath{normalize_zero(lambda_eff_ * paths[i].x + n), labels[i], e_next});
      }
    }
    recurse(t + 1, next, total);
  }

  const ProblemSpec& spec_;
  double lambda_eff_ = 1.0;
  std::vector<std::vector<double>> support_;
  double best_ = 0.0;
  std::uint64_t completed_ = 0;
};

}  // namespace

GameTreeResult game_tree_minimax(const ProblemSpec& spec,
                                 const std::vector<std::array<double, 2>>& noise_support) {
  const ProblemSpec checked = validate_spec(spec);
  if (checked.dim != 1) {
    throw std::invalid_argument("game_tree_minimax: requires a 1-D source");
  }
  if (checked.horizon > 4 || checked.budget > 2) {
    throw GuardError("game_tree_minimax: instance too large (need T <= 4 and K <= 2)");
  }
  if (static_cast<int>(noise_support.size()) != checked.horizon) {
    throw std::invalid_argument("game_tree_minimax: need one support pair per time step");
  }
  return GameTreeSearch(checked, noise_support).run();
}

GameTreeResult game_tree_minimax(const ProblemSpec& spec) {
  std::vector<std::array<double, 2>> support;
  support.reserve(spec.noise_radii.size());
  for (const double a : spec.noise_radii) support.push_back({-a, a});
  return game_tree_minimax(spec, support);
}

namespace {

std::vector<int> canonical_range(std::vector<int> range) {
  std::sort(range.begin(), range.end());
  range.erase(std::unique(range.begin(), range.end()), range.end());
  return range;
}

class CentralizedEngine {
 public:
  explicit CentralizedEngine(const FiniteMinimaxProblem& p) : p_(p) {
    if (p.horizon < 1) throw std::invalid_argument("solve_centralized: horizon must be >= 1");
    if (!p.actions || !p.transition || !p.observation || !p.stage_cost) {
      throw std::invalid_argument("solve_centralized: all problem maps must be set");
    }
    if (static_cast<int>(p.noise.size()) != p.horizon - 1) {
      throw std::invalid_argument("solve_centralized: need noise symbols for each of the " +
                                  std::to_string(p.horizon - 1) + " transitions");
    }
    for (const auto& symbols : p.noise) {
      if (symbols.empty()) throw std::invalid_argument("solve_centralized: empty noise range");
    }
    if (p.initial_hidden_range.empty()) {
      throw std::invalid_argument("solve_centralized: initial hidden range must be nonempty");
    }
  }

  CentralizedSolution solve() {
    CentralizedSolution out;
    out.value = eval(1, canonical_range(p_.initial_hidden_range), p_.initial_observable);
    out.policy = std::move(policy_);
    out.info_states = memo_.size();
    return out;
  }

 private:
  double eval(int t, const std::vector<int>& range, int s_obs) {
    check_id(s_obs, p_.num_observable, "observable state");
    for (const int h : range) check_id(h, p_.num_hidden, "hidden state");
    InfoKey key{t, s_obs, range};
    if (const auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (memo_.size() >= p_.info_state_cap) {
      throw GuardError("solve_centralized: reachable information states exceed the cap");
    }

    const std::vector<int> acts = p_.actions(t, s_obs);
    if (acts.empty()) {
      throw std::invalid_argument("solve_centralized: empty action set at stage " +
                                  std::to_string(t));
    }

    double best = std::numeric_limits<double>::infinity();
    int best_action = acts.front();
    for (const int a : acts) {
      double candidate = 0.0;
      for (const int h : range) {
        candidate = std::max(candidate, p_.stage_cost(t, h, s_obs, a));
      }
      if (t < p_.horizon) {
        // Bucket continuations by the realized (observation, observable part);
        // each bucket is the next conditional range.
        std::map<std::pair<int, int>, std::vector<int>> buckets;
        for (const int h : range) {
          for (const int n : p_.noise[static_cast<std::size_t>(t) - 1]) {
            const auto [h2, s2] = p_.transition(t, h, s_obs, a, n);
            check_id(h2, p_.num_hidden, "transition hidden result");
            check_id(s2, p_.num_observable, "transition observable result");
            const int o = p_.observation(t, h, s_obs, a, n);
            check_id(o, p_.num_observations, "observation result");
            buckets[{o, s2}].push_back(h2);
          }
        }
        for (auto& [obs_key, next_range] : buckets) {
          candidate = std::max(candidate, eval(t + 1, canonical_range(std::move(next_range)),
                                               obs_key.second));
          if (candidate >= best) break;  // this action already lost
        }
      }
      if (candidate < best) {
        best = candidate;
        best_action = a;
      }
    }
    memo_.emplace(key, best);
    policy_.emplace(std::move(key), best_action);
    return best;
  }

  static void check_id(int id, int count, const char* what) {
    if (id < 0 || id >= count) {
      throw std::invalid_argument(std::string("solve_centralized: ") + what + " id " +
                                  std::to_string(id) + " outside declared space");
    }
  }

  const FiniteMinimaxProblem& p_;
  std::map<InfoKey, double> memo_;
  std::map<InfoKey, int> policy_;
};

// Value tables behind the coordinator encoding. Source values reachable at
// each time under two-point noise, candidate estimates (midpoints of value
// pairs, which include every subset's minimax center), and the noise values
// feeding each even stage.
struct CoordinatorData {
  int T = 1;
  int initial_energy = 0;
  double lambda_eff = 1.0;
  std::vector<double> values;                        // hidden id -> source value
  std::vector<std::vector<int>> ids_by_time;         // 1..T
  std::vector<std::vector<int>> position_by_time;    // 1..T: hidden id -> bit position or -1
  std::vector<std::vector<double>> estimates_by_time;  // 1..T
  std::vector<std::vector<double>> noise_values;     // per engine stage 1..2T-1
  std::map<double, int> id_of;

  double next_value(double x, double n) const { return normalize_zero(lambda_eff * x + n); }
};

}  // namespace

FiniteMinimaxProblem coordinator_problem(const ProblemSpec& spec, PrescriptionSet mode) {
  const ProblemSpec checked = validate_spec(spec);
  if (checked.dim != 1) {
    throw std::invalid_argument("coordinator_problem: requires a 1-D source");
  }
  const int T = checked.horizon;

  auto data = std::make_shared<CoordinatorData>();
  data->T = T;
  data->initial_energy = std::min(checked.budget, T);
  data->lambda_eff = checked.lambda * checked.rotation(0, 0);
  data->ids_by_time.resize(static_cast<std::size_t>(T) + 1);
  data->position_by_time.resize(static_cast<std::size_t>(T) + 1);
  data->estimates_by_time.resize(static_cast<std::size_t>(T) + 1);
  data->noise_values.resize(static_cast<std::size_t>(2 * T));

  const auto intern_value = [&data](double v) {
    v = normalize_zero(v);
    const auto [it, inserted] = data->id_of.try_emplace(v, static_cast<int>(data->values.size()));
    if (inserted) data->values.push_back(v);
    return it->second;
  };

  // Forward closure of reachable source values, one list per time.
  std::vector<double> current;
  {
    const double a1 = checked.radius(1);
    current = {normalize_zero(-a1), normalize_zero(a1)};
    std::sort(current.begin(), current.end());
    current.erase(std::unique(current.begin(), current.end()), current.end());
  }
  for (int t = 1; t <= T; ++t) {
    for (const double v : current) data->ids_by_time[static_cast<std::size_t>(t)].push_back(intern_value(v));
    if (t < T) {
      const double a = checked.radius(t + 1);
      std::vector<double> next;
      for (const double v : current) {
        next.push_back(data->next_value(v, -a));
        next.push_back(data->next_value(v, a));
      }
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      current = std::move(next);
    }
  }

  int max_stage_values = 0;
  for (int t = 1; t <= T; ++t) {
    const auto& ids = data->ids_by_time[static_cast<std::size_t>(t)];
    max_stage_values = std::max(max_stage_values, static_cast<int>(ids.size()));

    auto& pos = data->position_by_time[static_cast<std::size_t>(t)];
    pos.assign(data->values.size(), -1);
    for (std::size_t i = 0; i < ids.size(); ++i) pos[static_cast<std::size_t>(ids[i])] = static_cast<int>(i);

    auto& est = data->estimates_by_time[static_cast<std::size_t>(t)];
    for (std::size_t i = 0; i < ids.size(); ++i) {
      for (std::size_t j = i; j < ids.size(); ++j) {
        est.push_back((data->values[static_cast<std::size_t>(ids[i])] +
                       data->values[static_cast<std::size_t>(ids[j])]) /
                      2.0);
      }
    }
    std::sort(est.begin(), est.end());
    est.erase(std::unique(est.begin(), est.end()), est.end());
  }
  if (mode == PrescriptionSet::Full && max_stage_values > 12) {
    throw GuardError("coordinator_problem: full prescription set needs at most 12 reachable "
                     "values per stage, got " + std::to_string(max_stage_values));
  }

  // Positions in the per-time value lists are frozen now, so the pos vectors
  // above stay valid even though values keep interning during the closure.
  for (int stage = 1; stage < 2 * T; ++stage) {
    if (stage % 2 == 1) {
      data->noise_values[static_cast<std::size_t>(stage)] = {0.0};
    } else {
      const double a = checked.radius(stage / 2 + 1);
      std::vector<double> vals = {normalize_zero(-a), normalize_zero(a)};
      std::sort(vals.begin(), vals.end());
      vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
      data->noise_values[static_cast<std::size_t>(stage)] = std::move(vals);
    }
  }

  FiniteMinimaxProblem p;
  p.horizon = 2 * T;
  p.num_hidden = static_cast<int>(data->values.size());
  p.num_observable = data->initial_energy + 1;
  p.num_observations = 2 + static_cast<int>(data->values.size());
  p.initial_hidden_range = data->ids_by_time[1];
  p.initial_observable = data->initial_energy;

  p.noise.resize(static_cast<std::size_t>(2 * T) - 1);
  for (int stage = 1; stage < 2 * T; ++stage) {
    const auto& vals = data->noise_values[static_cast<std::size_t>(stage)];
    auto& symbols = p.noise[static_cast<std::size_t>(stage) - 1];
    symbols.resize(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) symbols[i] = static_cast<int>(i);
  }

  p.actions = [data, mode](int stage, int e) -> std::vector<int> {
    if (stage % 2 == 1) {
      const int t = (stage + 1) / 2;
      const int m = static_cast<int>(data->ids_by_time[static_cast<std::size_t>(t)].size());
      const int all_mask = (1 << m) - 1;
      if (e == 0) return {0};
      if (mode == PrescriptionSet::AllOrNone) {
        return all_mask == 0 ? std::vector<int>{0} : std::vector<int>{0, all_mask};
      }
      std::vector<int> masks(static_cast<std::size_t>(all_mask) + 1);
      for (int mask = 0; mask <= all_mask; ++mask) masks[static_cast<std::size_t>(mask)] = mask;
      return masks;
    }
    const int t = stage / 2;
    const auto& est = data->estimates_by_time[static_cast<std::size_t>(t)];
    std::vector<int> ids(est.size());
    for (std::size_t i = 0; i < est.size(); ++i) ids[i] = static_cast<int>(i);
    return ids;
  };

  p.transition = [data](int stage, int h, int e, int a, int n) -> std::pair<int, int> {
    if (stage % 2 == 1) {
      const int t = (stage + 1) / 2;
      const int pos = data->position_by_time[static_cast<std::size_t>(t)].at(static_cast<std::size_t>(h));
      if (pos < 0) {
        throw std::invalid_argument("coordinator_problem: hidden state not reachable at stage");
      }
      const int u = (a >> pos) & 1;
      return {h, e - u};
    }
    const double noise_value =
        data->noise_values[static_cast<std::size_t>(stage)].at(static_cast<std::size_t>(n));
    const double next = data->next_value(data->values.at(static_cast<std::size_t>(h)), noise_value);
    return {data->id_of.at(next), e};
  };

  p.observation = [data](int stage, int h, int /*e*/, int a, int /*n*/) -> int {
    if (stage % 2 == 1) {
      const int t = (stage + 1) / 2;
      const int pos = data->position_by_time[static_cast<std::size_t>(t)].at(static_cast<std::size_t>(h));
      const int u = (a >> pos) & 1;
      return u ? 2 + h : 1;
    }
    return 0;
  };

  p.stage_cost = [data](int stage, int h, int /*e*/, int a) -> double {
    if (stage % 2 == 1) return 0.0;
    const int t = stage / 2;
    const double estimate =
        data->estimates_by_time[static_cast<std::size_t>(t)].at(static_cast<std::size_t>(a));
    return std::abs(data->values.at(static_cast<std::size_t>(h)) - estimate);
  };

  return p;
}

CentralizedSolution solve_centralized(const FiniteMinimaxProblem& problem) {
  return CentralizedEngine(problem).solve();
}

double coordinator_value(const ProblemSpec& spec, PrescriptionSet mode) {
  return solve_centralized(coordinator_problem(spec, mode)).value;
}

}  // namespace remest::oracle
