#include "remest/cli.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "remest/oracle.hpp"
#include "remest/range_dp.hpp"
#include "remest/rangeprop.hpp"

namespace remest::cli {

using nlohmann::json;

OutputFormat parse_format(const std::string& name) {
  if (name == "plain") return OutputFormat::Plain;
  if (name == "csv") return OutputFormat::Csv;
  throw std::invalid_argument("format must be 'plain' or 'csv', got '" + name + "'");
}

std::string format_double(double value) {
  if (value == 0.0) return "0";
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf.data(), ptr);
}

namespace {

constexpr const char* kNoTransmissionLiteral = "eps";

int require_integer(const json& v, const std::string& key) {
  if (v.is_number_integer()) return v.get<int>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (d == std::floor(d)) return static_cast<int>(d);
  }
  throw std::invalid_argument("config key '" + key + "' must be an integer");
}

double require_number(const json& v, const std::string& key) {
  if (!v.is_number()) throw std::invalid_argument("config key '" + key + "' must be a number");
  return v.get<double>();
}

Matrix parse_rotation(const json& v, int dim) {
  if (v.is_string()) {
    if (v.get<std::string>() == "identity") return Matrix::Identity(dim, dim);
    throw std::invalid_argument("config key 'rotation' must be \"identity\" or a matrix");
  }
  if (!v.is_array() || static_cast<int>(v.size()) != dim) {
    throw std::invalid_argument("config key 'rotation' must be a " + std::to_string(dim) + "x" +
                                std::to_string(dim) + " matrix");
  }
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const json& row = v[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      throw std::invalid_argument("config key 'rotation' must be a " + std::to_string(dim) + "x" +
                                  std::to_string(dim) + " matrix");
    }
    for (int j = 0; j < dim; ++j) {
      m(i, j) = require_number(row[static_cast<std::size_t>(j)], "rotation");
    }
  }
  return m;
}

NoiseMode parse_noise_mode(const std::string& name) {
  if (name == "adversarial") return NoiseMode::Adversarial;
  if (name == "seeded-random") return NoiseMode::SeededRandom;
  if (name == "from-file") return NoiseMode::FromFile;
  throw std::invalid_argument(
      "noise_mode must be 'adversarial', 'seeded-random' or 'from-file', got '" + name + "'");
}

OutputFormat effective_format(const RunConfig& config, const std::string& command) {
  if (config.format_override) return *config.format_override;
  return (command == "sweep" || command == "simulate") ? OutputFormat::Csv : OutputFormat::Plain;
}

std::string vector_cell(const Vector& v, char sep) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i > 0) out.push_back(sep);
    out += format_double(v(i));
  }
  return out;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& err) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + err.what());
  }
  if (!root.is_object()) throw std::invalid_argument("config must be a JSON object");

  RunConfig config;
  if (!root.contains("T")) throw std::invalid_argument("config key 'T' is required");
  if (!root.contains("K")) throw std::invalid_argument("config key 'K' is required");
  config.spec.horizon = require_integer(root["T"], "T");
  config.spec.budget = require_integer(root["K"], "K");
  config.spec.lambda = root.contains("lambda") ? require_number(root["lambda"], "lambda") : 1.0;
  config.spec.dim = root.contains("dim") ? require_integer(root["dim"], "dim") : 1;
  if (config.spec.dim < 1) throw std::invalid_argument("config key 'dim' must be at least 1");
  config.spec.rotation = root.contains("rotation")
                             ? parse_rotation(root["rotation"], config.spec.dim)
                             : Matrix::Identity(config.spec.dim, config.spec.dim);

  const bool has_a = root.contains("a");
  const bool has_radii = root.contains("noise_radii");
  if (has_a == has_radii) {
    throw std::invalid_argument("config must set exactly one of 'a' and 'noise_radii'");
  }
  if (has_a) {
    config.homogeneous = true;
    config.a = require_number(root["a"], "a");
    config.spec.noise_radii.assign(static_cast<std::size_t>(std::max(config.spec.horizon, 0)),
                                   config.a);
  } else {
    const json& radii = root["noise_radii"];
    if (!radii.is_array()) throw std::invalid_argument("config key 'noise_radii' must be an array");
    for (const auto& v : radii) config.spec.noise_radii.push_back(require_number(v, "noise_radii"));
  }

  if (root.contains("epsilon")) config.epsilon = require_number(root["epsilon"], "epsilon");
  if (root.contains("seed")) {
    if (!root["seed"].is_number_unsigned() && !root["seed"].is_number_integer()) {
      throw std::invalid_argument("config key 'seed' must be a nonnegative integer");
    }
    config.seed = root["seed"].get<std::uint64_t>();
  }
  if (root.contains("out")) config.out_path = root["out"].get<std::string>();
  if (root.contains("format")) config.format_override = parse_format(root["format"].get<std::string>());
  if (root.contains("noise_mode")) config.noise_mode = parse_noise_mode(root["noise_mode"].get<std::string>());
  if (root.contains("noise_file")) config.noise_file = root["noise_file"].get<std::string>();

  if (root.contains("schedule")) {
    const json& sched = root["schedule"];
    if (sched.is_string()) {
      const std::string name = sched.get<std::string>();
      if (name == "optimal") {
        config.schedule_choice = std::monostate{};
      } else if (name == "uniform") {
        config.schedule_choice = name;
      } else {
        config.schedule_choice = Schedule::from_string(name);
      }
    } else if (sched.is_array()) {
      Schedule s;
      for (const auto& bit : sched) {
        const int b = require_integer(bit, "schedule");
        if (b != 0 && b != 1) throw std::invalid_argument("schedule entries must be 0 or 1");
        s.decisions.push_back(static_cast<std::uint8_t>(b));
      }
      config.schedule_choice = std::move(s);
    } else {
      throw std::invalid_argument("config key 'schedule' must be a string or an array of bits");
    }
  }

  if (root.contains("sweep")) {
    const json& sweep = root["sweep"];
    if (!sweep.is_object()) throw std::invalid_argument("config key 'sweep' must be an object");
    for (const auto& [axis, values] : sweep.items()) {
      if (axis != "T" && axis != "K" && axis != "lambda" && axis != "epsilon") {
        throw std::invalid_argument("sweep axis must be one of T, K, lambda, epsilon; got '" +
                                    axis + "'");
      }
      if (!values.is_array() || values.empty()) {
        throw std::invalid_argument("sweep axis '" + axis + "' must be a nonempty array");
      }
      std::vector<double> axis_values;
      for (const auto& v : values) axis_values.push_back(require_number(v, "sweep." + axis));
      config.sweep.emplace(axis, std::move(axis_values));
    }
  }
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

int cmd_solve(const RunConfig& config, std::ostream& out) {
  const ProblemSpec spec = validate_spec(config.spec);
  const SolveResult result = solve(spec);
  const RadiusTrajectory radii = evaluate_schedule(result.schedule, spec);

  if (effective_format(config, "solve") == OutputFormat::Csv) {
    out << "t,u,radius\n";
    for (int t = 1; t <= spec.horizon; ++t) {
      out << t << ',' << int(result.schedule.decisions[static_cast<std::size_t>(t) - 1]) << ','
          << format_double(radii.radii[static_cast<std::size_t>(t) - 1]) << '\n';
    }
  } else {
    out << "optimal_cost = " << format_double(result.optimal_cost) << '\n';
    out << "schedule = " << result.schedule.to_string() << '\n';
    out << "radii = ";
    for (int t = 1; t <= spec.horizon; ++t) {
      if (t > 1) out << ',';
      out << format_double(radii.radii[static_cast<std::size_t>(t) - 1]);
    }
    out << '\n';
  }
  return 0;
}

int cmd_schedule(const RunConfig& config, std::ostream& out) {
  const ProblemSpec spec = validate_spec(config.spec);
  if (!config.homogeneous) {
    throw std::invalid_argument("schedule requires homogeneous noise (scalar 'a')");
  }
  if (spec.budget < 1) {
    throw std::invalid_argument("schedule requires a budget of at least 1");
  }
  const int delta = spacing(spec.horizon, spec.budget);
  const double cost = homogeneous_cost(spec.horizon, spec.budget, config.a, spec.lambda);
  const Schedule schedule = uniform_schedule(spec.horizon, spec.budget);

  if (effective_format(config, "schedule") == OutputFormat::Csv) {
    out << "T,K,lambda,a,Delta,cost,schedule\n";
    out << spec.horizon << ',' << spec.budget << ',' << format_double(spec.lambda) << ','
        << format_double(config.a) << ',' << delta << ',' << format_double(cost) << ','
        << schedule.to_string() << '\n';
  } else {
    out << "Delta = " << delta << '\n';
    out << "cost = " << format_double(cost) << '\n';
    out << "schedule = " << schedule.to_string() << '\n';
  }
  return 0;
}

namespace {

struct Check {
  std::string name;
  std::string status;  // PASS, FAIL or SKIPPED
  std::string detail;
};

Check check_enumeration(const ProblemSpec& spec, double dp_cost) {
  if (spec.horizon > oracle::kEnumerationHorizonCap) {
    return {"enumeration", "SKIPPED",
            "horizon " + std::to_string(spec.horizon) + " exceeds cap " +
                std::to_string(oracle::kEnumerationHorizonCap)};
  }
  const auto result = oracle::enumerate_schedules(spec);
  if (nearly_equal(result.min_cost, dp_cost)) {
    return {"enumeration", "PASS", "cost = " + format_double(result.min_cost)};
  }
  return {"enumeration", "FAIL",
          "enumeration " + format_double(result.min_cost) + " vs dp " + format_double(dp_cost)};
}

Check check_closed_form(const RunConfig& config, const ProblemSpec& spec, double dp_cost) {
  if (!config.homogeneous) return {"closed_form", "SKIPPED", "heterogeneous noise radii"};
  if (spec.budget < 1) return {"closed_form", "SKIPPED", "budget is 0"};
  const double formula = homogeneous_cost(spec.horizon, spec.budget, config.a, spec.lambda);
  const double uniform_cost =
      evaluate_schedule(uniform_schedule(spec.horizon, spec.budget), spec).max_radius;
  if (nearly_equal(formula, dp_cost) && nearly_equal(uniform_cost, formula)) {
    return {"closed_form", "PASS", "cost = " + format_double(formula)};
  }
  return {"closed_form", "FAIL",
          "formula " + format_double(formula) + ", uniform " + format_double(uniform_cost) +
              ", dp " + format_double(dp_cost)};
}

Check check_centralized(const ProblemSpec& spec, double dp_cost) {
  if (spec.dim != 1) return {"centralized", "SKIPPED", "requires a 1-D source"};
  if (spec.horizon > 4 || spec.budget > 3) {
    return {"centralized", "SKIPPED", "instance too large (need T <= 4 and K <= 3)"};
  }
  const double value = oracle::coordinator_value(spec, oracle::PrescriptionSet::AllOrNone);
  if (nearly_equal(value, dp_cost)) {
    return {"centralized", "PASS", "value = " + format_double(value)};
  }
  return {"centralized", "FAIL",
          "centralized " + format_double(value) + " vs dp " + format_double(dp_cost)};
}

Check check_game_tree(const ProblemSpec& spec, double dp_cost) {
  if (spec.dim != 1) return {"game_tree", "SKIPPED", "requires a 1-D source"};
  const bool small_enough =
      spec.budget <= 2 && (spec.horizon <= 3 || (spec.horizon == 4 && spec.budget == 1));
  if (!small_enough) {
    return {"game_tree", "SKIPPED", "instance too large (need T <= 3, or T = 4 with K = 1)"};
  }
  const double value = oracle::game_tree_minimax(spec).value;
  if (nearly_equal(value, dp_cost)) {
    return {"game_tree", "PASS", "value = " + format_double(value)};
  }
  return {"game_tree", "FAIL",
          "game tree " + format_double(value) + " vs dp " + format_double(dp_cost)};
}

}  // namespace

int cmd_verify(const RunConfig& config, std::ostream& out) {
  const ProblemSpec spec = validate_spec(config.spec);
  const double dp_cost = solve(spec).optimal_cost;

  std::vector<Check> checks;
  checks.push_back(check_enumeration(spec, dp_cost));
  checks.push_back(check_closed_form(config, spec, dp_cost));
  checks.push_back(check_centralized(spec, dp_cost));
  checks.push_back(check_game_tree(spec, dp_cost));

  bool failed = false;
  const bool csv = effective_format(config, "verify") == OutputFormat::Csv;
  if (csv) out << "check,status,detail\n";
  for (const auto& check : checks) {
    failed = failed || check.status == "FAIL";
    if (csv) {
      out << check.name << ',' << check.status << ',' << '"' << check.detail << '"' << '\n';
    } else {
      out << check.name << ": " << check.status << " (" << check.detail << ")\n";
    }
  }
  if (csv) {
    out << "result," << (failed ? "FAIL" : "PASS") << ",\"optimal_cost = "
        << format_double(dp_cost) << "\"\n";
  } else {
    out << "result: " << (failed ? "FAIL" : "PASS")
        << " (optimal_cost = " << format_double(dp_cost) << ")\n";
  }
  return failed ? 2 : 0;
}

int cmd_sweep(const RunConfig& config, std::ostream& out) {
  if (!config.homogeneous) {
    throw std::invalid_argument("sweep requires homogeneous noise (scalar 'a')");
  }
  if (config.sweep.empty()) {
    throw std::invalid_argument("sweep requires at least one axis (T, K, lambda or epsilon)");
  }

  const auto axis_values = [&](const std::string& axis,
                               std::vector<double> fallback) -> std::vector<double> {
    const auto it = config.sweep.find(axis);
    return it == config.sweep.end() ? fallback : it->second;
  };
  const std::vector<double> horizons = axis_values("T", {double(config.spec.horizon)});
  const std::vector<double> budgets = axis_values("K", {double(config.spec.budget)});
  const std::vector<double> lambdas = axis_values("lambda", {config.spec.lambda});
  const bool with_epsilon = config.sweep.contains("epsilon") || config.epsilon.has_value();
  std::vector<double> epsilons = {0.0};
  if (config.sweep.contains("epsilon")) {
    epsilons = config.sweep.at("epsilon");
  } else if (config.epsilon) {
    epsilons = {*config.epsilon};
  }

  out << "T,K,lambda,a,cost,Delta";
  if (with_epsilon) out << ",epsilon,K_star";
  out << '\n';

  for (const double horizon_value : horizons) {
    for (const double budget_value : budgets) {
      for (const double lambda : lambdas) {
        for (const double epsilon : epsilons) {
          const int T = static_cast<int>(horizon_value);
          const int K = static_cast<int>(budget_value);
          if (T != horizon_value || K != budget_value) {
            throw std::invalid_argument("sweep values for T and K must be integers");
          }
          const ProblemSpec spec =
              validate_spec(ProblemSpec::homogeneous(T, K, config.a, lambda, config.spec.dim));
          const double cost = solve(spec).optimal_cost;
          out << T << ',' << K << ',' << format_double(lambda) << ',' << format_double(config.a)
              << ',' << format_double(cost) << ',' << spacing(T, K);
          if (with_epsilon) {
            const auto k_star = min_budget(T, config.a, lambda, epsilon);
            out << ',' << format_double(epsilon) << ','
                << (k_star ? std::to_string(*k_star) : std::string("infeasible"));
          }
          out << '\n';
        }
      }
    }
  }
  return 0;
}

namespace {

// One CSV row of dim noise components; nullopt when the row does not parse
// (used to tolerate a single header row).
std::optional<Vector> parse_noise_row(const std::string& line, int dim) {
  Vector row(dim);
  std::size_t start = 0;
  for (int j = 0; j < dim; ++j) {
    const std::size_t end = line.find(',', start);
    const std::string_view cell(line.data() + start,
                                (end == std::string::npos ? line.size() : end) - start);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc{} || ptr != cell.data() + cell.size()) return std::nullopt;
    row(j) = value;
    if (end == std::string::npos && j + 1 < dim) return std::nullopt;
    start = (end == std::string::npos) ? line.size() : end + 1;
  }
  return row;
}

std::vector<Vector> read_noise_file(const std::string& path, const ProblemSpec& spec) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open noise file '" + path + "'");
  std::vector<Vector> noise;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto row = parse_noise_row(line, spec.dim);
    if (!row) {
      if (first) {
        first = false;  // header row
        continue;
      }
      throw std::invalid_argument("noise file: cannot parse row '" + line + "'");
    }
    first = false;
    noise.push_back(std::move(*row));
  }
  if (static_cast<int>(noise.size()) != spec.horizon) {
    throw std::invalid_argument("noise file: expected " + std::to_string(spec.horizon) +
                                " rows, got " + std::to_string(noise.size()));
  }
  return noise;
}

std::vector<Vector> random_admissible_noise(const ProblemSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Vector> noise;
  noise.reserve(static_cast<std::size_t>(spec.horizon));
  for (int t = 1; t <= spec.horizon; ++t) {
    Vector direction(spec.dim);
    do {
      for (int j = 0; j < spec.dim; ++j) direction(j) = gauss(rng);
    } while (direction.norm() == 0.0);
    direction.normalize();
    const double radius =
        spec.radius(t) * std::pow(unit(rng), 1.0 / static_cast<double>(spec.dim));
    noise.push_back(radius * direction);
  }
  return noise;
}

}  // namespace

int cmd_simulate(const RunConfig& config, std::ostream& out) {
  const ProblemSpec spec = validate_spec(config.spec);

  Schedule schedule;
  if (std::holds_alternative<std::monostate>(config.schedule_choice)) {
    schedule = solve(spec).schedule;
  } else if (std::holds_alternative<std::string>(config.schedule_choice)) {
    if (!config.homogeneous || spec.budget < 1) {
      throw std::invalid_argument("uniform schedule requires homogeneous noise and K >= 1");
    }
    schedule = uniform_schedule(spec.horizon, spec.budget);
  } else {
    schedule = std::get<Schedule>(config.schedule_choice);
    if (!schedule.feasible_for(spec)) {
      throw std::invalid_argument("configured schedule is not feasible for the spec");
    }
  }

  std::vector<Vector> noise;
  switch (config.noise_mode) {
    case NoiseMode::Adversarial:
      noise = adversarial_noise(schedule, spec);
      break;
    case NoiseMode::SeededRandom:
      noise = random_admissible_noise(spec, config.seed);
      break;
    case NoiseMode::FromFile:
      if (!config.noise_file) {
        throw std::invalid_argument("noise_mode 'from-file' requires 'noise_file'");
      }
      noise = read_noise_file(*config.noise_file, spec);
      break;
  }

  const Trajectory traj = simulate(schedule, noise, spec);
  const RadiusTrajectory bounds = evaluate_schedule(schedule, spec);

  const bool csv = effective_format(config, "simulate") == OutputFormat::Csv;
  if (csv) {
    out << "t";
    for (int j = 1; j <= spec.dim; ++j) out << ",x" << j;
    for (int j = 1; j <= spec.dim; ++j) out << ",xhat" << j;
    for (int j = 1; j <= spec.dim; ++j) out << ",y" << j;
    out << ",error,radius_bound,u\n";
  }
  for (int t = 1; t <= spec.horizon; ++t) {
    const std::size_t i = static_cast<std::size_t>(t) - 1;
    const int u = schedule.decisions[i] ? 1 : 0;
    if (csv) {
      out << t << ',' << vector_cell(traj.states[i], ',') << ','
          << vector_cell(traj.estimates[i], ',') << ',';
      if (traj.symbols[i].transmitted()) {
        out << vector_cell(traj.symbols[i].value(), ',');
      } else {
        for (int j = 0; j < spec.dim; ++j) {
          if (j > 0) out << ',';
          out << kNoTransmissionLiteral;
        }
      }
      out << ',' << format_double(traj.errors[i]) << ',' << format_double(bounds.radii[i]) << ','
          << u << '\n';
    } else {
      out << "t=" << t << " x=(" << vector_cell(traj.states[i], ' ') << ") xhat=("
          << vector_cell(traj.estimates[i], ' ') << ") y=";
      if (traj.symbols[i].transmitted()) {
        out << '(' << vector_cell(traj.symbols[i].value(), ' ') << ')';
      } else {
        out << kNoTransmissionLiteral;
      }
      out << " error=" << format_double(traj.errors[i])
          << " bound=" << format_double(bounds.radii[i]) << " u=" << u << '\n';
    }
  }
  if (!csv) out << "cost = " << format_double(traj.cost) << '\n';
  return 0;
}

int run_command(const std::string& name, const RunConfig& config, std::ostream& out) {
  if (name == "solve") return cmd_solve(config, out);
  if (name == "verify") return cmd_verify(config, out);
  if (name == "sweep") return cmd_sweep(config, out);
  if (name == "simulate") return cmd_simulate(config, out);
  if (name == "schedule") return cmd_schedule(config, out);
  throw std::invalid_argument("unknown command '" + name + "'");
}

}  // namespace remest::cli
