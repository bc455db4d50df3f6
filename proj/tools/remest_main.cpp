#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "remest/cli.hpp"
#include "remest/oracle.hpp"

namespace cli = remest::cli;

int main(int argc, char** argv) {
  CLI::App app{"Worst-case transmission scheduling for remote estimation of a "
               "bounded-noise autoregressive source"};
  app.require_subcommand(1);

  struct Options {
    std::string config_path;
    std::optional<std::string> out_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> format;
  };

  const std::vector<std::string> commands = {"solve", "verify", "sweep", "simulate", "schedule"};
  std::map<std::string, Options> options;
  for (const auto& name : commands) {
    auto* sub = app.add_subcommand(name);
    auto& opt = options[name];
    sub->add_option("--config", opt.config_path, "Path to the JSON run configuration")
        ->required();
    sub->add_option("--out", opt.out_path, "Write output to this file instead of stdout");
    sub->add_option("--seed", opt.seed, "Random seed (overrides the config)");
    sub->add_option("--format", opt.format, "Output format: csv or plain")
        ->check(CLI::IsMember({"csv", "plain"}));
  }

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();
  const Options& opt = options[command];

  try {
    cli::RunConfig config = cli::load_config(opt.config_path);
    if (opt.seed) config.seed = *opt.seed;
    if (opt.format) config.format_override = cli::parse_format(*opt.format);
    if (opt.out_path) config.out_path = *opt.out_path;

    if (config.out_path) {
      std::ofstream file(*config.out_path, std::ios::binary);
      if (!file) {
        std::cerr << "error: cannot open output file '" << *config.out_path << "'\n";
        return 1;
      }
      return cli::run_command(command, config, file);
    }
    return cli::run_command(command, config, std::cout);
  } catch (const remest::ValidationError& err) {
    std::cerr << "error: invalid " << err.field() << ": " << err.what() << '\n';
    return 1;
  } catch (const remest::oracle::GuardError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  }
}
