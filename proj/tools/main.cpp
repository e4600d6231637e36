// eivdesign command-line front-end.
//
//   eivdesign solve --config scenario.yaml [--output out.json] [--format json|csv] [--seed N]
//   eivdesign table --id 3 --output table3.csv --format csv
//
// Log level comes from EIVDESIGN_LOG_LEVEL (trace, debug, info, warn, error, off).

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "eivdesign/runner.hpp"
#include "eivdesign/scenario.hpp"

namespace {

struct Args {
  std::string config;
  std::string output;
  std::string format = "json";
  std::optional<std::uint64_t> seed;
  std::optional<int> table_id;
};

void setup_logging() {
  auto logger = spdlog::stderr_logger_st("eivdesign");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* level = std::getenv("EIVDESIGN_LOG_LEVEL")) {
    spdlog::set_level(spdlog::level::from_str(level));
  }
}

int config_failure(const std::string& message) {
  spdlog::error("{}", message);
  nlohmann::json payload = {{"error", {{"kind", "config"}, {"message", message}}}};
  std::cout << payload.dump(2) << "\n";
  return eivdesign::kExitConfig;
}

int execute(eivdesign::Task task, const Args& args) {
  using namespace eivdesign;
  Scenario scenario;
  OutputFormat format;
  try {
    format = parse_format(args.format);
    if (!args.config.empty()) {
      scenario = load_scenario(args.config);
    } else if (task != Task::Table) {
      throw ConfigError("--config: required for this command");
    }
  } catch (const InvalidArgument& e) {
    return config_failure(e.what());
  }
  scenario.task = task;
  if (args.table_id) scenario.table_id = args.table_id;
  if (args.seed) scenario.optimizer.seed = *args.seed;

  RunOptions opts;
  opts.format = format;
  if (!args.output.empty()) opts.output_path = args.output;

  spdlog::info("task {} (seed {})", task_name(task), scenario.optimizer.seed);
  spdlog::debug("scenario:\n{}", dump_scenario(scenario));
  RunResult result;
  try {
    result = run(scenario, opts);
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  if (result.exit_code != kExitOk) {
    spdlog::error("{}", result.payload["error"]["message"].get<std::string>());
  }
  if (opts.output_path) {
    spdlog::info("wrote {}", *opts.output_path);
  } else {
    std::cout << result.text;
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  using eivdesign::Task;

  CLI::App app{"Bayesian D-optimal designs under covariate measurement error"};
  app.require_subcommand(1);
  Args args;

  auto add_common = [&](CLI::App* cmd, bool config_required) {
    auto* opt = cmd->add_option("--config", args.config, "scenario file (YAML)");
    if (config_required) opt->required()->check(CLI::ExistingFile);
    cmd->add_option("--output", args.output, "write the result here instead of stdout");
    cmd->add_option("--format", args.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--seed", args.seed, "particle swarm seed");
  };

  std::optional<Task> chosen;
  const std::pair<const char*, const char*> verbs[] = {
      {"solve", "compute the optimal saturated design"},
      {"verify", "check a design against the equivalence bound"},
      {"efficiency", "efficiency of a design against a reference"},
      {"sensitivity", "sensitivity function on a grid"},
  };
  for (auto [name, help] : verbs) {
    auto* cmd = app.add_subcommand(name, help);
    add_common(cmd, true);
    cmd->callback([&chosen, n = std::string(name)] { chosen = eivdesign::parse_task(n); });
  }
  auto* table = app.add_subcommand("table", "reproduce a reference table");
  add_common(table, false);
  table->add_option("--id", args.table_id, "table number")->check(CLI::Range(1, 4));
  table->callback([&chosen] { chosen = Task::Table; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : eivdesign::kExitConfig;
  }
  return execute(*chosen, args);
}
