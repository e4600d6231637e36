#include "eivdesign/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <fmt/chrono.h>
#include <fmt/format.h>

#include "eivdesign/efficiency.hpp"
#include "eivdesign/equivalence.hpp"
#include "eivdesign/solvers.hpp"
#include "eivdesign/tables.hpp"

#ifndef EIVDESIGN_VERSION
#define EIVDESIGN_VERSION "0.0.0"
#endif

namespace eivdesign {

using nlohmann::json;

namespace {

json to_json(const Design& d) { return {{"points", d.points()}, {"weights", d.weights()}}; }

double round2(double v) { return std::round(v * 100.0) / 100.0; }

json provenance(const Scenario& s, const RunOptions& opts) {
  json p = {{"library", "eivdesign"},
            {"version", std::string(library_version())},
            {"config", dump_scenario(s)},
            {"seed", s.optimizer.seed},
            {"tolerances",
             {{"verify", s.tolerance},
              {"verify_grid", s.grid_size},
              {"root_width", RootOptions{}.tol},
              {"root_scan_points", RootOptions{}.scan_points}}}};
  if (opts.timestamp) {
    p["generated_at"] =
        fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(std::chrono::system_clock::now()));
  }
  return p;
}

json report_json(const VerificationReport& r) {
  return {{"verdict", std::string(verdict_name(r.verdict))},
          {"sup_sensitivity", r.sup_sensitivity},
          {"bound", r.bound},
          {"argmax_x", r.argmax_x},
          {"grid_size", r.grid_size},
          {"tolerance", r.tolerance},
          {"necessary_only", r.necessary_only},
          {"support_points", r.support_points},
          {"support_values", r.support_values},
          {"support_gaps", r.support_gaps}};
}

struct Context {
  const Scenario& s;
  DiscretePrior prior;

  SolveResult solve() const {
    return solve_saturated(s.model, prior, s.design_space, s.method, s.error, s.optimizer);
  }
  Design candidate() const { return s.design ? *s.design : solve().design; }
};

std::string csv_rows(std::string header, const std::vector<std::vector<double>>& columns) {
  std::ostringstream out;
  out << header << '\n';
  const std::size_t n = columns.empty() ? 0 : columns.front().size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      out << (c ? "," : "") << fmt::format("{}", columns[c][i]);
    }
    out << '\n';
  }
  return out.str();
}

// Fills payload["result"] and returns the CSV rendering.
std::string run_task(const Scenario& s, const RunOptions& opts, json& result) {
  const Task task = s.task.value_or(Task::Solve);
  if (task == Task::Table) {
    const Table table = reproduce_table(*s.table_id, s.optimizer);
    json cells = json::array();
    for (const auto& c : table.cells) {
      cells.push_back({{"row", c.row},
                       {"column", c.column},
                       {"computed", c.computed},
                       {"expected", c.expected},
                       {"tolerance", c.tolerance},
                       {"pass", c.pass()}});
    }
    result = {{"table", table.id},
              {"header", table.header},
              {"rows", table.rows},
              {"cells", cells},
              {"all_pass", table.all_pass()}};
    if (opts.output_path) write_atomic(*opts.output_path + ".check.csv", table.check_csv());
    return table.to_csv();
  }

  const Context ctx{s, s.prior.build()};
  switch (task) {
    case Task::Solve: {
      const SolveResult r = ctx.solve();
      result = {{"design", to_json(r.design)},
                {"criterion", r.criterion.value},
                {"route", r.route},
                {"candidate_roots", r.candidate_roots}};
      if (r.swarm) {
        result["swarm"] = {{"argmax", r.swarm->argmax},
                           {"value", r.swarm->value},
                           {"evaluations", r.swarm->evaluations},
                           {"stagnated", r.swarm->stagnated}};
      }
      const auto rep = verify(r.design, s.model, ctx.prior, s.method, s.error, s.design_space,
                              s.grid_size, s.tolerance);
      result["verification"] = report_json(rep);
      return csv_rows("point,weight", {r.design.points(), r.design.weights()});
    }
    case Task::Verify: {
      const Design d = ctx.candidate();
      const auto rep =
          verify(d, s.model, ctx.prior, s.method, s.error, s.design_space, s.grid_size, s.tolerance);
      result = report_json(rep);
      result["design"] = to_json(d);
      return csv_rows("point,sensitivity,gap",
                      {rep.support_points, rep.support_values, rep.support_gaps});
    }
    case Task::Efficiency: {
      const Design& d = *s.design;
      EfficiencyResult e;
      if (s.local_theta) {
        const Vec theta = Eigen::Map<const Eigen::VectorXd>(
            s.local_theta->data(), static_cast<Eigen::Index>(s.local_theta->size()));
        const Design ref =
            s.reference ? *s.reference
                        : solve_saturated(s.model, DiscretePrior::point(theta), s.design_space,
                                          s.method, s.error, s.optimizer)
                              .design;
        e = eff_d_local(d, theta, ref, s.model, s.method, s.error);
        result["kind"] = "local";
      } else {
        const Design ref = s.reference ? *s.reference : ctx.solve().design;
        e = eff_bayes(d, ref, s.model, ctx.prior, s.method, s.error);
        result["kind"] = "bayes";
      }
      result["design"] = to_json(d);
      result["reference"] = to_json(e.reference_design);
      result["efficiency"] = e.value;
      result["efficiency_pct"] = round2(e.percent());
      return fmt::format("kind,efficiency_pct\n{},{:.2f}\n", result["kind"].get<std::string>(),
                         e.percent());
    }
    case Task::Sensitivity: {
      const Design d = ctx.candidate();
      const SensitivityFunction fn(d, s.model, ctx.prior, s.method, s.error);
      const auto trace = sensitivity_trace(fn, s.design_space, s.grid_size);
      std::vector<double> xs, vs;
      for (auto [x, v] : trace) {
        xs.push_back(x);
        vs.push_back(v);
      }
      result = {{"design", to_json(d)}, {"bound", fn.bound()}, {"x", xs}, {"value", vs}};
      return csv_rows("x,value", {xs, vs});
    }
    case Task::Table: break;
  }
  return {};
}

}  // namespace

std::string_view library_version() { return EIVDESIGN_VERSION; }

OutputFormat parse_format(std::string_view name) {
  if (name == "json") return OutputFormat::Json;
  if (name == "csv") return OutputFormat::Csv;
  throw InvalidArgument(fmt::format("unknown format '{}'; expected json or csv", name));
}

void write_atomic(const std::string& path, std::string_view content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(fmt::format("cannot write '{}'", tmp.string()));
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out.flush()) throw Error(fmt::format("cannot write '{}'", tmp.string()));
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error(fmt::format("cannot rename onto '{}': {}", path, ec.message()));
  }
}

RunResult run(const Scenario& scenario, const RunOptions& options) {
  RunResult out;
  out.payload["task"] = std::string(task_name(scenario.task.value_or(Task::Solve)));
  out.payload["provenance"] = provenance(scenario, options);
  std::string csv;
  auto fail = [&](int code, std::string_view kind, const std::exception& e) {
    out.exit_code = code;
    out.payload["error"] = {{"kind", kind}, {"message", e.what()}};
  };
  try {
    scenario.validate();
    json result;
    csv = run_task(scenario, options, result);
    out.payload["result"] = std::move(result);
  } catch (const InvalidArgument& e) {
    fail(kExitConfig, "config", e);
  } catch (const NoRootFound& e) {
    fail(kExitNumerical, "no-root", e);
  } catch (const SingularMatrixError& e) {
    fail(kExitNumerical, "singular-matrix", e);
  } catch (const NonFiniteCriterion& e) {
    fail(kExitNumerical, "non-finite-criterion", e);
  } catch (const Error& e) {
    fail(kExitNumerical, "numerical", e);
  }

  if (options.format == OutputFormat::Csv && out.exit_code == kExitOk) {
    out.text = csv;
  } else {
    out.text = out.payload.dump(2) + "\n";
  }
  if (options.output_path) write_atomic(*options.output_path, out.text);
  return out;
}

}  // namespace eivdesign
