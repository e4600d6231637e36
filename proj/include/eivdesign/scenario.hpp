#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eivdesign/criterion.hpp"
#include "eivdesign/design.hpp"
#include "eivdesign/models.hpp"
#include "eivdesign/swarm.hpp"

namespace eivdesign {

/// Malformed scenario file. The message starts with the offending field path.
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

enum class Task { Solve, Verify, Efficiency, Sensitivity, Table };

std::string_view task_name(Task task);
Task parse_task(std::string_view name);

/// Prior as written in a scenario: either a uniform grid or explicit atoms,
/// plus optional error-ratio atoms.
struct PriorSpec {
  std::vector<std::pair<double, double>> intervals;
  int grid_points = 0;
  std::vector<ThetaAtom> atoms;
  std::vector<RhoAtom> rho_atoms;

  bool is_grid() const { return !intervals.empty(); }
  DiscretePrior build() const;

  friend bool operator==(const PriorSpec& a, const PriorSpec& b);
};

/// A declarative computation request.
///
/// YAML layout (see README for the full grammar):
///
///   model: michaelis-menten | emax | exponential
///   design_space: {lower: 0, upper: 80}
///   prior:
///     grid: {intervals: [[8, 24], [1.75, 5.25]], points: 11}
///     # or atoms: [{theta: [16, 3.5], weight: 1}]
///     rho_atoms: [{rho_sq: 1, weight: 1}]          # optional
///   error: {rho_sq: 1}            # or {sigma_eta_sq: ..., sigma_eps_sq: ...}
///   method: mle | lse
///   task: solve | verify | efficiency | sensitivity | table
///   design: {points: [...], weights: [...]}       # candidate design
///   reference: {points: [...], weights: [...]}    # efficiency reference
///   local_theta: [...]                            # local D-efficiency
///   verify: {grid_size: 2001, tolerance: 1e-6}
///   table: 1
///   optimizer: {particles: 40, iterations: 500, seed: 20160527, ...}
struct Scenario {
  ModelKind model = ModelKind::MichaelisMenten;
  DesignSpace design_space;
  PriorSpec prior;
  ErrorSpec error;
  EstimationMethod method = EstimationMethod::MLE;
  std::optional<Task> task;
  std::optional<Design> design;
  std::optional<Design> reference;
  std::optional<std::vector<double>> local_theta;
  int grid_size = 2001;
  double tolerance = 1e-6;
  std::optional<int> table_id;
  SwarmConfig optimizer;

  /// Cross-field checks; throws ConfigError.
  void validate() const;

  friend bool operator==(const Scenario& a, const Scenario& b);
};

Scenario parse_scenario(std::string_view yaml_text);
Scenario load_scenario(const std::string& path);

/// YAML text that parse_scenario maps back to an equal Scenario.
std::string dump_scenario(const Scenario& scenario);

}  // namespace eivdesign
