#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace eivdesign {

/// Global-best particle swarm with constriction coefficients.
///
/// Random numbers come from std::mt19937_64 (whose output sequence is fixed by
/// the C++ standard) mapped to [0, 1) by taking the top 53 bits, so a run is
/// reproducible bit for bit on any IEEE-754 platform.
struct SwarmConfig {
  int particles = 40;
  int iterations = 500;
  double inertia = 0.729;
  double cognitive = 1.49445;
  double social = 1.49445;
  std::uint64_t seed = 20160527;
  std::vector<std::pair<double, double>> bounds;
  /// Coordinates must be strictly increasing; violating particles score -inf.
  bool ordering_constraint = false;

  void validate() const;

  friend bool operator==(const SwarmConfig&, const SwarmConfig&) = default;
};

struct SwarmResult {
  std::vector<double> argmax;
  double value = 0.0;
  /// Best value after each iteration; non-decreasing.
  std::vector<double> history;
  /// No improvement above 1e-12 during the final 100 iterations while the
  /// swarm had not yet collapsed onto its best point.
  bool stagnated = false;
  int evaluations = 0;
};

using Objective = std::function<double(std::span<const double>)>;

SwarmResult maximize(const Objective& objective, const SwarmConfig& config);

}  // namespace eivdesign
