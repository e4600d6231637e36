#include "eivdesign/swarm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <fmt/format.h>

#include "eivdesign/types.hpp"

namespace eivdesign {

namespace {

constexpr double kImprovement = 1e-12;
constexpr int kStagnationWindow = 100;
constexpr double kCollapsedSpread = 1e-6;

class UnitUniform {
 public:
  explicit UnitUniform(std::uint64_t seed) : engine_(seed) {}
  double operator()() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

bool increasing(std::span<const double> x) {
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (!(x[i] > x[i - 1])) return false;
  }
  return true;
}

}  // namespace

void SwarmConfig::validate() const {
  if (particles < 2) throw InvalidArgument("optimizer.particles must be >= 2");
  if (iterations < 1) throw InvalidArgument("optimizer.iterations must be >= 1");
  if (!(inertia > 0.0 && inertia < 1.0)) throw InvalidArgument("optimizer.inertia must lie in (0, 1)");
  if (!(cognitive >= 0.0) || !(social >= 0.0)) {
    throw InvalidArgument("optimizer.cognitive and optimizer.social must be >= 0");
  }
  if (bounds.empty()) throw InvalidArgument("optimizer needs at least one bounded coordinate");
  for (auto [lo, hi] : bounds) {
    if (!(lo < hi)) throw InvalidArgument(fmt::format("degenerate optimizer bound [{}, {}]", lo, hi));
  }
}

SwarmResult maximize(const Objective& objective, const SwarmConfig& config) {
  config.validate();
  const std::size_t dim = config.bounds.size();
  const auto n = static_cast<std::size_t>(config.particles);
  const bool shared_bounds =
      std::all_of(config.bounds.begin(), config.bounds.end(),
                  [&](const auto& b) { return b == config.bounds.front(); });

  UnitUniform uniform(config.seed);
  SwarmResult result;

  auto score = [&](std::span<const double> x) {
    ++result.evaluations;
    if (config.ordering_constraint && !increasing(x)) {
      return -std::numeric_limits<double>::infinity();
    }
    const double v = objective(x);
    return std::isnan(v) ? -std::numeric_limits<double>::infinity() : v;
  };

  std::vector<std::vector<double>> pos(n, std::vector<double>(dim));
  std::vector<std::vector<double>> vel(n, std::vector<double>(dim));
  for (auto& p : pos) {
    for (std::size_t d = 0; d < dim; ++d) {
      const auto [lo, hi] = config.bounds[d];
      p[d] = lo + (hi - lo) * uniform();
    }
    if (config.ordering_constraint && shared_bounds) std::sort(p.begin(), p.end());
  }
  for (auto& v : vel) {
    for (std::size_t d = 0; d < dim; ++d) {
      const auto [lo, hi] = config.bounds[d];
      v[d] = 0.1 * (hi - lo) * (2.0 * uniform() - 1.0);
    }
  }

  std::vector<std::vector<double>> best_pos = pos;
  std::vector<double> best_val(n);
  std::size_t g = 0;
  for (std::size_t i = 0; i < n; ++i) {
    best_val[i] = score(pos[i]);
    if (best_val[i] > best_val[g]) g = i;
  }
  std::vector<double> global = best_pos[g];
  double global_val = best_val[g];

  int last_improvement = 0;
  result.history.reserve(static_cast<std::size_t>(config.iterations));
  for (int iter = 1; iter <= config.iterations; ++iter) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t d = 0; d < dim; ++d) {
        const auto [lo, hi] = config.bounds[d];
        const double range = hi - lo;
        double v = config.inertia * vel[i][d] +
                   config.cognitive * uniform() * (best_pos[i][d] - pos[i][d]) +
                   config.social * uniform() * (global[d] - pos[i][d]);
        v = std::clamp(v, -range, range);
        vel[i][d] = v;
        pos[i][d] = std::clamp(pos[i][d] + v, lo, hi);
      }
    }
    // synchronous update: evaluate in particle order, then refresh the leader
    for (std::size_t i = 0; i < n; ++i) {
      const double v = score(pos[i]);
      if (v > best_val[i]) {
        best_val[i] = v;
        best_pos[i] = pos[i];
      }
    }
    const auto leader = static_cast<std::size_t>(
        std::max_element(best_val.begin(), best_val.end()) - best_val.begin());
    if (best_val[leader] > global_val) {
      if (best_val[leader] - global_val > kImprovement || !std::isfinite(global_val)) {
        last_improvement = iter;
      }
      global_val = best_val[leader];
      global = best_pos[leader];
    }
    result.history.push_back(global_val);
  }

  double spread = 0.0;
  for (const auto& p : pos) {
    for (std::size_t d = 0; d < dim; ++d) {
      const auto [lo, hi] = config.bounds[d];
      spread = std::max(spread, std::abs(p[d] - global[d]) / (hi - lo));
    }
  }
  result.stagnated =
      config.iterations - last_improvement >= kStagnationWindow && spread > kCollapsedSpread;
  result.argmax = std::move(global);
  result.value = global_val;
  return result;
}

}  // namespace eivdesign
