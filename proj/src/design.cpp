#include "eivdesign/design.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

namespace eivdesign {

void DesignSpace::validate() const {
  if (!std::isfinite(lower) || !std::isfinite(upper) || lower < 0.0 || !(lower < upper)) {
    throw InvalidArgument(
        fmt::format("design space must satisfy 0 <= lower < upper, got [{}, {}]", lower, upper));
  }
}

Design::Design(std::vector<double> points, std::vector<double> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
  if (points_.empty()) throw InvalidArgument("design has no support points");
  if (points_.size() != weights_.size()) {
    throw InvalidArgument(fmt::format("design has {} points but {} weights", points_.size(),
                                      weights_.size()));
  }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i])) throw InvalidArgument("non-finite design point");
    if (!(weights_[i] > 0.0 && weights_[i] <= 1.0)) {
      throw InvalidArgument(fmt::format("design weight {} = {} outside (0, 1]", i, weights_[i]));
    }
    if (i > 0 && !(points_[i] - points_[i - 1] >= kPointMergeTolerance)) {
      throw InvalidArgument(fmt::format(
          "design points must be strictly increasing and distinct, got {} then {}",
          points_[i - 1], points_[i]));
    }
  }
  const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  if (std::abs(total - 1.0) > kWeightSumTolerance) {
    throw InvalidArgument(fmt::format("design weights sum to {:.15g}, expected 1", total));
  }
}

Design Design::merged(std::vector<double> points, std::vector<double> weights) {
  if (points.size() != weights.size()) {
    throw InvalidArgument("design points and weights differ in length");
  }
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });
  std::vector<double> out_points;
  std::vector<double> out_weights;
  for (std::size_t idx : order) {
    if (!out_points.empty() && points[idx] - out_points.back() < kPointMergeTolerance) {
      out_weights.back() += weights[idx];
    } else {
      out_points.push_back(points[idx]);
      out_weights.push_back(weights[idx]);
    }
  }
  return Design(std::move(out_points), std::move(out_weights));
}

Design Design::uniform(std::vector<double> points) {
  const std::size_t n = points.size();
  if (n == 0) throw InvalidArgument("design has no support points");
  return Design(std::move(points), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

void Design::check_within(const DesignSpace& space) const {
  for (double x : points_) {
    if (!space.contains(x)) {
      throw InvalidArgument(
          fmt::format("design point {} outside [{}, {}]", x, space.lower, space.upper));
    }
  }
}

Design mix(const Design& first, const Design& second, double a) {
  if (!(a > 0.0 && a < 1.0)) throw InvalidArgument("mixing weight must lie in (0, 1)");
  std::vector<double> points = first.points();
  std::vector<double> weights;
  for (double w : first.weights()) weights.push_back(a * w);
  points.insert(points.end(), second.points().begin(), second.points().end());
  for (double w : second.weights()) weights.push_back((1.0 - a) * w);
  return Design::merged(std::move(points), std::move(weights));
}

DiscretePrior DiscretePrior::point(Vec theta) {
  DiscretePrior prior;
  prior.atoms.push_back({std::move(theta), 1.0});
  return prior;
}

void DiscretePrior::validate(ModelKind model) const {
  if (atoms.empty()) throw InvalidArgument("prior has no parameter atoms");
  double total = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (!(atoms[i].weight > 0.0)) {
      throw InvalidArgument(fmt::format("prior.atoms[{}].weight must be positive", i));
    }
    try {
      check_params(model, atoms[i].theta);
    } catch (const DomainError& e) {
      throw InvalidArgument(fmt::format("prior.atoms[{}]: {}", i, e.what()));
    }
    total += atoms[i].weight;
  }
  if (std::abs(total - 1.0) > kWeightSumTolerance) {
    throw InvalidArgument(fmt::format("prior.atoms weights sum to {:.15g}, expected 1", total));
  }
  if (rho_atoms.empty()) return;
  total = 0.0;
  for (std::size_t i = 0; i < rho_atoms.size(); ++i) {
    if (!(rho_atoms[i].weight > 0.0)) {
      throw InvalidArgument(fmt::format("prior.rho_atoms[{}].weight must be positive", i));
    }
    if (!(rho_atoms[i].rho_sq >= 0.0) || !std::isfinite(rho_atoms[i].rho_sq)) {
      throw InvalidArgument(fmt::format("prior.rho_atoms[{}].rho_sq must be >= 0", i));
    }
    total += rho_atoms[i].weight;
  }
  if (std::abs(total - 1.0) > kWeightSumTolerance) {
    throw InvalidArgument(
        fmt::format("prior.rho_atoms weights sum to {:.15g}, expected 1", total));
  }
}

DiscretePrior uniform_grid_prior(std::span<const std::pair<double, double>> intervals, int nu) {
  if (intervals.empty()) throw InvalidArgument("uniform grid prior needs at least one interval");
  if (nu < 1) throw InvalidArgument("grid size nu must be >= 1");

  std::vector<std::vector<double>> axes;
  for (auto [lo, hi] : intervals) {
    if (!(lo <= hi)) throw InvalidArgument(fmt::format("empty interval [{}, {}]", lo, hi));
    if (lo == hi) {
      axes.push_back({lo});
      continue;
    }
    if (nu == 1) {
      throw InvalidArgument(
          fmt::format("nu = 1 is ambiguous for the non-degenerate interval [{}, {}]", lo, hi));
    }
    std::vector<double> axis(static_cast<std::size_t>(nu));
    const double step = (hi - lo) / static_cast<double>(nu - 1);
    for (int i = 0; i < nu; ++i) axis[static_cast<std::size_t>(i)] = lo + i * step;
    axis.back() = hi;
    axes.push_back(std::move(axis));
  }

  std::size_t count = 1;
  for (const auto& axis : axes) count *= axis.size();
  const double weight = 1.0 / static_cast<double>(count);

  DiscretePrior prior;
  prior.atoms.reserve(count);
  std::vector<std::size_t> index(axes.size(), 0);
  for (std::size_t n = 0; n < count; ++n) {
    Vec theta(static_cast<Eigen::Index>(axes.size()));
    for (std::size_t d = 0; d < axes.size(); ++d) theta[static_cast<Eigen::Index>(d)] = axes[d][index[d]];
    prior.atoms.push_back({theta, weight});
    // odometer increment, last parameter fastest
    for (std::size_t d = axes.size(); d-- > 0;) {
      if (++index[d] < axes[d].size()) break;
      index[d] = 0;
    }
  }
  return prior;
}

Design saturated_design(std::vector<double> points, int param_count) {
  if (static_cast<int>(points.size()) != param_count) {
    throw InvalidArgument(fmt::format("saturated design needs {} points, got {}", param_count,
                                      points.size()));
  }
  return Design::uniform(std::move(points));
}

Design saturated_design(std::vector<double> points, int param_count, const DesignSpace& space) {
  Design design = saturated_design(std::move(points), param_count);
  design.check_within(space);
  return design;
}

}  // namespace eivdesign
