#pragma once

#include <span>
#include <utility>
#include <vector>

#include "eivdesign/models.hpp"
#include "eivdesign/types.hpp"

namespace eivdesign {

inline constexpr double kWeightSumTolerance = 1e-12;
inline constexpr double kPointMergeTolerance = 1e-9;

/// The covariate interval [lower, upper].
struct DesignSpace {
  double lower = 0.0;
  double upper = 1.0;

  void validate() const;
  bool contains(double x) const { return x >= lower && x <= upper; }

  friend bool operator==(const DesignSpace&, const DesignSpace&) = default;
};

/// Approximate design: finitely many support points with probability weights.
class Design {
 public:
  Design() = default;

  /// Validates: points strictly increasing and at least 1e-9 apart, weights in
  /// (0, 1] summing to one within 1e-12.
  Design(std::vector<double> points, std::vector<double> weights);

  /// Sorts the points and merges any closer than 1e-9, summing their weights.
  static Design merged(std::vector<double> points, std::vector<double> weights);

  /// Equal weights on the given points.
  static Design uniform(std::vector<double> points);

  const std::vector<double>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return points_.size(); }

  /// Throws InvalidArgument if a support point lies outside `space`.
  void check_within(const DesignSpace& space) const;

  friend bool operator==(const Design&, const Design&) = default;

 private:
  std::vector<double> points_;
  std::vector<double> weights_;
};

/// Convex combination a*first + (1-a)*second of two designs.
Design mix(const Design& first, const Design& second, double a);

struct ThetaAtom {
  Vec theta;
  double weight = 1.0;
};

struct RhoAtom {
  double rho_sq = 0.0;
  double weight = 1.0;
};

/// Discrete prior over parameter vectors, optionally paired with an
/// independent discrete prior over the error-variance ratio.
struct DiscretePrior {
  std::vector<ThetaAtom> atoms;
  std::vector<RhoAtom> rho_atoms;

  static DiscretePrior point(Vec theta);

  bool has_rho_atoms() const { return !rho_atoms.empty(); }

  /// Throws InvalidArgument on non-positive weights, weight sums off by more
  /// than 1e-12, or atoms outside the model domain.
  void validate(ModelKind model) const;
};

/// Cartesian grid prior with `nu` equally spaced values per interval
/// (endpoints included). Degenerate intervals lo == hi contribute a single
/// value. All atoms are equally weighted.
DiscretePrior uniform_grid_prior(std::span<const std::pair<double, double>> intervals, int nu);

/// Equal-weight design on exactly `param_count` points.
Design saturated_design(std::vector<double> points, int param_count);

/// As above, and additionally checks the points lie in `space`.
Design saturated_design(std::vector<double> points, int param_count, const DesignSpace& space);

}  // namespace eivdesign
