#pragma once

#include "eivdesign/criterion.hpp"
#include "eivdesign/design.hpp"

namespace eivdesign {

/// Raised when an efficiency is requested for a design whose criterion or
/// determinant is not finite and positive.
class NonFiniteCriterion : public Error {
 public:
  using Error::Error;
};

struct EfficiencyResult {
  /// Fraction; 1 when the design matches the reference. Values above 1 mean
  /// the reference is not optimal.
  double value = 0.0;
  Design reference_design;

  double percent() const { return 100.0 * value; }
};

/// exp((phi_design - phi_reference) / param_count) from two log-scale criteria.
double efficiency_from_criteria(double phi_design, double phi_reference, int param_count);

/// Bayesian efficiency of `design` against `reference` under the prior
/// (joint prior when rho_atoms are present).
EfficiencyResult eff_bayes(const Design& design, const Design& reference, ModelKind model,
                           const DiscretePrior& prior, EstimationMethod method,
                           const ErrorSpec& err);

/// Local D-efficiency (det M(design) / det M(local_optimum))^{1/(p+1)} at theta.
EfficiencyResult eff_d_local(const Design& design, const Vec& theta, const Design& local_optimum,
                             ModelKind model, EstimationMethod method, const ErrorSpec& err);

}  // namespace eivdesign
