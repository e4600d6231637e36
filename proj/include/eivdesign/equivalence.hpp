#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "eivdesign/criterion.hpp"
#include "eivdesign/design.hpp"
#include "eivdesign/information.hpp"

namespace eivdesign {

/// Prior-averaged sensitivity function of a design.
///
/// MLE:  d(x) = sum_theta w g^T M_ML^{-1} g / sigma_1
/// LSE:  d(x) = sum_theta w (2 d_0 - sigma_1 d_1),  d_k = g^T D_k^{-1} g / sigma_0
///
/// The per-atom inverses are factored once at construction. Error-ratio
/// atoms in the prior add an outer weighted sum (sigma_eps^2 = rho^2 sigma_eta^2).
class SensitivityFunction {
 public:
  /// Throws SingularMatrixError naming the first prior atom whose matrix
  /// cannot be inverted.
  SensitivityFunction(Design design, ModelKind model, const DiscretePrior& prior,
                      EstimationMethod method, const ErrorSpec& err);

  double operator()(double x) const;

  const Design& design() const { return design_; }
  EstimationMethod method() const { return method_; }

  /// The bound p+1.
  int bound() const { return param_count(model_); }

 private:
  struct Term {
    Vec theta;
    ErrorSpec err;
    double weight;
    MatExt root_a;  // triangular root of M_ML (MLE) or D_0 (LSE)
    MatExt root_b;  // root of D_1 (LSE only)
  };

  Design design_;
  ModelKind model_;
  EstimationMethod method_;
  std::vector<Term> terms_;
};

double sensitivity_ml(double x, const Design& design, ModelKind model, const DiscretePrior& prior,
                      const ErrorSpec& err);

double sensitivity_ls(double x, const Design& design, ModelKind model, const DiscretePrior& prior,
                      const ErrorSpec& err);

enum class Verdict { OptimalityConsistent, Violated };

std::string_view verdict_name(Verdict verdict);

struct VerificationReport {
  double sup_sensitivity = 0.0;
  int bound = 0;
  int grid_size = 0;
  double argmax_x = 0.0;
  std::vector<double> support_points;
  std::vector<double> support_values;
  /// |sensitivity(x_i) - (p+1)| per support point.
  std::vector<double> support_gaps;
  Verdict verdict = Verdict::Violated;
  EstimationMethod method = EstimationMethod::MLE;
  /// True for LSE: the bound is only a necessary condition there.
  bool necessary_only = false;
  double tolerance = 0.0;
};

/// Sensitivity on a uniform grid over the design space plus every support
/// point. Violated iff the supremum exceeds p+1 + tol.
VerificationReport verify(const Design& design, ModelKind model, const DiscretePrior& prior,
                          EstimationMethod method, const ErrorSpec& err, const DesignSpace& space,
                          int grid_size = 2001, double tol = 1e-6);

/// (x, sensitivity) pairs on a uniform grid including both ends.
std::vector<std::pair<double, double>> sensitivity_trace(const SensitivityFunction& fn,
                                                         const DesignSpace& space, int grid_size);

}  // namespace eivdesign
