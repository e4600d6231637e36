#pragma once

#include <limits>
#include <optional>
#include <string_view>

#include "eivdesign/design.hpp"
#include "eivdesign/models.hpp"

namespace eivdesign {

/// Selects the maximum likelihood or the least squares information matrix.
enum class EstimationMethod { MLE, LSE };

std::string_view method_name(EstimationMethod method);  // "mle" / "lse"
EstimationMethod parse_method(std::string_view name);

/// Bayesian D-criterion on the log scale. Non-finite when any prior atom
/// gives a degenerate information matrix.
struct CriterionValue {
  double value = -std::numeric_limits<double>::infinity();
  bool finite = false;

  static CriterionValue of(double v) { return {v, true}; }
  static CriterionValue degenerate() { return {}; }
};

/// log det M(design, theta) for the chosen estimator, or nullopt when the
/// information matrix is singular or a model domain error occurs. The LSE
/// value is evaluated as 2 log det D_0 - log det D_1.
std::optional<double> log_det_information(const Design& design, ModelKind model,
                                          const Vec& theta, EstimationMethod method,
                                          const ErrorSpec& err);

/// Sum over theta atoms of weight * log det M(design, theta). Any
/// rho_atoms carried by the prior are ignored; `err` is used as given.
CriterionValue phi(const Design& design, ModelKind model, const DiscretePrior& prior,
                   EstimationMethod method, const ErrorSpec& err);

/// Double sum over theta atoms and error-ratio atoms with
/// sigma_eps^2 = rho^2 * sigma_eta^2. Requires prior.rho_atoms non-empty.
CriterionValue phi_joint(const Design& design, ModelKind model, const DiscretePrior& prior,
                         EstimationMethod method, double sigma_eta_sq);

/// phi_joint when the prior carries error-ratio atoms, phi otherwise.
CriterionValue bayes_criterion(const Design& design, ModelKind model, const DiscretePrior& prior,
                               EstimationMethod method, const ErrorSpec& err);

/// Closed-form criterion for equally weighted saturated designs, one
/// expression per model/estimator pair. Used as an independent check of the
/// matrix path. Throws InvalidArgument for designs that are not saturated and
/// equally weighted.
CriterionValue phi_closed_form(const Design& design, ModelKind model, const DiscretePrior& prior,
                               EstimationMethod method, const ErrorSpec& err);

}  // namespace eivdesign
