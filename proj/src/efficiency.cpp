#include "eivdesign/efficiency.hpp"

#include <cmath>

namespace eivdesign {

double efficiency_from_criteria(double phi_design, double phi_reference, int param_count) {
  if (!std::isfinite(phi_design) || !std::isfinite(phi_reference)) {
    throw NonFiniteCriterion("efficiency needs finite criteria for both designs");
  }
  return std::exp((phi_design - phi_reference) / static_cast<double>(param_count));
}

EfficiencyResult eff_bayes(const Design& design, const Design& reference, ModelKind model,
                           const DiscretePrior& prior, EstimationMethod method,
                           const ErrorSpec& err) {
  const CriterionValue num = bayes_criterion(design, model, prior, method, err);
  const CriterionValue den = bayes_criterion(reference, model, prior, method, err);
  if (!num.finite) throw NonFiniteCriterion("criterion of the candidate design is not finite");
  if (!den.finite) throw NonFiniteCriterion("criterion of the reference design is not finite");
  return {efficiency_from_criteria(num.value, den.value, param_count(model)), reference};
}

EfficiencyResult eff_d_local(const Design& design, const Vec& theta, const Design& local_optimum,
                             ModelKind model, EstimationMethod method, const ErrorSpec& err) {
  const auto num = log_det_information(design, model, theta, method, err);
  const auto den = log_det_information(local_optimum, model, theta, method, err);
  if (!num) throw NonFiniteCriterion("information matrix of the candidate design is not positive definite");
  if (!den) throw NonFiniteCriterion("information matrix of the reference design is not positive definite");
  return {efficiency_from_criteria(*num, *den, param_count(model)), local_optimum};
}

}  // namespace eivdesign
