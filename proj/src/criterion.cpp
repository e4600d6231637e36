#include "eivdesign/criterion.hpp"

#include <cmath>

#include <fmt/format.h>

#include "eivdesign/information.hpp"

namespace eivdesign {

std::string_view method_name(EstimationMethod method) {
  return method == EstimationMethod::MLE ? "mle" : "lse";
}

EstimationMethod parse_method(std::string_view name) {
  if (name == "mle" || name == "MLE") return EstimationMethod::MLE;
  if (name == "lse" || name == "LSE") return EstimationMethod::LSE;
  throw InvalidArgument(fmt::format("unknown estimation method '{}'", name));
}

std::optional<double> log_det_information(const Design& design, ModelKind model,
                                          const Vec& theta, EstimationMethod method,
                                          const ErrorSpec& err) {
  try {
    if (method == EstimationMethod::MLE) {
      const auto r = info_root(design, model, theta, err, InfoKind::ML);
      if (!r) return std::nullopt;
      return log_det_root(*r);
    }
    const auto r0 = info_root(design, model, theta, err, InfoKind::D0);
    const auto r1 = info_root(design, model, theta, err, InfoKind::D1);
    if (!r0 || !r1) return std::nullopt;
    return 2.0 * log_det_root(*r0) - log_det_root(*r1);
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

CriterionValue phi(const Design& design, ModelKind model, const DiscretePrior& prior,
                   EstimationMethod method, const ErrorSpec& err) {
  double total = 0.0;
  for (const auto& atom : prior.atoms) {
    const auto ld = log_det_information(design, model, atom.theta, method, err);
    if (!ld) return CriterionValue::degenerate();
    total += atom.weight * *ld;
  }
  return CriterionValue::of(total);
}

CriterionValue phi_joint(const Design& design, ModelKind model, const DiscretePrior& prior,
                         EstimationMethod method, double sigma_eta_sq) {
  if (!prior.has_rho_atoms()) {
    throw InvalidArgument("joint criterion needs at least one error-ratio atom");
  }
  double total = 0.0;
  for (const auto& rho : prior.rho_atoms) {
    const ErrorSpec err{sigma_eta_sq, rho.rho_sq * sigma_eta_sq};
    const CriterionValue inner = phi(design, model, prior, method, err);
    if (!inner.finite) return inner;
    total += rho.weight * inner.value;
  }
  return CriterionValue::of(total);
}

CriterionValue bayes_criterion(const Design& design, ModelKind model, const DiscretePrior& prior,
                               EstimationMethod method, const ErrorSpec& err) {
  if (prior.has_rho_atoms()) return phi_joint(design, model, prior, method, err.sigma_eta_sq);
  return phi(design, model, prior, method, err);
}

namespace {

// Closed forms for the equal-weight saturated design {x_0, ..., x_p}. Each
// comes from det M = (det X)^2 det W / det L_1 (ML) and additionally divided
// by det L_0 (LS), with X the gradient matrix and L_k = diag(sigma_k).

double mm_closed(const std::vector<double>& x, double t1, double t2, EstimationMethod method,
                 const ErrorSpec& err) {
  const double c = t1 * t1 * t2 * t2;
  double v = 2.0 * std::log(std::abs(t1)) + 2.0 * std::log(x[0]) + 2.0 * std::log(x[1]) +
             2.0 * std::log(x[1] - x[0]) - std::log(4.0);
  for (double xi : x) {
    const double q = std::pow(t2 + xi, 4);
    v -= std::log(err.sigma_eta_sq * q + c * err.sigma_eps_sq);
    if (method == EstimationMethod::LSE) v += 4.0 * std::log(t2 + xi) - std::log(q + c);
  }
  return v;
}

double emax_closed(const std::vector<double>& x, double t1, double t2, EstimationMethod method,
                   const ErrorSpec& err) {
  const double c = t1 * t1 * t2 * t2;
  double v = 2.0 * std::log(std::abs(t1)) + 4.0 * std::log(t2) + 2.0 * std::log(x[1] - x[0]) +
             2.0 * std::log(x[2] - x[0]) + 2.0 * std::log(x[2] - x[1]) - std::log(27.0);
  for (double xi : x) {
    const double q = std::pow(t2 + xi, 4);
    v -= std::log(err.sigma_eta_sq * q + c * err.sigma_eps_sq);
    if (method == EstimationMethod::LSE) v += 4.0 * std::log(t2 + xi) - std::log(q + c);
  }
  return v;
}

double exp_closed(const std::vector<double>& x, double t1, double t2, EstimationMethod method,
                  const ErrorSpec& err) {
  const double c = t1 * t1 * t2 * t2;
  const double b = std::exp(t2 * x[2]) * (x[0] - x[1]) + std::exp(t2 * x[0]) * (x[1] - x[2]) +
                   std::exp(t2 * x[1]) * (x[2] - x[0]);
  double v = 2.0 * std::log(std::abs(t1)) + 2.0 * std::log(std::abs(b)) - std::log(27.0);
  for (double xi : x) {
    v -= std::log(err.sigma_eta_sq * std::exp(2.0 * t2 * xi) + c * err.sigma_eps_sq);
    if (method == EstimationMethod::LSE) v -= std::log1p(c * std::exp(-2.0 * t2 * xi));
  }
  return v;
}

}  // namespace

CriterionValue phi_closed_form(const Design& design, ModelKind model, const DiscretePrior& prior,
                               EstimationMethod method, const ErrorSpec& err) {
  const auto n = static_cast<std::size_t>(param_count(model));
  if (design.size() != n) {
    throw InvalidArgument(fmt::format("closed form needs a saturated design with {} points", n));
  }
  for (double w : design.weights()) {
    if (std::abs(w - 1.0 / static_cast<double>(n)) > 1e-12) {
      throw InvalidArgument("closed form needs an equally weighted design");
    }
  }
  const auto& x = design.points();
  double total = 0.0;
  for (const auto& atom : prior.atoms) {
    const Vec& t = atom.theta;
    double v = 0.0;
    switch (model) {
      case ModelKind::MichaelisMenten: v = mm_closed(x, t[0], t[1], method, err); break;
      case ModelKind::Emax: v = emax_closed(x, t[1], t[2], method, err); break;
      case ModelKind::Exponential: v = exp_closed(x, t[1], t[2], method, err); break;
    }
    if (!std::isfinite(v)) return CriterionValue::degenerate();
    total += atom.weight * v;
  }
  return CriterionValue::of(total);
}

}  // namespace eivdesign
