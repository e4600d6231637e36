#include "eivdesign/equivalence.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace eivdesign {

SensitivityFunction::SensitivityFunction(Design design, ModelKind model,
                                         const DiscretePrior& prior, EstimationMethod method,
                                         const ErrorSpec& err)
    : design_(std::move(design)), model_(model), method_(method) {
  std::vector<std::pair<ErrorSpec, double>> errors;
  if (prior.has_rho_atoms()) {
    for (const auto& r : prior.rho_atoms) {
      errors.push_back({{err.sigma_eta_sq, r.rho_sq * err.sigma_eta_sq}, r.weight});
    }
  } else {
    errors.push_back({err, 1.0});
  }

  for (const auto& [e, rho_weight] : errors) {
    for (std::size_t i = 0; i < prior.atoms.size(); ++i) {
      const auto& atom = prior.atoms[i];
      Term term{atom.theta, e, rho_weight * atom.weight, {}, {}};
      auto root = [&](InfoKind kind) {
        auto r = info_root_extended(design_, model, atom.theta, e, kind);
        if (!r) {
          throw SingularMatrixError(fmt::format(
              "information matrix singular for prior atom {} (rho^2 = {})", i, e.rho_sq()));
        }
        return *r;
      };
      if (method == EstimationMethod::MLE) {
        term.root_a = root(InfoKind::ML);
      } else {
        term.root_a = root(InfoKind::D0);
        term.root_b = root(InfoKind::D1);
      }
      terms_.push_back(std::move(term));
    }
  }
}

double SensitivityFunction::operator()(double x) const {
  double total = 0.0;
  for (const auto& t : terms_) {
    const Vec g = grad_theta(model_, x, t.theta);
    const double s1 = sigma(model_, 1, x, t.theta, t.err);
    if (method_ == EstimationMethod::MLE) {
      total += t.weight * quad_inverse_root(t.root_a, g) / s1;
    } else {
      const double s0 = sigma(model_, 0, x, t.theta, t.err);
      const double d0 = quad_inverse_root(t.root_a, g) / s0;
      const double d1 = quad_inverse_root(t.root_b, g) / s0;
      total += t.weight * (2.0 * d0 - s1 * d1);
    }
  }
  return total;
}

double sensitivity_ml(double x, const Design& design, ModelKind model, const DiscretePrior& prior,
                      const ErrorSpec& err) {
  return SensitivityFunction(design, model, prior, EstimationMethod::MLE, err)(x);
}

double sensitivity_ls(double x, const Design& design, ModelKind model, const DiscretePrior& prior,
                      const ErrorSpec& err) {
  return SensitivityFunction(design, model, prior, EstimationMethod::LSE, err)(x);
}

std::string_view verdict_name(Verdict verdict) {
  return verdict == Verdict::OptimalityConsistent ? "OptimalityConsistent" : "Violated";
}

std::vector<std::pair<double, double>> sensitivity_trace(const SensitivityFunction& fn,
                                                         const DesignSpace& space, int grid_size) {
  if (grid_size < 2) throw InvalidArgument("sensitivity grid needs at least two points");
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(grid_size));
  const double step = (space.upper - space.lower) / static_cast<double>(grid_size - 1);
  for (int i = 0; i < grid_size; ++i) {
    const double x = (i == grid_size - 1) ? space.upper : space.lower + i * step;
    out.emplace_back(x, fn(x));
  }
  return out;
}

VerificationReport verify(const Design& design, ModelKind model, const DiscretePrior& prior,
                          EstimationMethod method, const ErrorSpec& err, const DesignSpace& space,
                          int grid_size, double tol) {
  space.validate();
  design.check_within(space);
  const SensitivityFunction fn(design, model, prior, method, err);

  VerificationReport report;
  report.bound = fn.bound();
  report.grid_size = grid_size;
  report.method = method;
  report.necessary_only = method == EstimationMethod::LSE;
  report.tolerance = tol;
  report.sup_sensitivity = -std::numeric_limits<double>::infinity();

  auto consider = [&](double x, double v) {
    if (v > report.sup_sensitivity) {
      report.sup_sensitivity = v;
      report.argmax_x = x;
    }
  };
  for (const auto& [x, v] : sensitivity_trace(fn, space, grid_size)) consider(x, v);
  for (double x : design.points()) {
    const double v = fn(x);
    consider(x, v);
    report.support_points.push_back(x);
    report.support_values.push_back(v);
    report.support_gaps.push_back(std::abs(v - report.bound));
  }
  report.verdict = report.sup_sensitivity > report.bound + tol ? Verdict::Violated
                                                               : Verdict::OptimalityConsistent;
  return report;
}

}  // namespace eivdesign
