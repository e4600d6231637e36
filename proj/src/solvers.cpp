#include "eivdesign/solvers.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "eivdesign/roots.hpp"

namespace eivdesign {

namespace {

struct RatioAtom {
  double rho_sq;
  double weight;
};

std::vector<RatioAtom> ratio_atoms(const DiscretePrior& prior, double rho_sq) {
  if (!prior.has_rho_atoms()) return {{rho_sq, 1.0}};
  std::vector<RatioAtom> out;
  for (const auto& r : prior.rho_atoms) out.push_back({r.rho_sq, r.weight});
  return out;
}

// (t1, t2): the last two entries for every supported model.
std::pair<double, double> rate_params(const Vec& theta) {
  const auto n = theta.size();
  return {theta[n - 2], theta[n - 1]};
}

void check_interior(double x1, double x_upper) {
  if (!(x1 > 0.0 && x1 < x_upper)) {
    throw DomainError(fmt::format("root function needs 0 < x1 < {}, got {}", x_upper, x1));
  }
}

double mm_term(double x1, double t1, double t2, double rho_sq, bool least_squares) {
  const double c = t1 * t1 * t2 * t2;
  const double a = t2 + x1;
  const double a4 = a * a * a * a;
  double v = -2.0 * a * a * a / (a4 + c * rho_sq);
  if (least_squares) v += 2.0 * c / (a * (a4 + c));
  return v;
}

double mm_root_fn(double x1, const DiscretePrior& prior, double x_upper, double rho_sq,
                  bool least_squares) {
  check_interior(x1, x_upper);
  double total = 0.0;
  for (const auto& r : ratio_atoms(prior, rho_sq)) {
    double inner = 0.0;
    for (const auto& atom : prior.atoms) {
      const auto [t1, t2] = rate_params(atom.theta);
      inner += atom.weight *
               (1.0 / x1 - 1.0 / (x_upper - x1) + mm_term(x1, t1, t2, r.rho_sq, least_squares));
    }
    total += r.weight * inner;
  }
  return total;
}

ErrorSpec ratio_error(double rho_sq) { return ErrorSpec::from_ratio(rho_sq); }

Design three_point_or_two(ModelKind model, double x1, double x_upper) {
  if (model == ModelKind::MichaelisMenten) return Design::uniform({x1, x_upper});
  return Design::uniform({0.0, x1, x_upper});
}

SolveResult solve_by_roots(const ScalarFn& fn, ModelKind model, const DiscretePrior& prior,
                           double x_upper, double rho_sq, EstimationMethod method,
                           const RootOptions& opts) {
  if (!(x_upper > 0.0)) throw InvalidArgument("upper end of the design space must be positive");
  const double delta = 1e-8 * x_upper;
  SolveResult result;
  result.route = "root-equation";
  result.candidate_roots = find_roots(fn, delta, x_upper - delta, opts.scan_points, opts.tol);
  if (result.candidate_roots.empty()) {
    throw NoRootFound(fmt::format("no sign change of the {} {} root equation on (0, {})",
                                  model_name(model), method_name(method), x_upper));
  }
  const ErrorSpec err = ratio_error(rho_sq);
  for (double r : result.candidate_roots) {
    Design candidate = three_point_or_two(model, r, x_upper);
    const CriterionValue value = bayes_criterion(candidate, model, prior, method, err);
    if (value.finite && (!result.criterion.finite || value.value > result.criterion.value)) {
      result.design = std::move(candidate);
      result.criterion = value;
    }
  }
  if (!result.criterion.finite) {
    throw NoRootFound("every root of the characterizing equation gives a degenerate design");
  }
  return result;
}

SolveResult solve_mm_emax(const DiscretePrior& prior, double x_upper, double rho_sq,
                          ModelKind model, EstimationMethod method, const RootOptions& opts) {
  if (model == ModelKind::Exponential) {
    throw InvalidArgument("the Michaelis-Menten/Emax solver does not handle the exponential model");
  }
  const bool ls = method == EstimationMethod::LSE;
  return solve_by_roots([&](double x) { return mm_root_fn(x, prior, x_upper, rho_sq, ls); },
                        model, prior, x_upper, rho_sq, method, opts);
}

SolveResult solve_exp_ml_result(const DiscretePrior& prior, double x_upper, double rho_sq,
                                const RootOptions& opts) {
  return solve_by_roots([&](double x) { return root_fn_exp_ml(x, prior, x_upper, rho_sq); },
                        ModelKind::Exponential, prior, x_upper, rho_sq, EstimationMethod::MLE,
                        opts);
}

}  // namespace

double root_fn_mm_ml(double x1, const DiscretePrior& prior, double x_upper, double rho_sq) {
  return mm_root_fn(x1, prior, x_upper, rho_sq, false);
}

double root_fn_mm_ls(double x1, const DiscretePrior& prior, double x_upper, double rho_sq) {
  return mm_root_fn(x1, prior, x_upper, rho_sq, true);
}

double root_fn_exp_ml(double x1, const DiscretePrior& prior, double x_upper, double rho_sq) {
  check_interior(x1, x_upper);
  double total = 0.0;
  for (const auto& r : ratio_atoms(prior, rho_sq)) {
    double inner = 0.0;
    for (const auto& atom : prior.atoms) {
      const auto [t1, t2] = rate_params(atom.theta);
      const double c = t1 * t1 * t2 * t2;
      const double e1 = std::exp(t2 * x1);
      const double eu = std::exp(t2 * x_upper);
      const double e2 = e1 * e1;
      const double geometric =
          (1.0 - eu + t2 * x_upper * e1) / (x1 - x_upper + x_upper * e1 - x1 * eu);
      inner += atom.weight * (geometric - t2 * e2 / (e2 + c * r.rho_sq));
    }
    total += r.weight * inner;
  }
  return total;
}

Design solve_mm_emax_ml(const DiscretePrior& prior, double x_upper, double rho_sq,
                        ModelKind model, const RootOptions& opts) {
  return solve_mm_emax(prior, x_upper, rho_sq, model, EstimationMethod::MLE, opts).design;
}

Design solve_mm_emax_ls(const DiscretePrior& prior, double x_upper, double rho_sq,
                        ModelKind model, const RootOptions& opts) {
  return solve_mm_emax(prior, x_upper, rho_sq, model, EstimationMethod::LSE, opts).design;
}

Design solve_exp_ml(const DiscretePrior& prior, double x_upper, double rho_sq,
                    const RootOptions& opts) {
  return solve_exp_ml_result(prior, x_upper, rho_sq, opts).design;
}

SolveResult solve_exp_ls(const DiscretePrior& prior, double x_upper, double rho_sq,
                         SwarmConfig config) {
  if (!(x_upper > 0.0)) throw InvalidArgument("upper end of the design space must be positive");
  config.bounds = {{0.0, x_upper}, {0.0, x_upper}};
  config.ordering_constraint = true;
  const ErrorSpec err = ratio_error(rho_sq);
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();

  auto objective = [&](std::span<const double> x) {
    if (!(x[1] < x_upper - kPointMergeTolerance)) return kNegInf;
    try {
      const Design d = Design::uniform({x[0], x[1], x_upper});
      return bayes_criterion(d, ModelKind::Exponential, prior, EstimationMethod::LSE, err).value;
    } catch (const InvalidArgument&) {
      return kNegInf;
    }
  };

  SolveResult result;
  result.route = "particle-swarm";
  result.swarm = maximize(objective, config);
  if (!std::isfinite(result.swarm->value)) {
    throw NoRootFound("particle swarm found no non-degenerate design");
  }
  result.design = Design::uniform({result.swarm->argmax[0], result.swarm->argmax[1], x_upper});
  result.criterion = CriterionValue::of(result.swarm->value);
  return result;
}

SolveResult solve_saturated(ModelKind model, const DiscretePrior& prior, const DesignSpace& space,
                            EstimationMethod method, const ErrorSpec& err,
                            const SwarmConfig& swarm, const RootOptions& opts) {
  space.validate();
  if (space.lower != 0.0) {
    throw InvalidArgument("saturated-design characterizations need a design space starting at 0");
  }
  err.validate();
  prior.validate(model);
  const double rho_sq = err.rho_sq();
  SolveResult result;
  if (model == ModelKind::Exponential) {
    result = method == EstimationMethod::MLE ? solve_exp_ml_result(prior, space.upper, rho_sq, opts)
                                             : solve_exp_ls(prior, space.upper, rho_sq, swarm);
  } else {
    result = solve_mm_emax(prior, space.upper, rho_sq, model, method, opts);
  }
  // solvers work with sigma_eta^2 = 1; report the criterion on the caller's scale
  result.criterion = bayes_criterion(result.design, model, prior, method, err);
  return result;
}

}  // namespace eivdesign
