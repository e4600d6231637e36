#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eivdesign/criterion.hpp"
#include "eivdesign/design.hpp"
#include "eivdesign/swarm.hpp"

namespace eivdesign {

// Saturated Bayesian D-optimal designs on [0, x_u]. Every solver works with
// the error-variance ratio rho^2 only; when the prior carries rho_atoms those
// replace the scalar rho_sq argument and every root function gains an outer
// weighted sum over them.

struct RootOptions {
  int scan_points = 2001;
  double tol = 1e-10;
};

/// Prior-averaged derivative condition for the interior point of the
/// Michaelis-Menten / Emax designs under maximum likelihood:
///   1/x1 - 1/(x_u - x1) - 2 (t2 + x1)^3 / ((t2 + x1)^4 + t1^2 t2^2 rho^2).
/// Throws DomainError unless 0 < x1 < x_u.
double root_fn_mm_ml(double x1, const DiscretePrior& prior, double x_upper, double rho_sq);

/// As root_fn_mm_ml plus the least squares term
///   2 t1^2 t2^2 / ((t2 + x1) ((t2 + x1)^4 + t1^2 t2^2)).
double root_fn_mm_ls(double x1, const DiscretePrior& prior, double x_upper, double rho_sq);

/// Exponential model, maximum likelihood, design {0, x1, x_u}:
///   (1 - e^{t2 x_u} + t2 x_u e^{t2 x1}) / (x1 - x_u + x_u e^{t2 x1} - x1 e^{t2 x_u})
///     - t2 e^{2 t2 x1} / (e^{2 t2 x1} + t1^2 t2^2 rho^2).
double root_fn_exp_ml(double x1, const DiscretePrior& prior, double x_upper, double rho_sq);

struct SolveResult {
  Design design;
  CriterionValue criterion;
  /// "root-equation" or "particle-swarm".
  std::string route;
  /// Every root of the characterizing equation; the design uses the one with
  /// the largest criterion.
  std::vector<double> candidate_roots;
  std::optional<SwarmResult> swarm;
};

/// {x1*, x_u} for Michaelis-Menten, {0, x1*, x_u} for Emax.
Design solve_mm_emax_ml(const DiscretePrior& prior, double x_upper, double rho_sq,
                        ModelKind model, const RootOptions& opts = {});

Design solve_mm_emax_ls(const DiscretePrior& prior, double x_upper, double rho_sq,
                        ModelKind model, const RootOptions& opts = {});

/// {0, x1*, x_u}.
Design solve_exp_ml(const DiscretePrior& prior, double x_upper, double rho_sq,
                    const RootOptions& opts = {});

/// {x0*, x1*, x_u} with (x0*, x1*) found by the particle swarm over
/// 0 <= x0 < x1 < x_u. The bounds and ordering flag of `config` are
/// overwritten.
SolveResult solve_exp_ls(const DiscretePrior& prior, double x_upper, double rho_sq,
                         SwarmConfig config);

/// Dispatches to the right characterization for `model` and `method` and
/// reports how the design was found. The design space must start at 0.
SolveResult solve_saturated(ModelKind model, const DiscretePrior& prior, const DesignSpace& space,
                            EstimationMethod method, const ErrorSpec& err,
                            const SwarmConfig& swarm = {}, const RootOptions& opts = {});

}  // namespace eivdesign
