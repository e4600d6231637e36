#pragma once

#include <string_view>

#include "eivdesign/types.hpp"

namespace eivdesign {

/// The three dose-response families with a single covariate x >= 0:
///
///   MichaelisMenten  m(x) = t1 x / (t2 + x)          theta = (t1, t2)
///   Emax             m(x) = t0 + t1 x / (t2 + x)     theta = (t0, t1, t2)
///   Exponential      m(x) = t0 + t1 exp(-t2 x)       theta = (t0, t1, t2)
enum class ModelKind { MichaelisMenten, Emax, Exponential };

/// Number of parameters p+1.
int param_count(ModelKind model);

/// Config-file spelling: "michaelis-menten", "emax", "exponential".
std::string_view model_name(ModelKind model);
ModelKind parse_model(std::string_view name);

/// Variances of the response error eta and the covariate error epsilon,
/// assumed uncorrelated.
struct ErrorSpec {
  double sigma_eta_sq = 1.0;
  double sigma_eps_sq = 0.0;

  static ErrorSpec from_ratio(double rho_sq) { return {1.0, rho_sq}; }

  double rho_sq() const { return sigma_eps_sq / sigma_eta_sq; }

  /// Rescaled to sigma_eta_sq = 1 with the same ratio.
  ErrorSpec normalized() const { return from_ratio(rho_sq()); }

  void validate() const;

  friend bool operator==(const ErrorSpec&, const ErrorSpec&) = default;
};

/// Throws DomainError unless theta has the right length and lies in the
/// parameter domain of `model`.
void check_params(ModelKind model, const Vec& theta);

double eval(ModelKind model, double x, const Vec& theta);

/// Gradient of m with respect to theta.
Vec grad_theta(ModelKind model, double x, const Vec& theta);

/// Derivative of m with respect to the covariate.
double dm_dx(ModelKind model, double x, const Vec& theta);

/// sigma_0 = 1 + (dm/dx)^2 and sigma_1 = s_eta^2 + (dm/dx)^2 s_eps^2.
double sigma(ModelKind model, int k, double x, const Vec& theta, const ErrorSpec& err);

}  // namespace eivdesign
