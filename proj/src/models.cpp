#include "eivdesign/models.hpp"

#include <cmath>
#include <string>

#include <fmt/format.h>

namespace eivdesign {

namespace {

constexpr double kPoleTolerance = 1e-12;

void check_covariate(ModelKind model, double x, const Vec& theta) {
  if (!std::isfinite(x) || x < 0.0) {
    throw DomainError(fmt::format("covariate must be finite and non-negative, got {}", x));
  }
  check_params(model, theta);
  if (model != ModelKind::Exponential) {
    const double t2 = theta[theta.size() - 1];
    if (std::abs(t2 + x) < kPoleTolerance) {
      throw DomainError(fmt::format("pole at theta2 + x = 0 (x = {})", x));
    }
  }
}

}  // namespace

int param_count(ModelKind model) {
  return model == ModelKind::MichaelisMenten ? 2 : 3;
}

std::string_view model_name(ModelKind model) {
  switch (model) {
    case ModelKind::MichaelisMenten: return "michaelis-menten";
    case ModelKind::Emax: return "emax";
    case ModelKind::Exponential: return "exponential";
  }
  return "unknown";
}

ModelKind parse_model(std::string_view name) {
  if (name == "michaelis-menten") return ModelKind::MichaelisMenten;
  if (name == "emax") return ModelKind::Emax;
  if (name == "exponential") return ModelKind::Exponential;
  throw InvalidArgument(fmt::format("unknown model '{}'", name));
}

void ErrorSpec::validate() const {
  if (!(sigma_eta_sq > 0.0) || !std::isfinite(sigma_eta_sq)) {
    throw InvalidArgument(fmt::format("sigma_eta_sq must be positive, got {}", sigma_eta_sq));
  }
  if (!(sigma_eps_sq >= 0.0) || !std::isfinite(sigma_eps_sq)) {
    throw InvalidArgument(fmt::format("sigma_eps_sq must be non-negative, got {}", sigma_eps_sq));
  }
}

void check_params(ModelKind model, const Vec& theta) {
  if (theta.size() != param_count(model)) {
    throw DomainError(fmt::format("{} expects {} parameters, got {}", model_name(model),
                                  param_count(model), theta.size()));
  }
  for (double t : theta) {
    if (!std::isfinite(t)) throw DomainError("non-finite parameter");
  }
  switch (model) {
    case ModelKind::MichaelisMenten:
      if (!(theta[0] > 0.0 && theta[1] > 0.0)) {
        throw DomainError("michaelis-menten requires theta1 > 0 and theta2 > 0");
      }
      break;
    case ModelKind::Emax:
      if (!(theta[0] >= 0.0 && theta[1] > 0.0 && theta[2] > 0.0)) {
        throw DomainError("emax requires theta0 >= 0, theta1 > 0 and theta2 > 0");
      }
      break;
    case ModelKind::Exponential:
      if (!(theta[0] >= 0.0) || theta[2] == 0.0) {
        throw DomainError("exponential requires theta0 >= 0 and theta2 != 0");
      }
      break;
  }
}

double eval(ModelKind model, double x, const Vec& theta) {
  check_covariate(model, x, theta);
  switch (model) {
    case ModelKind::MichaelisMenten:
      return theta[0] * x / (theta[1] + x);
    case ModelKind::Emax:
      return theta[0] + theta[1] * x / (theta[2] + x);
    case ModelKind::Exponential:
      return theta[0] + theta[1] * std::exp(-theta[2] * x);
  }
  return 0.0;
}

Vec grad_theta(ModelKind model, double x, const Vec& theta) {
  check_covariate(model, x, theta);
  Vec g(param_count(model));
  switch (model) {
    case ModelKind::MichaelisMenten: {
      const double d = theta[1] + x;
      g << x / d, -theta[0] * x / (d * d);
      break;
    }
    case ModelKind::Emax: {
      const double d = theta[2] + x;
      g << 1.0, x / d, -theta[1] * x / (d * d);
      break;
    }
    case ModelKind::Exponential: {
      const double e = std::exp(-theta[2] * x);
      g << 1.0, e, -theta[1] * x * e;
      break;
    }
  }
  return g;
}

double dm_dx(ModelKind model, double x, const Vec& theta) {
  check_covariate(model, x, theta);
  switch (model) {
    case ModelKind::MichaelisMenten: {
      const double d = theta[1] + x;
      return theta[0] * theta[1] / (d * d);
    }
    case ModelKind::Emax: {
      const double d = theta[2] + x;
      return theta[1] * theta[2] / (d * d);
    }
    case ModelKind::Exponential:
      return -theta[1] * theta[2] * std::exp(-theta[2] * x);
  }
  return 0.0;
}

double sigma(ModelKind model, int k, double x, const Vec& theta, const ErrorSpec& err) {
  const double d = dm_dx(model, x, theta);
  switch (k) {
    case 0: return 1.0 + d * d;
    case 1: return err.sigma_eta_sq + d * d * err.sigma_eps_sq;
    default: throw InvalidArgument(fmt::format("sigma index must be 0 or 1, got {}", k));
  }
}

}  // namespace eivdesign
