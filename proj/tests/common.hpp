#pragma once

#include <random>
#include <vector>

#include "eivdesign/design.hpp"
#include "eivdesign/tables.hpp"

namespace testing_support {

using eivdesign::ModelKind;
using eivdesign::Vec;

inline Vec vec(std::initializer_list<double> v) {
  Vec out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

inline std::vector<double> to_std(const Vec& v) { return {v.data(), v.data() + v.size()}; }

inline eivdesign::DiscretePrior point_prior(std::initializer_list<double> theta) {
  return eivdesign::DiscretePrior::point(vec(theta));
}
// Random parameters inside each model's domain, in the ranges the
// table priors cover.
inline Vec random_theta(ModelKind model, std::mt19937_64& rng) {
  auto u = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };
  switch (model) {
    case ModelKind::MichaelisMenten: return vec({u(5, 30), u(1, 6)});
    case ModelKind::Emax: return vec({u(0, 5), u(5, 30), u(1, 6)});
    case ModelKind::Exponential: return vec({u(0, 2000), u(10, 120), u(0.01, 0.3)});
  }
  return {};
}

inline double upper_for(ModelKind model) { return model == ModelKind::Exponential ? 35.0 : 80.0; }

// Sorted, well separated points in (lo, hi).
inline std::vector<double> random_points(std::size_t n, double lo, double hi, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(lo, hi);
  while (true) {
    std::vector<double> pts(n);
    for (auto& p : pts) p = u(rng);
    std::sort(pts.begin(), pts.end());
    bool ok = true;
    for (std::size_t i = 1; i < n; ++i) ok = ok && pts[i] - pts[i - 1] > 1e-3 * (hi - lo);
    if (ok) return pts;
  }
}

inline std::vector<double> random_weights(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.1, 1.0);
  std::vector<double> w(n);
  double total = 0;
  for (auto& x : w) total += (x = u(rng));
  for (auto& x : w) x /= total;
  // push the rounding residue into the last weight
  double head = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) head += w[i];
  w.back() = 1.0 - head;
  return w;
}

inline const std::vector<ModelKind>& all_models() {
  static const std::vector<ModelKind> m = {ModelKind::MichaelisMenten, ModelKind::Emax,
                                           ModelKind::Exponential};
  return m;
}

}  // namespace testing_support
