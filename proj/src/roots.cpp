#include "eivdesign/roots.hpp"

#include <algorithm>
#include <cmath>

#include "eivdesign/types.hpp"

namespace eivdesign {

std::vector<RootBracket> scan_brackets(const ScalarFn& f, double a, double b, int scan_points) {
  if (scan_points < 2) throw InvalidArgument("root scan needs at least two points");
  if (!(a < b)) throw InvalidArgument("root scan needs a < b");

  std::vector<RootBracket> brackets;
  bool have_prev = false;
  double x_prev = a;
  double f_prev = 0.0;
  const double step = (b - a) / static_cast<double>(scan_points - 1);
  for (int i = 0; i < scan_points; ++i) {
    const double x = (i == scan_points - 1) ? b : a + i * step;
    const double fx = f(x);
    if (!std::isfinite(fx)) {
      have_prev = false;
      continue;
    }
    if (have_prev && ((f_prev < 0.0 && fx > 0.0) || (f_prev > 0.0 && fx < 0.0))) {
      brackets.push_back({x_prev, x, f_prev, fx});
    } else if (fx == 0.0) {
      brackets.push_back({x, x, 0.0, 0.0});
    }
    x_prev = x;
    f_prev = fx;
    have_prev = true;
  }
  return brackets;
}

double refine_root(const ScalarFn& f, RootBracket br, double tol, double width_tol) {
  if (br.f_lo == 0.0) return br.lo;
  if (br.f_hi == 0.0) return br.hi;
  if (!(br.f_lo * br.f_hi < 0.0)) throw InvalidArgument("bracket has no sign change");

  double lo = br.lo, hi = br.hi, f_lo = br.f_lo, f_hi = br.f_hi;
  double prev_width = hi - lo;
  bool use_secant = true;
  for (int iter = 0; iter < 400; ++iter) {
    double x = 0.5 * (lo + hi);
    if (use_secant) {
      const double s = hi - f_hi * (hi - lo) / (f_hi - f_lo);
      if (s > lo && s < hi) x = s;
    }
    if (x <= lo || x >= hi) break;  // bracket at floating-point resolution

    const double fx = f(x);
    if (fx == 0.0) return x;
    if ((fx < 0.0) == (f_lo < 0.0)) {
      lo = x;
      f_lo = fx;
    } else {
      hi = x;
      f_hi = fx;
    }
    const double width = hi - lo;
    if (width <= width_tol && std::min(std::abs(f_lo), std::abs(f_hi)) < tol) break;
    use_secant = width <= 0.5 * prev_width;
    prev_width = width;
  }
  return std::abs(f_lo) <= std::abs(f_hi) ? lo : hi;
}

std::vector<double> find_roots(const ScalarFn& f, double a, double b, int scan_points,
                               double tol) {
  const double width_tol = 1e-10 * (b - a);
  std::vector<double> roots;
  for (const auto& br : scan_brackets(f, a, b, scan_points)) {
    const double r = refine_root(f, br, tol, width_tol);
    const double fr = f(r);
    // a sign change across a pole blows up instead of vanishing
    if (!std::isfinite(fr) || std::abs(fr) > std::max(std::abs(br.f_lo), std::abs(br.f_hi))) {
      continue;
    }
    if (roots.empty() || r - roots.back() > width_tol) roots.push_back(r);
  }
  return roots;
}

}  // namespace eivdesign
