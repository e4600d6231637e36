#pragma once

#include <functional>
#include <vector>

namespace eivdesign {

/// Interval [lo, hi] on which f changes sign.
struct RootBracket {
  double lo = 0.0;
  double hi = 0.0;
  double f_lo = 0.0;
  double f_hi = 0.0;
};

using ScalarFn = std::function<double(double)>;

/// Uniform scan of `scan_points` nodes over [a, b] (both ends included),
/// returning every adjacent pair with a strict sign change. Nodes where f is
/// not finite are skipped.
std::vector<RootBracket> scan_brackets(const ScalarFn& f, double a, double b, int scan_points);

/// Bisection/secant hybrid: secant steps while they at least halve the
/// bracket, bisection otherwise. Stops once the bracket is narrower than
/// `width_tol` and |f| < `tol`, or when the bracket cannot shrink further.
double refine_root(const ScalarFn& f, RootBracket bracket, double tol, double width_tol);

/// All roots of f on (a, b) found by scanning and refining, ascending.
/// Brackets that straddle a pole rather than a root are discarded.
std::vector<double> find_roots(const ScalarFn& f, double a, double b, int scan_points,
                               double tol = 1e-10);

}  // namespace eivdesign
