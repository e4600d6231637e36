#include "eivdesign/information.hpp"

#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <Eigen/QR>

namespace eivdesign {

namespace {

// Relative floor on det(m) / prod(diag m). Hadamard's inequality bounds the
// ratio by 1 for PSD matrices; anything below this is rank-deficient in
// double precision.
constexpr double kSingularRatio = 1e-13;

template <class WeightFn>
InfoMatrix accumulate(const Design& design, ModelKind model, const Vec& theta, WeightFn&& factor) {
  const int n = param_count(model);
  InfoMatrix m = InfoMatrix::Zero(n, n);
  const auto& points = design.points();
  const auto& weights = design.weights();
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Vec g = grad_theta(model, points[i], theta);
    m.noalias() += (weights[i] * factor(points[i])) * (g * g.transpose());
  }
  return m;
}

// Relative floor on prod |r_ii| / prod ||a_j|| for the gradient rows A.
constexpr double kRootSingularRatio = 1e-14;

double row_factor(ModelKind model, double x, const Vec& theta, const ErrorSpec& err,
                  InfoKind kind) {
  switch (kind) {
    case InfoKind::ML:
      return 1.0 / sigma(model, 1, x, theta, err);
    case InfoKind::D0:
      return 1.0 / sigma(model, 0, x, theta, err);
    case InfoKind::D1:
      return sigma(model, 1, x, theta, err) / sigma(model, 0, x, theta, err);
  }
  return 0.0;
}

}  // namespace

namespace {

template <class M>
std::optional<M> root_impl(const Design& design, ModelKind model, const Vec& theta,
                           const ErrorSpec& err, InfoKind kind) {
  using Scalar = typename M::Scalar;
  using RowsT = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, 0, Eigen::Dynamic, kMaxParams>;
  const int p = param_count(model);
  const auto n = static_cast<Eigen::Index>(design.size());
  if (n < p) return std::nullopt;
  const auto& points = design.points();
  const auto& weights = design.weights();

  auto fill = [&](auto& a) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto k = static_cast<std::size_t>(i);
      const Scalar s = std::sqrt(static_cast<Scalar>(weights[k]) *
                                 static_cast<Scalar>(row_factor(model, points[k], theta, err, kind)));
      a.row(i) = s * grad_theta(model, points[k], theta).transpose().template cast<Scalar>();
    }
  };
  auto finish = [&](const auto& a, const auto& qr) -> std::optional<M> {
    M r = qr.matrixQR().topRows(p).template triangularView<Eigen::Upper>();
    Scalar ratio = 1;
    for (int j = 0; j < p; ++j) {
      const Scalar norm = a.col(j).norm();
      if (!(norm > 0) || !std::isfinite(static_cast<double>(norm))) return std::nullopt;
      ratio *= std::abs(r(j, j)) / norm;
    }
    if (!(ratio > kRootSingularRatio)) return std::nullopt;
    return r;
  };

  if (n == p) {
    // saturated designs stay on fixed-size storage
    M a(p, p);
    fill(a);
    return finish(a, Eigen::HouseholderQR<M>(a));
  }
  RowsT a(n, p);
  fill(a);
  return finish(a, Eigen::HouseholderQR<RowsT>(a));
}

}  // namespace

std::optional<Mat> info_root(const Design& design, ModelKind model, const Vec& theta,
                             const ErrorSpec& err, InfoKind kind) {
  return root_impl<Mat>(design, model, theta, err, kind);
}

std::optional<MatExt> info_root_extended(const Design& design, ModelKind model, const Vec& theta,
                                         const ErrorSpec& err, InfoKind kind) {
  return root_impl<MatExt>(design, model, theta, err, kind);
}

double log_det_root(const Mat& r) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < r.rows(); ++i) s += std::log(std::abs(r(i, i)));
  return 2.0 * s;
}

double quad_inverse_root(const Mat& r, const Vec& g) {
  const Vec y = r.transpose().triangularView<Eigen::Lower>().solve(g);
  return y.squaredNorm();
}

double quad_inverse_root(const MatExt& r, const Vec& g) {
  using VecExt = Eigen::Matrix<long double, Eigen::Dynamic, 1, 0, kMaxParams, 1>;
  const VecExt y = r.transpose().triangularView<Eigen::Lower>().solve(g.cast<long double>());
  return static_cast<double>(y.squaredNorm());
}

InfoMatrix info_ml(const Design& design, ModelKind model, const Vec& theta, const ErrorSpec& err) {
  return accumulate(design, model, theta,
                    [&](double x) { return 1.0 / sigma(model, 1, x, theta, err); });
}

InfoMatrix d_matrix(const Design& design, ModelKind model, const Vec& theta,
                    const ErrorSpec& err, int k) {
  if (k != 0 && k != 1) throw InvalidArgument("D-matrix index must be 0 or 1");
  return accumulate(design, model, theta, [&](double x) {
    const double s0 = sigma(model, 0, x, theta, err);
    return k == 0 ? 1.0 / s0 : sigma(model, 1, x, theta, err) / s0;
  });
}

InfoMatrix info_ls(const Design& design, ModelKind model, const Vec& theta, const ErrorSpec& err) {
  const InfoMatrix d0 = d_matrix(design, model, theta, err, 0);
  const auto r1 = info_root(design, model, theta, err, InfoKind::D1);
  if (!r1) throw SingularMatrixError("D_1 is singular");
  // D_0 D_1^{-1} D_0 = Y^T Y with R_1^T Y = D_0
  const Mat y = r1->transpose().triangularView<Eigen::Lower>().solve(d0);
  const InfoMatrix m = y.transpose() * y;
  return 0.5 * (m + m.transpose());
}

double determinant(const Mat& m) {
  switch (m.rows()) {
    case 0:
      return 1.0;
    case 1:
      return m(0, 0);
    case 2:
      return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    case 3:
      return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
             m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
             m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    default:
      return determinant_lu(m);
  }
}

double determinant_lu(const Mat& m) {
  return Eigen::PartialPivLU<Eigen::MatrixXd>(Eigen::MatrixXd(m)).determinant();
}

bool is_positive_definite(const Mat& m) {
  const double det = determinant(m);
  if (!(det > 0.0) || !std::isfinite(det)) return false;
  double diag = 1.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (!(m(i, i) > 0.0)) return false;
    diag *= m(i, i);
  }
  return det > kSingularRatio * diag;
}

std::optional<double> log_det(const Mat& m) {
  if (!is_positive_definite(m)) return std::nullopt;
  return std::log(determinant(m));
}

Mat inverse_pd(const Mat& m) {
  if (!is_positive_definite(m)) {
    throw SingularMatrixError("matrix is singular or not positive definite");
  }
  Eigen::LDLT<Mat> ldlt(m);
  if (ldlt.info() != Eigen::Success) {
    throw SingularMatrixError("LDLT factorization failed");
  }
  const Mat inv = ldlt.solve(Mat::Identity(m.rows(), m.cols()));
  return 0.5 * (inv + inv.transpose());
}

}  // namespace eivdesign
