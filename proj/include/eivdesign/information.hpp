#pragma once

#include <optional>

#include "eivdesign/design.hpp"
#include "eivdesign/models.hpp"
#include "eivdesign/types.hpp"

namespace eivdesign {

/// Symmetric (p+1)x(p+1) information-type matrix.
using InfoMatrix = Mat;

/// Maximum likelihood information: sum_i w_i g(x_i) g(x_i)^T / sigma_1(x_i).
InfoMatrix info_ml(const Design& design, ModelKind model, const Vec& theta, const ErrorSpec& err);

/// D_k = sum_i w_i sigma_1(x_i)^k / sigma_0(x_i) g(x_i) g(x_i)^T, k in {0, 1}.
InfoMatrix d_matrix(const Design& design, ModelKind model, const Vec& theta,
                    const ErrorSpec& err, int k);

/// Least squares information D_0 D_1^{-1} D_0, symmetrized.
/// Throws SingularMatrixError if D_1 is not positive definite.
InfoMatrix info_ls(const Design& design, ModelKind model, const Vec& theta, const ErrorSpec& err);

/// Which information-type matrix a root factor stands for.
enum class InfoKind { ML, D0, D1 };

/// Upper-triangular R with R^T R equal to info_ml (ML) or d_matrix (D0, D1),
/// from a QR decomposition of the weighted gradient rows sqrt(w_i c(x_i)) g(x_i)^T.
/// Never forms the matrix itself, so its condition number is not squared.
/// nullopt when the rows are numerically rank-deficient.
std::optional<Mat> info_root(const Design& design, ModelKind model, const Vec& theta,
                             const ErrorSpec& err, InfoKind kind);

/// Same factor in extended precision, for sensitivity evaluations where the
/// solve error would otherwise grow with the squared condition number.
using MatExt = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxParams, kMaxParams>;
std::optional<MatExt> info_root_extended(const Design& design, ModelKind model, const Vec& theta,
                                         const ErrorSpec& err, InfoKind kind);

/// log det(R^T R) = 2 sum log |r_ii|.
double log_det_root(const Mat& r);

/// g^T (R^T R)^{-1} g by one triangular solve.
double quad_inverse_root(const Mat& r, const Vec& g);
double quad_inverse_root(const MatExt& r, const Vec& g);

/// Determinant by explicit expansion for sizes up to 3.
double determinant(const Mat& m);

/// Determinant through an LU factorization; the reference path for tests.
double determinant_lu(const Mat& m);

/// log det(m), or nullopt when the determinant is not positive.
std::optional<double> log_det(const Mat& m);

/// True when `m` is numerically positive definite: positive determinant that
/// is not negligible against the product of its diagonal.
bool is_positive_definite(const Mat& m);

/// Inverse of a positive definite matrix; throws SingularMatrixError otherwise.
Mat inverse_pd(const Mat& m);

}  // namespace eivdesign
