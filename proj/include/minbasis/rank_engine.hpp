#pragma once

#include <Eigen/Core>
#include <Eigen/SVD>
#include <limits>
#include <optional>
#include <vector>

#include "minbasis/errors.hpp"
#include "minbasis/numeric.hpp"

namespace minbasis {

/// Outcome of a numerical rank decision. gap_ratio = sigma_rank /
/// sigma_{rank+1} diagnoses how well separated the decision is (infinity when
/// the matrix has full rank).
struct RankDecision {
  Eigen::Index rank = 0;
  std::vector<double> singular_values;  // nonincreasing
  double tolerance = 0.0;               // threshold actually used
  double gap_ratio = std::numeric_limits<double>::infinity();

  bool full_row_rank(Eigen::Index rows) const { return rank == rows; }
  bool full_column_rank(Eigen::Index cols) const { return rank == cols; }
};

namespace detail {

inline RankDecision decide_from_singular_values(const Eigen::VectorXd& sv,
                                                Eigen::Index rows, Eigen::Index cols,
                                                std::optional<double> tol) {
  RankDecision out;
  out.singular_values.assign(sv.data(), sv.data() + sv.size());
  const double s1 = sv.size() > 0 ? sv(0) : 0.0;
  const double eps = std::numeric_limits<double>::epsilon();
  out.tolerance = tol ? *tol : (s1 > 0.0 ? static_cast<double>(std::max(rows, cols)) * s1 * eps : eps);
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > out.tolerance) ++r;
  out.rank = r;
  if (r < sv.size() && r > 0 && sv(r) > 0.0)
    out.gap_ratio = sv(r - 1) / sv(r);
  return out;
}

}  // namespace detail

/// Numerical rank by SVD. Default tolerance: max(rows, cols) * sigma_1 *
/// machine epsilon (epsilon alone for a zero matrix).
template <typename Scalar>
RankDecision svd_rank(const MatrixX<Scalar>& A, std::optional<double> tol = {}) {
  require(A.rows() > 0 && A.cols() > 0, ErrorCode::ShapeMismatch, "rank of an empty matrix");
  Eigen::JacobiSVD<MatrixX<Scalar>> svd(A);
  require(svd.info() == Eigen::Success, ErrorCode::ConvergenceFailure,
          "SVD did not converge");
  return detail::decide_from_singular_values(svd.singularValues(), A.rows(), A.cols(), tol);
}

/// Orthonormal basis of the right null space, using the svd_rank tolerance
/// rule. Columns of the returned matrix span ker(A).
template <typename Scalar>
MatrixX<Scalar> svd_kernel(const MatrixX<Scalar>& A, std::optional<double> tol = {}) {
  Eigen::JacobiSVD<MatrixX<Scalar>> svd(A, Eigen::ComputeFullV);
  require(svd.info() == Eigen::Success, ErrorCode::ConvergenceFailure,
          "SVD did not converge");
  const RankDecision d =
      detail::decide_from_singular_values(svd.singularValues(), A.rows(), A.cols(), tol);
  return svd.matrixV().rightCols(A.cols() - d.rank);
}

/// sigma_1(A).
template <typename Scalar>
double spectral_norm(const MatrixX<Scalar>& A) {
  Eigen::JacobiSVD<MatrixX<Scalar>> svd(A);
  return svd.singularValues()(0);
}

/// j-th singular value, 1-based as in sigma_j(A); bounds-checked.
template <typename Scalar>
double singular_value(const MatrixX<Scalar>& A, Eigen::Index j) {
  require(j >= 1 && j <= std::min(A.rows(), A.cols()), ErrorCode::ShapeMismatch,
          "singular value index out of range");
  Eigen::JacobiSVD<MatrixX<Scalar>> svd(A);
  return svd.singularValues()(j - 1);
}

/// Minimum-Frobenius-norm solution of A X = B for full-row-rank A, via the
/// SVD pseudoinverse. The residual must stay below 1e-10 * ||B||_F.
template <typename Scalar>
MatrixX<Scalar> min_norm_solve(const MatrixX<Scalar>& A, const MatrixX<Scalar>& B,
                               std::optional<double> tol = {}) {
  require(A.rows() == B.rows(), ErrorCode::ShapeMismatch, "A and B row counts differ");
  Eigen::JacobiSVD<MatrixX<Scalar>> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  require(svd.info() == Eigen::Success, ErrorCode::ConvergenceFailure,
          "SVD did not converge");
  const RankDecision d =
      detail::decide_from_singular_values(svd.singularValues(), A.rows(), A.cols(), tol);
  require(d.rank == A.rows(), ErrorCode::RankDeficient,
          "min-norm solve requires full row rank");
  MatrixX<Scalar> X = svd.matrixV() *
                      svd.singularValues().cwiseInverse().asDiagonal() *
                      (svd.matrixU().adjoint() * B);
  const double resid = (A * X - B).norm();
  require(resid <= 1e-10 * std::max(B.norm(), 1e-300), ErrorCode::ResidualTooLarge,
          "least-squares residual exceeds the contract");
  return X;
}

}  // namespace minbasis
