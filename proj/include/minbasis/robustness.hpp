#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "minbasis/eigenstructure.hpp"

namespace minbasis {

/// Radii and bound data for the perturbation guarantees. Fields are absent
/// when the corresponding hypothesis fails for the analyzed matrix.
struct RobustnessReport {
  std::optional<double> minimal_basis_radius;
  int minimal_basis_k = -1;  // smallest k with T_k of full row rank
  std::optional<double> ftsr_radius;
  char ftsr_branch = '-';  // 'a' or 'b'
  std::optional<double> sharp_radius;
  std::optional<double> theta1, theta2;
  char theta_case = '-';  // 'a', 'b' or 'c'
  std::optional<double> dual_radius;
  std::optional<double> classical_lower_bound;
};

namespace detail {

/// sigma_{rows}(T_k) / sqrt(k), the scaled smallest singular value of a
/// full-row-rank trimmed Sylvester matrix.
template <typename Scalar>
double scaled_row_sigma(const PolyMatrix<Scalar>& M, int k) {
  const auto T = build_trimmed(M, k);
  return singular_value(T.data, M.profile().trimmed_rows(k)) / std::sqrt(double(k));
}

/// sigma_{cols}(T_k) / sqrt(k) for the tall matrices below k'.
template <typename Scalar>
double scaled_col_sigma(const PolyMatrix<Scalar>& M, int k) {
  const auto T = build_trimmed(M, k);
  return singular_value(T.data, M.profile().sylvester_cols(k)) / std::sqrt(double(k));
}

}  // namespace detail

/// Radius of the neighborhood in which every matrix stays a minimal basis
/// with full-rank leading row-wise coefficient matrix:
/// sigma_{km + sum di}(T_k) / sqrt(k) at the smallest k with T_k of full row
/// rank (the largest right minimal index).
struct MinimalBasisRadius {
  double radius = 0.0;
  int k = 0;
};

template <typename Scalar>
MinimalBasisRadius minimal_basis_radius(const PolyMatrix<Scalar>& M,
                                        std::optional<double> tol = {}) {
  const bool minimal = certify_minimal_basis(M, tol).value;
  const bool full_leading =
      svd_rank(M.leading_rowwise(), tol).rank == M.rows();
  require(minimal && full_leading, ErrorCode::NotRobustBasis,
          "needs a minimal basis with full-rank leading row-wise coefficients");
  const auto frr = certify_minimal_basis_full_rank(M, tol);
  require(frr.value, ErrorCode::NotRobustBasis,
          "no trimmed Sylvester matrix of full row rank was found");
  return {detail::scaled_row_sigma(M, frr.k), frr.k};
}

/// Radius of the neighborhood in which the full-trimmed-Sylvester-rank
/// property is preserved. Branch 'a' (k' > 1 and t > 0) takes the minimum of
/// the scaled smallest singular values of T_{k'-1} (column side) and T_{k'}
/// (row side); branch 'b' uses T_{k'} alone.
struct FtsrRadius {
  double radius = 0.0;
  char branch = '-';
};

template <typename Scalar>
FtsrRadius ftsr_radius(const PolyMatrix<Scalar>& M, std::optional<double> tol = {}) {
  require(is_ftsr(M, tol).value, ErrorCode::NotFTSR, "matrix is not FTSR");
  const auto& pr = M.profile();
  const int kp = pr.k_prime();
  const double row_side = detail::scaled_row_sigma(M, kp);
  if (kp > 1 && pr.t() > 0)
    return {std::min(detail::scaled_col_sigma(M, kp - 1), row_side), 'a'};
  return {row_side, 'b'};
}

/// Sharp boundary construction for flat T_1 (sum di <= n): the radius
/// sigma_{sum(di+1)}(T_1) is attained by subtracting the smallest singular
/// triplet of T_1 and mapping the deflated matrix back through the T_1
/// layout, which is a bijection onto the coefficient data.
template <typename Scalar>
struct SharpBoundary {
  double radius = 0.0;
  PolyMatrix<Scalar> boundary;
};

namespace detail {

template <typename Scalar>
struct wide_scalar {
  using type = long double;
};
template <typename Real>
struct wide_scalar<std::complex<Real>> {
  using type = std::complex<long double>;
};

}  // namespace detail

template <typename Scalar>
SharpBoundary<Scalar> sharp_radius_and_boundary(const PolyMatrix<Scalar>& M,
                                                std::optional<double> tol = {}) {
  const auto& pr = M.profile();
  require(pr.total_degree() <= pr.n(), ErrorCode::HypothesisFailed,
          "sharpness construction needs sum(di) <= n");
  const auto T1 = build_trimmed(M, 1);
  const int rows = pr.trimmed_rows(1);
  require(svd_rank(T1.data, tol).full_row_rank(rows), ErrorCode::NotFTSR,
          "T_1 must have full row rank");
  const double radius = singular_value(MatrixX<Scalar>(T1.data), rows);

  // Deflate in extended precision: the only error left in the boundary matrix
  // is the final entry rounding, which stays below the default rank tolerance
  // for every size, so the constructed matrix is decidably rank deficient.
  using Wide = typename detail::wide_scalar<Scalar>::type;
  const MatrixX<Wide> T1w = T1.data.template cast<Wide>();
  Eigen::JacobiSVD<MatrixX<Wide>> svd(T1w, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const MatrixX<Wide> deflated =
      T1w - svd.singularValues()(rows - 1) * svd.matrixU().col(rows - 1) *
                svd.matrixV().col(rows - 1).adjoint();

  std::vector<std::vector<RowVecX<Scalar>>> data(static_cast<std::size_t>(pr.rows()));
  for (int i = 0; i < pr.rows(); ++i)
    data[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(pr.degree(i) + 1));
  for (std::size_t r = 0; r < T1.row_map.size(); ++r) {
    const RowOrigin o = T1.row_map[r];
    data[static_cast<std::size_t>(o.matrix_row)][static_cast<std::size_t>(o.block_row)] =
        deflated.row(static_cast<Eigen::Index>(r)).template cast<Scalar>();
  }
  return {radius, PolyMatrix<Scalar>(pr, std::move(data))};
}

/// The neighborhood quantities controlling perturbed dual bases.
struct ThetaBounds {
  double theta1 = 0.0;
  double theta2 = 0.0;
  char theta_case = '-';  // 'a': k'>1, t>0; 'b': k'=1, t>0; 'c': t=0
};

template <typename Scalar>
ThetaBounds theta_bounds(const PolyMatrix<Scalar>& M, std::optional<double> tol = {}) {
  require(is_ftsr(M, tol).value, ErrorCode::NotFTSR, "matrix is not FTSR");
  const auto& pr = M.profile();
  const int kp = pr.k_prime();
  const double mid = detail::scaled_row_sigma(M, kp);
  const double next = detail::scaled_row_sigma(M, kp + 1);
  if (pr.t() == 0) return {std::min(mid, next), next, 'c'};
  if (kp == 1) {
    const double both = std::min(mid, next);
    return {both, both, 'b'};
  }
  const double tall = detail::scaled_col_sigma(M, kp - 1);
  return {std::min({tall, mid, next}), std::min(mid, next), 'a'};
}

/// Grid of sample points: `circles` concentric radii with `points` samples
/// each, optionally plus the origin.
inline std::vector<Complex> make_circle_grid(const std::vector<double>& radii, int points,
                                             bool include_origin = true) {
  std::vector<Complex> grid;
  if (include_origin) grid.emplace_back(0.0, 0.0);
  for (const double r : radii)
    for (int j = 0; j < points; ++j) {
      const double phi = 2.0 * M_PI * j / points;
      grid.emplace_back(r * std::cos(phi), r * std::sin(phi));
    }
  return grid;
}

/// Pointwise lower bound of the classical test: the smallest singular value
/// of T_{d'} bounds sigma_m(M(lambda0)) from below everywhere, and bounds
/// sigma_m of the leading row-wise coefficient matrix.
struct ClassicalBoundCheck {
  double lower_bound = 0.0;
  double min_sampled = 0.0;
  double sigma_m_leading = 0.0;
  bool holds = false;
};

template <typename Scalar>
ClassicalBoundCheck classical_bound_check(const PolyMatrix<Scalar>& M,
                                          const std::vector<Complex>& grid,
                                          std::optional<double> tol = {}) {
  const auto cert = certify_minimal_basis(M, tol);
  const bool full_leading = svd_rank(M.leading_rowwise(), tol).rank == M.rows();
  require(cert.value && full_leading && cert.d_prime >= 1, ErrorCode::PreconditionFailed,
          "needs a minimal basis with full-rank leading row-wise coefficients");
  ClassicalBoundCheck out;
  out.lower_bound = singular_value(build_trimmed(M, cert.d_prime).data,
                                   M.profile().trimmed_rows(cert.d_prime));
  out.min_sampled = classical_check(M, grid, tol).min_sigma_m;
  out.sigma_m_leading = singular_value(
      MatrixX<Scalar>(M.leading_rowwise()), M.rows());
  out.holds = leq_with_ulps(out.lower_bound, out.min_sampled, 8) &&
              leq_with_ulps(out.lower_bound, out.sigma_m_leading, 8);
  return out;
}

/// ||T_1||_2 <= ||T_k||_2 <= sqrt(k) ||T_1||_2, with ulp slack for rounding.
template <typename Scalar>
bool norm_sandwich_check(const PolyMatrix<Scalar>& M, int k) {
  require(k >= 1, ErrorCode::ShapeMismatch, "need k >= 1");
  const double t1 = t1_spectral_norm(M);
  const double tk = spectral_norm(MatrixX<Scalar>(build_trimmed(M, k).data));
  return leq_with_ulps(t1, tk, 8) && leq_with_ulps(tk, std::sqrt(double(k)) * t1, 8);
}

}  // namespace minbasis
