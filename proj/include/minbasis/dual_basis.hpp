#pragma once

#include <Eigen/QR>
#include <optional>
#include <utility>
#include <vector>

#include "minbasis/robustness.hpp"

namespace minbasis {

/// A dual minimal basis N of the analyzed matrix M: n rows of width m+n,
/// with row degrees equal to the right minimal indices of M (ascending).
template <typename Scalar>
struct DualBasis {
  PolyMatrix<Scalar> basis;
  std::vector<int> source_indices;
};

/// S_1(P) with P viewed in F[lambda]_w: the (w+1)-block stack of the full
/// coefficient matrices P_0,...,P_w.
template <typename Scalar>
MatrixX<Scalar> coefficient_stack(const PolyMatrix<Scalar>& P, int w) {
  MatrixX<Scalar> out = MatrixX<Scalar>::Zero(Eigen::Index(w + 1) * P.rows(), P.width());
  for (int j = 0; j <= w; ++j)
    out.middleRows(Eigen::Index(j) * P.rows(), P.rows()) = P.coefficient_matrix(j);
  return out;
}

namespace detail {

/// Stack of the transposed coefficients of rows [row0, row0+count) of N,
/// bounded at degree e: column c is [N_{0,row0+c} ; ... ; N_{e,row0+c}]^T.
template <typename Scalar>
MatrixX<Scalar> transposed_coeff_stack(const PolyMatrix<Scalar>& N, int row0, int count,
                                       int e) {
  const int w = N.width();
  MatrixX<Scalar> out = MatrixX<Scalar>::Zero(Eigen::Index(e + 1) * w, count);
  for (int j = 0; j <= e; ++j)
    for (int c = 0; c < count; ++c)
      out.block(Eigen::Index(j) * w, c, w, 1) = N.coeff_or_zero(row0 + c, j).transpose();
  return out;
}

/// Columns are the coefficient stacks of lambda^s v(lambda), s = 0..k-1-e,
/// for every already-selected null vector v, written in the k-block layout.
template <typename Scalar>
MatrixX<Scalar> shift_stack(const std::vector<std::pair<int, std::vector<VectorX<Scalar>>>>&
                                selected,
                            int k, int w) {
  int cols = 0;
  for (const auto& [e, blocks] : selected) cols += k - e;
  MatrixX<Scalar> out = MatrixX<Scalar>::Zero(Eigen::Index(k) * w, cols);
  int c = 0;
  for (const auto& [e, blocks] : selected)
    for (int s = 0; s + e <= k - 1; ++s, ++c)
      for (int j = 0; j <= e; ++j)
        out.block(Eigen::Index(s + j) * w, c, w, 1) = blocks[static_cast<std::size_t>(j)];
  return out;
}

}  // namespace detail

/// Extracts a dual minimal basis from the kernels of T_1, T_2, ...: at stage
/// k, the kernel vectors of T_k orthogonal to every lambda-shift of the
/// vectors already selected have exact degree k-1; alpha_{k-1} of them are
/// new rows. Requires a certified minimal basis.
template <typename Scalar>
DualBasis<Scalar> compute_dual(const PolyMatrix<Scalar>& M, std::optional<double> tol = {}) {
  require(certify_minimal_basis(M, tol).value, ErrorCode::MinimalityRequired,
          "dual extraction needs a certified minimal basis");
  const EigenstructureReport rep = minimal_indices(M, tol);
  const int w = M.width();
  require(rep.d_prime >= 1, ErrorCode::ExtractionFailure,
          "all right minimal indices are zero; the dual basis is constant and "
          "falls outside the degree-profile domain");

  std::vector<std::pair<int, std::vector<VectorX<Scalar>>>> selected;
  for (int k = 1; k <= rep.d_prime + 1; ++k) {
    const int want = rep.alpha[static_cast<std::size_t>(k - 1)];
    if (want == 0) continue;

    const MatrixX<Scalar> K = svd_kernel(MatrixX<Scalar>(build_trimmed(M, k).data), tol);
    const int n_k = k * w - rep.r[static_cast<std::size_t>(k - 1)];
    require(static_cast<int>(K.cols()) == n_k, ErrorCode::ExtractionFailure,
            "kernel dimension disagrees with the rank sequence");

    MatrixX<Scalar> picked;
    if (selected.empty()) {
      require(static_cast<int>(K.cols()) == want, ErrorCode::ExtractionFailure,
              "first-stage kernel dimension disagrees with alpha");
      picked = K;
    } else {
      const MatrixX<Scalar> W = detail::shift_stack(selected, k, w);
      Eigen::HouseholderQR<MatrixX<Scalar>> qr(W);
      const MatrixX<Scalar> Q =
          qr.householderQ() * MatrixX<Scalar>::Identity(W.rows(), W.cols());
      const MatrixX<Scalar> Z = svd_kernel(MatrixX<Scalar>(Q.adjoint() * K), tol);
      require(static_cast<int>(Z.cols()) == want, ErrorCode::ExtractionFailure,
              "deflated kernel dimension disagrees with alpha");
      picked = K * Z;
    }

    for (Eigen::Index c = 0; c < picked.cols(); ++c) {
      std::vector<VectorX<Scalar>> blocks;
      blocks.reserve(static_cast<std::size_t>(k));
      for (int j = 0; j < k; ++j) blocks.push_back(picked.col(c).segment(Eigen::Index(j) * w, w));
      require(blocks.back().norm() > 1e-10, ErrorCode::ExtractionFailure,
              "selected kernel vector lacks its leading coefficient");
      selected.emplace_back(k - 1, std::move(blocks));
    }
  }

  std::vector<int> degrees;
  std::vector<std::vector<RowVecX<Scalar>>> rows;
  for (const auto& [e, blocks] : selected) {
    degrees.push_back(e);
    std::vector<RowVecX<Scalar>> row;
    for (const auto& b : blocks) row.push_back(b.transpose());
    rows.push_back(std::move(row));
  }
  PolyMatrix<Scalar> N(DegreeProfile(degrees, w), std::move(rows));
  return {std::move(N), std::move(degrees)};
}

/// Residual and certificates of the duality relation M(lambda) N(lambda)^T = 0.
struct DualityCheck {
  bool value = false;
  double residual = 0.0;
  bool m_minimal = false;
  bool n_minimal = false;
  bool degree_sum_ok = false;
};

template <typename Scalar>
DualityCheck verify_duality(const PolyMatrix<Scalar>& M, const PolyMatrix<Scalar>& N,
                            std::optional<double> tol = {}) {
  require(M.width() == N.width(), ErrorCode::ShapeMismatch, "widths differ");
  require(N.rows() == M.width() - M.rows(), ErrorCode::ShapeMismatch,
          "the dual candidate must have n rows");

  const int dM = M.profile().max_degree(), dN = N.profile().max_degree();
  double worst = 0.0;
  for (int j = 0; j <= dM + dN; ++j) {
    MatrixX<Scalar> C = MatrixX<Scalar>::Zero(M.rows(), N.rows());
    for (int p = std::max(0, j - dN); p <= std::min(j, dM); ++p)
      C += M.coefficient_matrix(p) * N.coefficient_matrix(j - p).transpose();
    worst = std::max(worst, C.norm());
  }

  DualityCheck out;
  const double denom = t1_frobenius_norm(M) * t1_frobenius_norm(N);
  out.residual = denom > 0.0 ? worst / denom : worst;
  out.m_minimal = certify_minimal_basis(M, tol).value;
  out.n_minimal = certify_minimal_basis(N, tol).value;
  int eta = 0, eps = 0;
  for (int i = 0; i < M.rows(); ++i) eta += std::max(0, M.exact_row_degree(i));
  for (int i = 0; i < N.rows(); ++i) eps += std::max(0, N.exact_row_degree(i));
  out.degree_sum_ok = eta == eps;
  out.value = out.residual <= 1e-10 && out.m_minimal && out.n_minimal && out.degree_sum_ok;
  return out;
}

/// Right-hand side of the dual perturbation neighborhood,
/// (1/2) theta_1(M) sigma_n(N_hr) / ||S_1(N)||_F.
template <typename Scalar>
double dual_perturbation_radius(const PolyMatrix<Scalar>& M, const DualBasis<Scalar>& N,
                                std::optional<double> tol = {}) {
  const ThetaBounds th = theta_bounds(M, tol);
  const double sn = singular_value(MatrixX<Scalar>(N.basis.highest_row_degree()),
                                   N.basis.rows());
  const double s1n = coefficient_stack(N.basis, M.profile().k_prime()).norm();
  return 0.5 * th.theta1 * sn / s1n;
}

/// Result of transporting a dual basis through a perturbation of M.
template <typename Scalar>
struct DualPerturbation {
  DualBasis<Scalar> perturbed;
  double rho2 = 0.0;         // spectral distance between M and Mt
  double dual_radius = 0.0;  // admissible neighborhood
  double rel_change = 0.0;   // ||S_1(N) - S_1(Nt)||_F / ||S_1(N)||_F
  double bound = 0.0;        // (2 / theta_2) * rho2
  bool bound_holds = false;
};

/// Perturbed dual basis via the minimum-norm corrections
/// T_{k'}(Mt) S_1(dX^T) = -T_{k'}(dM) S_1(X^T) and the analogous degree-k'
/// system for the Y part, where N = [X; Y] splits by row degree.
template <typename Scalar>
DualPerturbation<Scalar> perturb_dual(const PolyMatrix<Scalar>& M, const DualBasis<Scalar>& N,
                                      const PolyMatrix<Scalar>& Mt,
                                      std::optional<double> tol = {}) {
  require(M.profile() == Mt.profile(), ErrorCode::ProfileMismatch,
          "perturbation must stay in the profile space");
  require(is_ftsr(M, tol).value, ErrorCode::NotFTSR, "base matrix must be FTSR");

  const auto& pr = M.profile();
  const int kp = pr.k_prime(), t = pr.t(), n = pr.n(), w = pr.width();
  for (int i = 0; i < n; ++i)
    require(N.basis.profile().degree(i) == (i < t ? kp - 1 : kp), ErrorCode::ShapeMismatch,
            "dual rows must split into t of degree k'-1 and n-t of degree k'");

  const ThetaBounds th = theta_bounds(M, tol);
  const double s1n = coefficient_stack(N.basis, kp).norm();
  DualPerturbation<Scalar> out{N, 0.0, 0.0, 0.0, 0.0, false};
  out.dual_radius = dual_perturbation_radius(M, N, tol);
  out.rho2 = distance_spectral(M, Mt);
  require(out.rho2 < out.dual_radius, ErrorCode::OutsideNeighborhood,
          "perturbation leaves the admissible dual neighborhood");

  const PolyMatrix<Scalar> dM = Mt - M;
  double change_sq = 0.0;

  std::vector<std::vector<RowVecX<Scalar>>> rows(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= N.basis.profile().degree(i); ++j)
      rows[static_cast<std::size_t>(i)].push_back(N.basis.coeff(i, j));

  if (t > 0) {
    const MatrixX<Scalar> A = build_trimmed(Mt, kp).data;
    require(svd_rank(A, tol).full_row_rank(pr.trimmed_rows(kp)), ErrorCode::RankDeficient,
            "T_{k'}(Mt) lost full row rank inside the neighborhood");
    const MatrixX<Scalar> B = -(build_trimmed(dM, kp).data *
                                detail::transposed_coeff_stack(N.basis, 0, t, kp - 1));
    const MatrixX<Scalar> SX = min_norm_solve(A, B, tol);
    change_sq += SX.squaredNorm();
    for (int c = 0; c < t; ++c)
      for (int j = 0; j <= kp - 1; ++j)
        rows[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)] +=
            SX.block(Eigen::Index(j) * w, c, w, 1).transpose();
  }
  {
    const MatrixX<Scalar> A = build_trimmed(Mt, kp + 1).data;
    require(svd_rank(A, tol).full_row_rank(pr.trimmed_rows(kp + 1)), ErrorCode::RankDeficient,
            "T_{k'+1}(Mt) lost full row rank inside the neighborhood");
    const MatrixX<Scalar> B = -(build_trimmed(dM, kp + 1).data *
                                detail::transposed_coeff_stack(N.basis, t, n - t, kp));
    const MatrixX<Scalar> SY = min_norm_solve(A, B, tol);
    change_sq += SY.squaredNorm();
    for (int c = 0; c < n - t; ++c)
      for (int j = 0; j <= kp; ++j)
        rows[static_cast<std::size_t>(t + c)][static_cast<std::size_t>(j)] +=
            SY.block(Eigen::Index(j) * w, c, w, 1).transpose();
  }

  out.perturbed =
      DualBasis<Scalar>{PolyMatrix<Scalar>(N.basis.profile(), std::move(rows)),
                        N.source_indices};
  out.rel_change = std::sqrt(change_sq) / s1n;
  out.bound = 2.0 / th.theta2 * out.rho2;
  out.bound_holds = leq_with_ulps(out.rel_change, out.bound, 8);

  const DualityCheck dc = verify_duality(Mt, out.perturbed.basis, tol);
  require(dc.value, ErrorCode::DualityLost,
          "perturbed pair failed the duality certificate");
  return out;
}

/// Full robustness report; fields whose hypotheses fail stay absent.
/// Hypothesis-kind failures are recorded as n/a, numerical failures propagate.
template <typename Scalar>
RobustnessReport build_robustness_report(const PolyMatrix<Scalar>& M,
                                         const std::vector<Complex>& grid,
                                         std::optional<double> tol = {}) {
  RobustnessReport rep;
  auto guard = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Numerical) throw;
    }
  };
  guard([&] {
    const auto r = minimal_basis_radius(M, tol);
    rep.minimal_basis_radius = r.radius;
    rep.minimal_basis_k = r.k;
  });
  guard([&] {
    const auto f = ftsr_radius(M, tol);
    rep.ftsr_radius = f.radius;
    rep.ftsr_branch = f.branch;
  });
  guard([&] { rep.sharp_radius = sharp_radius_and_boundary(M, tol).radius; });
  guard([&] {
    const auto th = theta_bounds(M, tol);
    rep.theta1 = th.theta1;
    rep.theta2 = th.theta2;
    rep.theta_case = th.theta_case;
  });
  guard([&] {
    const auto N = compute_dual(M, tol);
    rep.dual_radius = dual_perturbation_radius(M, N, tol);
  });
  guard([&] { rep.classical_lower_bound = classical_bound_check(M, grid, tol).lower_bound; });
  return rep;
}

}  // namespace minbasis
