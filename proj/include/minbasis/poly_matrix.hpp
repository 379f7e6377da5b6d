#pragma once

#include <Eigen/Core>
#include <Eigen/SVD>
#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include "minbasis/degree_profile.hpp"
#include "minbasis/errors.hpp"
#include "minbasis/numeric.hpp"

namespace minbasis {

/// An m x (m+n) polynomial matrix stored as per-row coefficient vectors
/// R_{i,0},...,R_{i,di}, row i bounded by the profile degree di. The profile
/// is a bound, not the exact degree: trailing coefficient vectors may be zero.
template <typename Scalar>
class PolyMatrix {
 public:
  using Coeff = RowVecX<Scalar>;

  PolyMatrix(DegreeProfile profile, std::vector<std::vector<Coeff>> rows)
      : profile_(std::move(profile)), rows_(std::move(rows)) {
    require(static_cast<int>(rows_.size()) == profile_.rows(),
            ErrorCode::ShapeMismatch, "coefficient data must have m rows");
    for (int i = 0; i < profile_.rows(); ++i) {
      const auto& r = rows_[static_cast<std::size_t>(i)];
      require(static_cast<int>(r.size()) == profile_.degree(i) + 1,
              ErrorCode::ShapeMismatch,
              "row " + std::to_string(i) + " must carry di+1 coefficient vectors");
      for (const auto& c : r)
        require(c.size() == profile_.width(), ErrorCode::ShapeMismatch,
                "coefficient vectors must have length m+n");
    }
  }

  static PolyMatrix zero(const DegreeProfile& profile) {
    std::vector<std::vector<Coeff>> rows(static_cast<std::size_t>(profile.rows()));
    for (int i = 0; i < profile.rows(); ++i)
      rows[static_cast<std::size_t>(i)].assign(
          static_cast<std::size_t>(profile.degree(i) + 1),
          Coeff::Zero(profile.width()));
    return PolyMatrix(profile, std::move(rows));
  }

  const DegreeProfile& profile() const { return profile_; }
  int rows() const { return profile_.rows(); }
  int width() const { return profile_.width(); }
  int n() const { return profile_.n(); }

  /// R_{i,j}, the coefficient of lambda^j in row i; requires j <= di.
  const Coeff& coeff(int i, int j) const {
    return rows_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }

  /// Coefficient of lambda^j in row i, zero when j exceeds the row bound.
  Coeff coeff_or_zero(int i, int j) const {
    if (j < 0 || j > profile_.degree(i)) return Coeff::Zero(width());
    return coeff(i, j);
  }

  /// Full coefficient matrix M_j of M viewed in F[lambda]_w (zero-padded rows).
  MatrixX<Scalar> coefficient_matrix(int j) const {
    MatrixX<Scalar> out = MatrixX<Scalar>::Zero(rows(), width());
    for (int i = 0; i < rows(); ++i)
      if (j >= 0 && j <= profile_.degree(i)) out.row(i) = coeff(i, j);
    return out;
  }

  /// Leading row-wise coefficient matrix: row i is R_{i,di}.
  MatrixX<Scalar> leading_rowwise() const {
    MatrixX<Scalar> out(rows(), width());
    for (int i = 0; i < rows(); ++i) out.row(i) = coeff(i, profile_.degree(i));
    return out;
  }

  /// Highest-row-degree coefficient matrix: row i is the coefficient of
  /// lambda^{deg(Ri)}, a zero row when Ri vanishes identically.
  MatrixX<Scalar> highest_row_degree() const {
    MatrixX<Scalar> out = MatrixX<Scalar>::Zero(rows(), width());
    for (int i = 0; i < rows(); ++i) {
      const int e = exact_row_degree(i);
      if (e >= 0) out.row(i) = coeff(i, e);
    }
    return out;
  }

  /// Coefficient of lambda^d with d = max di (the leading matrix of M viewed
  /// in F[lambda]_d): row i is R_{i,di} when di = d, else zero.
  MatrixX<Scalar> leading() const { return coefficient_matrix(profile_.max_degree()); }

  /// Horner evaluation of every row at lambda0.
  MatrixX<Scalar> evaluate(Scalar lambda0) const {
    MatrixX<Scalar> out(rows(), width());
    for (int i = 0; i < rows(); ++i) {
      Coeff acc = coeff(i, profile_.degree(i));
      for (int j = profile_.degree(i) - 1; j >= 0; --j)
        acc = acc * lambda0 + coeff(i, j);
      out.row(i) = acc;
    }
    return out;
  }

  /// rev_w M: coefficient of lambda^j becomes the original coefficient of
  /// lambda^{w-j}. Requires w >= deg(M); the result lives in the constant
  /// profile (w,...,w).
  PolyMatrix reversal(int w) const {
    require(w >= degree(), ErrorCode::DegreeTooSmall,
            "reversal order below the matrix degree");
    std::vector<std::vector<Coeff>> rows(static_cast<std::size_t>(this->rows()));
    for (int i = 0; i < this->rows(); ++i) {
      auto& r = rows[static_cast<std::size_t>(i)];
      r.reserve(static_cast<std::size_t>(w + 1));
      for (int j = 0; j <= w; ++j) r.push_back(coeff_or_zero(i, w - j));
    }
    return PolyMatrix(DegreeProfile(std::vector<int>(this->rows(), w), width()),
                      std::move(rows));
  }

  /// Matrix-relative zero threshold used by the exact-degree rule:
  /// 1e-12 times the largest entry magnitude (1e-12 when M = 0).
  double zero_threshold() const {
    double mx = 0.0;
    for (const auto& r : rows_)
      for (const auto& c : r)
        for (Eigen::Index q = 0; q < c.size(); ++q)
          mx = std::max(mx, static_cast<double>(std::abs(c(q))));
    return 1e-12 * (mx > 0.0 ? mx : 1.0);
  }

  /// Exact degree of row i under the zero-threshold rule; -1 for a zero row.
  int exact_row_degree(int i) const {
    const double tol = zero_threshold();
    for (int j = profile_.degree(i); j >= 0; --j)
      if (coeff(i, j).template lpNorm<Eigen::Infinity>() > tol) return j;
    return -1;
  }

  std::vector<int> exact_row_degrees() const {
    std::vector<int> out(static_cast<std::size_t>(rows()));
    for (int i = 0; i < rows(); ++i) out[static_cast<std::size_t>(i)] = exact_row_degree(i);
    return out;
  }

  /// Degree of the whole matrix under the zero-threshold rule (-1 if M = 0).
  int degree() const {
    int d = -1;
    for (int i = 0; i < rows(); ++i) d = std::max(d, exact_row_degree(i));
    return d;
  }

  PolyMatrix operator+(const PolyMatrix& other) const { return combined(other, Scalar(1)); }
  PolyMatrix operator-(const PolyMatrix& other) const { return combined(other, Scalar(-1)); }

  PolyMatrix operator*(Scalar s) const {
    auto rows = rows_;
    for (auto& r : rows)
      for (auto& c : r) c *= s;
    return PolyMatrix(profile_, std::move(rows));
  }

 private:
  PolyMatrix combined(const PolyMatrix& other, Scalar sign) const {
    require(profile_ == other.profile_, ErrorCode::ProfileMismatch,
            "operands must share one degree profile");
    auto rows = rows_;
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < rows[i].size(); ++j) rows[i][j] += sign * other.rows_[i][j];
    return PolyMatrix(profile_, std::move(rows));
  }

  DegreeProfile profile_;
  std::vector<std::vector<Coeff>> rows_;
};

/// Builds a PolyMatrix from nested coefficient lists
/// (row -> coefficient index -> entries).
template <typename Scalar>
PolyMatrix<Scalar> make_poly_matrix(const DegreeProfile& profile,
                                    const std::vector<std::vector<std::vector<Scalar>>>& coeffs) {
  require(static_cast<int>(coeffs.size()) == profile.rows(), ErrorCode::ShapeMismatch,
          "coefficient data must have m rows");
  std::vector<std::vector<RowVecX<Scalar>>> rows(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    for (const auto& c : coeffs[i]) {
      require(static_cast<int>(c.size()) == profile.width(), ErrorCode::ShapeMismatch,
              "coefficient vectors must have length m+n");
      RowVecX<Scalar> v(profile.width());
      for (int q = 0; q < profile.width(); ++q) v(q) = c[static_cast<std::size_t>(q)];
      rows[i].push_back(std::move(v));
    }
  }
  return PolyMatrix<Scalar>(profile, std::move(rows));
}

namespace detail {

/// The degree-interleaved coefficient stack of M: rows (p,i) with p <= di,
/// ordered by p then i. This is exactly the first trimmed Sylvester matrix.
template <typename Scalar>
MatrixX<Scalar> t1_stack(const PolyMatrix<Scalar>& M) {
  const auto& pr = M.profile();
  MatrixX<Scalar> out(pr.trimmed_rows(1), pr.width());
  int r = 0;
  for (int p = 0; p <= pr.max_degree(); ++p)
    for (int i = 0; i < pr.rows(); ++i)
      if (p <= pr.degree(i)) out.row(r++) = M.coeff(i, p);
  return out;
}

}  // namespace detail

/// Coefficient-space distance rho(M, Mt) = sqrt(sum ||R_{i,j} - Rt_{i,j}||^2).
template <typename Scalar>
double distance_frobenius(const PolyMatrix<Scalar>& M, const PolyMatrix<Scalar>& Mt) {
  require(M.profile() == Mt.profile(), ErrorCode::ProfileMismatch,
          "distance requires identical profiles");
  double sum = 0.0;
  for (int i = 0; i < M.rows(); ++i)
    for (int j = 0; j <= M.profile().degree(i); ++j)
      sum += (M.coeff(i, j) - Mt.coeff(i, j)).squaredNorm();
  return std::sqrt(sum);
}

/// Spectral distance rho_2(M, Mt) = ||T_1(M) - T_1(Mt)||_2.
template <typename Scalar>
double distance_spectral(const PolyMatrix<Scalar>& M, const PolyMatrix<Scalar>& Mt) {
  require(M.profile() == Mt.profile(), ErrorCode::ProfileMismatch,
          "distance requires identical profiles");
  MatrixX<Scalar> diff = detail::t1_stack(M) - detail::t1_stack(Mt);
  Eigen::JacobiSVD<MatrixX<Scalar>> svd(diff);
  return svd.singularValues()(0);
}

/// ||T_1(M)||_2, the spectral size of the coefficient stack.
template <typename Scalar>
double t1_spectral_norm(const PolyMatrix<Scalar>& M) {
  Eigen::JacobiSVD<MatrixX<Scalar>> svd(detail::t1_stack(M));
  return svd.singularValues()(0);
}

/// ||T_1(M)||_F = rho(M, 0).
template <typename Scalar>
double t1_frobenius_norm(const PolyMatrix<Scalar>& M) {
  return detail::t1_stack(M).norm();
}

/// Independent Gaussian coefficients (independent real and imaginary parts in
/// the complex case), deterministic for a given seed.
template <typename Scalar>
PolyMatrix<Scalar> random_matrix(const DegreeProfile& profile, std::uint64_t seed,
                                 double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<std::vector<RowVecX<Scalar>>> rows(static_cast<std::size_t>(profile.rows()));
  for (int i = 0; i < profile.rows(); ++i) {
    for (int j = 0; j <= profile.degree(i); ++j) {
      RowVecX<Scalar> c(profile.width());
      for (int q = 0; q < profile.width(); ++q) {
        if constexpr (is_complex_v<Scalar>) {
          const double re = scale * gauss(rng);
          const double im = scale * gauss(rng);
          c(q) = Scalar(re, im);
        } else {
          c(q) = static_cast<Scalar>(scale * gauss(rng));
        }
      }
      rows[static_cast<std::size_t>(i)].push_back(std::move(c));
    }
  }
  return PolyMatrix<Scalar>(profile, std::move(rows));
}

/// Random integer coefficients in [-range, range]; exactly representable, so
/// the rational rank oracle applies.
template <typename Scalar>
PolyMatrix<Scalar> random_integer_matrix(const DegreeProfile& profile, std::uint64_t seed,
                                         int range = 5) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-range, range);
  std::vector<std::vector<RowVecX<Scalar>>> rows(static_cast<std::size_t>(profile.rows()));
  for (int i = 0; i < profile.rows(); ++i) {
    for (int j = 0; j <= profile.degree(i); ++j) {
      RowVecX<Scalar> c(profile.width());
      for (int q = 0; q < profile.width(); ++q) c(q) = static_cast<Scalar>(dist(rng));
      rows[static_cast<std::size_t>(i)].push_back(std::move(c));
    }
  }
  return PolyMatrix<Scalar>(profile, std::move(rows));
}

/// Evaluation at a complex point, promoting real storage when needed.
template <typename Scalar>
MatrixX<Complex> evaluate_at(const PolyMatrix<Scalar>& M, Complex z) {
  MatrixX<Complex> out(M.rows(), M.width());
  for (int i = 0; i < M.rows(); ++i) {
    RowVecX<Complex> acc = M.coeff(i, M.profile().degree(i)).template cast<Complex>();
    for (int j = M.profile().degree(i) - 1; j >= 0; --j)
      acc = acc * z + M.coeff(i, j).template cast<Complex>();
    out.row(i) = acc;
  }
  return out;
}

}  // namespace minbasis
