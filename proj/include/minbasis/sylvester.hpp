#pragma once

#include <vector>

#include "minbasis/poly_matrix.hpp"

namespace minbasis {

/// Provenance of one row of a trimmed Sylvester matrix: row `block_row * m +
/// matrix_row` of the untrimmed S_k.
struct RowOrigin {
  int matrix_row;  // i, 0-based
  int block_row;   // p, 0-based position inside the block-Toeplitz stack
};

/// The kth trimmed Sylvester matrix T_k(M) of size (km + sum di) x k(m+n),
/// together with the provenance map back into S_k(M).
template <typename Scalar>
struct TrimmedSylvester {
  int k = 0;
  DegreeProfile profile;
  MatrixX<Scalar> data;
  std::vector<RowOrigin> row_map;
};

/// S_k(M), the block-Toeplitz stack of the coefficient matrices M_0,...,M_d
/// with k block columns (M viewed in F[lambda]_d, d = max di).
template <typename Scalar>
MatrixX<Scalar> build_sylvester(const PolyMatrix<Scalar>& M, int k) {
  require(k >= 1, ErrorCode::ShapeMismatch, "Sylvester index k must be >= 1");
  const auto& pr = M.profile();
  const int m = pr.rows(), w = pr.width(), d = pr.max_degree();
  MatrixX<Scalar> S = MatrixX<Scalar>::Zero((k + d) * m, k * w);
  for (int p = 0; p < k + d; ++p)
    for (int q = 0; q < k; ++q) {
      const int j = p - q;
      if (j < 0 || j > d) continue;
      for (int i = 0; i < m; ++i)
        if (j <= pr.degree(i)) S.row(p * m + i).segment(q * w, w) = M.coeff(i, j);
    }
  return S;
}

/// T_k(M), built directly from the per-row coefficients: the sub-block for
/// row i keeps the first k + di rows of S_k(R_i), i.e. S_k rows (p, i) with
/// p <= k - 1 + di, in S_k's interleaved order.
template <typename Scalar>
TrimmedSylvester<Scalar> build_trimmed(const PolyMatrix<Scalar>& M, int k) {
  require(k >= 1, ErrorCode::ShapeMismatch, "Sylvester index k must be >= 1");
  const auto& pr = M.profile();
  const int m = pr.rows(), w = pr.width(), d = pr.max_degree();
  TrimmedSylvester<Scalar> T{k, pr, MatrixX<Scalar>::Zero(pr.trimmed_rows(k), k * w), {}};
  T.row_map.reserve(static_cast<std::size_t>(pr.trimmed_rows(k)));
  int r = 0;
  for (int p = 0; p < k + d; ++p)
    for (int i = 0; i < m; ++i) {
      if (p > k - 1 + pr.degree(i)) continue;
      for (int q = 0; q < k; ++q) {
        const int j = p - q;
        if (j >= 0 && j <= pr.degree(i)) T.data.row(r).segment(q * w, w) = M.coeff(i, j);
      }
      T.row_map.push_back({i, p});
      ++r;
    }
  return T;
}

/// Reinserts the trimmed zero rows: reconstructs S_k from T_k via the row map.
template <typename Scalar>
MatrixX<Scalar> untrim(const TrimmedSylvester<Scalar>& T) {
  const auto& pr = T.profile;
  const int m = pr.rows(), d = pr.max_degree();
  MatrixX<Scalar> S = MatrixX<Scalar>::Zero((T.k + d) * m, T.data.cols());
  for (std::size_t r = 0; r < T.row_map.size(); ++r) {
    const RowOrigin o = T.row_map[r];
    S.row(o.block_row * m + o.matrix_row) = T.data.row(static_cast<Eigen::Index>(r));
  }
  return S;
}

/// Row order realizing the nesting identity of the trimmed family: the
/// returned permutation, applied to the rows of T_{k+1}, yields
/// [[T_k, X_{k+1}], [0, M_dbar]]. It depends only on (k, profile). Entry r
/// gives the T_{k+1} row placed at position r.
inline std::vector<int> nesting_permutation(const DegreeProfile& profile, int k) {
  require(k >= 1, ErrorCode::ShapeMismatch, "nesting permutation needs k >= 1");
  const int m = profile.rows(), d = profile.max_degree();
  // Enumerate T_{k+1} rows (p, i) in order and split off the last row of each
  // per-row sub-block, p = k + di, which is [0 ... 0 R_{i,di}].
  std::vector<int> kept, moved(static_cast<std::size_t>(m));
  int r = 0;
  for (int p = 0; p < k + 1 + d; ++p)
    for (int i = 0; i < m; ++i) {
      if (p > k + profile.degree(i)) continue;
      if (p == k + profile.degree(i))
        moved[static_cast<std::size_t>(i)] = r;
      else
        kept.push_back(r);
      ++r;
    }
  kept.insert(kept.end(), moved.begin(), moved.end());
  return kept;
}

/// Applies a row order produced by nesting_permutation.
template <typename Scalar>
MatrixX<Scalar> apply_row_order(const MatrixX<Scalar>& A, const std::vector<int>& order) {
  require(static_cast<Eigen::Index>(order.size()) == A.rows(), ErrorCode::ShapeMismatch,
          "row order size must match the matrix");
  MatrixX<Scalar> out(A.rows(), A.cols());
  for (std::size_t r = 0; r < order.size(); ++r)
    out.row(static_cast<Eigen::Index>(r)) = A.row(order[r]);
  return out;
}

}  // namespace minbasis
