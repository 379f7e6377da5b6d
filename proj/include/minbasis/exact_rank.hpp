#pragma once

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <vector>

#include "minbasis/errors.hpp"
#include "minbasis/numeric.hpp"

namespace minbasis {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;
using RationalMatrix = std::vector<std::vector<BigRat>>;

/// Exact conversion of a finite binary64 value to a rational.
inline BigRat rational_from_double(double x) {
  if (x == 0.0) return BigRat(0);
  int e = 0;
  const double mant = std::frexp(x, &e);            // x = mant * 2^e, 0.5 <= |mant| < 1
  const auto mi = static_cast<long long>(std::ldexp(mant, 53));
  const int shift = e - 53;
  BigRat r(mi);
  if (shift >= 0)
    r *= BigRat(BigInt(1) << shift);
  else
    r /= BigRat(BigInt(1) << -shift);
  return r;
}

inline RationalMatrix to_rational(const Eigen::MatrixXd& A) {
  RationalMatrix out(static_cast<std::size_t>(A.rows()),
                     std::vector<BigRat>(static_cast<std::size_t>(A.cols())));
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          rational_from_double(A(i, j));
  return out;
}

/// Rank over Q by fraction-free (Bareiss) elimination with full pivoting.
/// Rows are first scaled integral; no rounding occurs anywhere.
inline int exact_rank(const RationalMatrix& A) {
  const std::size_t rows = A.size();
  if (rows == 0) return 0;
  const std::size_t cols = A[0].size();
  for (const auto& row : A)
    require(row.size() == cols, ErrorCode::ShapeMismatch, "ragged rational matrix");

  // Clear denominators row by row; row scaling preserves rank.
  std::vector<std::vector<BigInt>> M(rows, std::vector<BigInt>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    BigInt l = 1;
    for (const auto& v : A[i]) l = boost::multiprecision::lcm(l, denominator(v));
    for (std::size_t j = 0; j < cols; ++j) {
      const BigRat scaled = A[i][j] * BigRat(l);
      M[i][j] = numerator(scaled);
    }
  }

  BigInt prev = 1;
  std::size_t r = 0;
  std::vector<std::size_t> col_of(cols);
  for (std::size_t j = 0; j < cols; ++j) col_of[j] = j;

  for (; r < std::min(rows, cols); ++r) {
    std::size_t pi = r, pj = r;
    bool found = false;
    for (std::size_t i = r; i < rows && !found; ++i)
      for (std::size_t j = r; j < cols; ++j)
        if (M[i][col_of[j]] != 0) {
          pi = i;
          pj = j;
          found = true;
          break;
        }
    if (!found) break;
    std::swap(M[r], M[pi]);
    std::swap(col_of[r], col_of[pj]);
    const BigInt& piv = M[r][col_of[r]];
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = r + 1; j < cols; ++j) {
        BigInt num = piv * M[i][col_of[j]] - M[i][col_of[r]] * M[r][col_of[j]];
        M[i][col_of[j]] = num / prev;  // exact by the Bareiss identity
      }
      M[i][col_of[r]] = 0;
    }
    prev = piv;
  }
  return static_cast<int>(r);
}

/// Convenience overload for matrices whose double entries are exact.
inline int exact_rank(const Eigen::MatrixXd& A) { return exact_rank(to_rational(A)); }

}  // namespace minbasis
