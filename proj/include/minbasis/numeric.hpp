#pragma once

#include <Eigen/Core>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <type_traits>

namespace minbasis {

template <typename T>
struct is_complex : std::false_type {};
template <typename T>
struct is_complex<std::complex<T>> : std::true_type {};
template <typename T>
inline constexpr bool is_complex_v = is_complex<T>::value;

template <typename Scalar>
using RealOf = typename Eigen::NumTraits<Scalar>::Real;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using RowVecX = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

using Complex = std::complex<double>;

/// Size of one unit in the last place at magnitude |x|.
inline double ulp_of(double x) {
  const double a = std::abs(x);
  if (a == 0.0 || !std::isfinite(a)) return std::numeric_limits<double>::denorm_min();
  return std::nextafter(a, std::numeric_limits<double>::infinity()) - a;
}

/// |a - b| within `ulps` units in the last place of the larger magnitude.
inline bool within_ulps(double a, double b, int ulps) {
  if (a == b) return true;
  const double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= static_cast<double>(ulps) * ulp_of(scale);
}

/// a <= b with `ulps` of slack at the scale of the operands.
inline bool leq_with_ulps(double a, double b, int ulps) {
  if (a <= b) return true;
  const double scale = std::max(std::abs(a), std::abs(b));
  return a - b <= static_cast<double>(ulps) * ulp_of(scale);
}

/// |a - b| within `ulps` units in the last place at an explicit scale; used
/// when the comparands are tiny relative to the data that produced them.
inline bool within_ulps_scaled(double a, double b, double scale, int ulps) {
  return std::abs(a - b) <=
         static_cast<double>(ulps) * ulp_of(std::max({std::abs(a), std::abs(b), scale}));
}

/// SplitMix64 step; used to derive independent per-trial seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace minbasis
