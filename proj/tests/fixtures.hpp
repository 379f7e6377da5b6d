#pragma once

// Shared test data: small closed-form matrices and the worked 4x7 example
// with profile (0,1,1,2), plus the default profile suite for randomized runs.

#include <minbasis/minbasis.hpp>

namespace fixtures {

using namespace minbasis;

/// 4x7 matrix with profile (0,1,1,2): rows [1 0 ...], [. . -1 l . . .],
/// [. . . -1 l . .], [. . . . . -1 l^2].
inline PolyMatrix<double> paper_matrix() {
  const DegreeProfile profile({0, 1, 1, 2}, 7);
  return make_poly_matrix<double>(
      profile, {
                   {{1, 0, 0, 0, 0, 0, 0}},
                   {{0, 0, -1, 0, 0, 0, 0}, {0, 0, 0, 1, 0, 0, 0}},
                   {{0, 0, 0, -1, 0, 0, 0}, {0, 0, 0, 0, 1, 0, 0}},
                   {{0, 0, 0, 0, 0, -1, 0}, {0, 0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0, 1}},
               });
}

/// Its dual companion with row degrees (0, 2, 2):
/// [. 1 . . . . .], [. . l^2 l 1 . .], [. . . . . l^2 1].
inline PolyMatrix<double> paper_dual() {
  const DegreeProfile profile({0, 2, 2}, 7);
  return make_poly_matrix<double>(
      profile, {
                   {{0, 1, 0, 0, 0, 0, 0}},
                   {{0, 0, 0, 0, 1, 0, 0}, {0, 0, 0, 1, 0, 0, 0}, {0, 0, 1, 0, 0, 0, 0}},
                   {{0, 0, 0, 0, 0, 0, 1}, {0, 0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 1, 0}},
               });
}

/// M(lambda) = [1, lambda].
inline PolyMatrix<double> one_lambda() {
  return make_poly_matrix<double>(DegreeProfile({1}, 2), {{{1, 0}, {0, 1}}});
}

/// M(lambda) = [lambda, lambda]; not a minimal basis (common zero at 0).
inline PolyMatrix<double> lambda_lambda() {
  return make_poly_matrix<double>(DegreeProfile({1}, 2), {{{0, 0}, {1, 1}}});
}

/// The 12x14 second trimmed Sylvester matrix of paper_matrix(), entrywise.
inline Eigen::MatrixXd paper_t2() {
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(12, 14);
  auto set = [&](int r, std::initializer_list<std::pair<int, double>> entries) {
    for (const auto& [c, v] : entries) T(r, c) = v;
  };
  set(0, {{0, 1}});
  set(1, {{2, -1}});
  set(2, {{3, -1}});
  set(3, {{5, -1}});
  set(4, {{7, 1}});
  set(5, {{3, 1}, {9, -1}});
  set(6, {{4, 1}, {10, -1}});
  set(7, {{12, -1}});
  set(8, {{10, 1}});
  set(9, {{11, 1}});
  set(10, {{6, 1}});
  set(11, {{13, 1}});
  return T;
}

inline Eigen::MatrixXd paper_matrix_at_one() {
  Eigen::MatrixXd E = Eigen::MatrixXd::Zero(4, 7);
  E(0, 0) = 1;
  E(1, 2) = -1;
  E(1, 3) = 1;
  E(2, 3) = -1;
  E(2, 4) = 1;
  E(3, 5) = -1;
  E(3, 6) = 1;
  return E;
}

/// Profile suite used by the randomized checks: covers k' = 1, t = 0, t > 0,
/// trimmed and untrimmed shapes.
inline std::vector<DegreeProfile> default_suite() {
  return {DegreeProfile({1}, 2), DegreeProfile({1, 3}, 4), DegreeProfile({0, 1, 1, 2}, 7),
          DegreeProfile({1, 2, 4}, 5), DegreeProfile({2, 2}, 7)};
}

/// Random draw that satisfies the FTSR property (retries are a measure-zero
/// event; the cap only guards against a broken generator).
template <typename Scalar = double>
PolyMatrix<Scalar> random_ftsr_matrix(const DegreeProfile& profile, std::uint64_t seed) {
  for (int attempt = 0; attempt < 16; ++attempt) {
    auto M = random_matrix<Scalar>(profile, mix_seed(seed, static_cast<std::uint64_t>(attempt)));
    if (is_ftsr(M).value) return M;
  }
  throw std::runtime_error("no FTSR draw in 16 attempts; generator is broken");
}

}  // namespace fixtures
