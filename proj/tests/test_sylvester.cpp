#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"

using namespace minbasis;

namespace {

int structurally_zero_rows(const Eigen::MatrixXd& S) {
  int count = 0;
  for (Eigen::Index r = 0; r < S.rows(); ++r)
    if (S.row(r).norm() == 0.0) ++count;
  return count;
}

}  // namespace

TEST_CASE("Sylvester stacks of [1, lambda]") {
  const auto M = fixtures::one_lambda();
  const Eigen::MatrixXd S1 = build_sylvester(M, 1);
  CHECK(S1 == Eigen::MatrixXd::Identity(2, 2));

  Eigen::MatrixXd S2(3, 4);
  S2 << 1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 1;
  CHECK(build_sylvester(M, 2) == S2);
  // Homogeneous degrees: nothing to trim.
  CHECK(build_trimmed(M, 1).data == S1);
  CHECK(build_trimmed(M, 2).data == S2);
}

TEST_CASE("trimmed Sylvester matrices of the worked example") {
  const auto M = fixtures::paper_matrix();
  SECTION("T_2 matches entrywise") {
    const auto T2 = build_trimmed(M, 2);
    REQUIRE(T2.data.rows() == 12);
    REQUIRE(T2.data.cols() == 14);
    CHECK(T2.data == fixtures::paper_t2());
  }
  SECTION("T_1 is the 8x7 coefficient stack of rank 6") {
    const auto T1 = build_trimmed(M, 1);
    REQUIRE(T1.data.rows() == 8);
    REQUIRE(T1.data.cols() == 7);
    CHECK(svd_rank(T1.data).rank == 6);
    CHECK(exact_rank(Eigen::MatrixXd(T1.data)) == 6);
  }
  SECTION("S_2 carries exactly md - sum(di) structurally-zero row slots") {
    // The profile wastes 8 - 4 rows per block structure; this particular
    // matrix has one more incidental zero row (the lambda coefficient of
    // row 4), present in T_2 as well.
    const Eigen::MatrixXd S2 = build_sylvester(M, 2);
    const auto T2 = build_trimmed(M, 2);
    CHECK(S2.rows() - T2.data.rows() == 4);
    CHECK(structurally_zero_rows(S2) - structurally_zero_rows(Eigen::MatrixXd(T2.data)) == 4);
  }
}

TEST_CASE("trimming preserves ranks, nullities and the largest singular value") {
  for (const auto& pr : fixtures::default_suite())
    for (std::uint64_t seed : {3, 14}) {
      const auto M = random_integer_matrix<double>(pr, seed);
      for (int k = 1; k <= 3; ++k) {
        const Eigen::MatrixXd S = build_sylvester(M, k);
        const auto T = build_trimmed(M, k);
        const auto rs = svd_rank(S);
        const auto rt = svd_rank(Eigen::MatrixXd(T.data));
        CHECK(rs.rank == rt.rank);
        CHECK(S.cols() - rs.rank == T.data.cols() - rt.rank);  // right nullities
        CHECK(exact_rank(S) == exact_rank(Eigen::MatrixXd(T.data)));
        // Equal in exact arithmetic; the two independent SVDs round a little
        // differently.
        CHECK(within_ulps(spectral_norm(S), spectral_norm(Eigen::MatrixXd(T.data)), 64));
      }
    }
}

TEST_CASE("untrimming reproduces the Sylvester matrix exactly") {
  for (const auto& pr : fixtures::default_suite()) {
    const auto M = random_matrix<double>(pr, 77);
    for (int k : {1, 2, 4}) {
      const auto T = build_trimmed(M, k);
      CHECK(untrim(T) == build_sylvester(M, k));
    }
  }
}

TEST_CASE("row map records the provenance of every kept row") {
  const auto M = fixtures::paper_matrix();
  const auto T1 = build_trimmed(M, 1);
  REQUIRE(T1.row_map.size() == 8);
  // Constant coefficients of all four rows first, then the lambda block.
  CHECK(T1.row_map[0].matrix_row == 0);
  CHECK(T1.row_map[0].block_row == 0);
  CHECK(T1.row_map[4].matrix_row == 1);
  CHECK(T1.row_map[4].block_row == 1);
  CHECK(T1.row_map[7].matrix_row == 3);
  CHECK(T1.row_map[7].block_row == 2);
}

TEST_CASE("nesting identity") {
  SECTION("symbolic profile (0,1,2), k = 2 -> 3") {
    const DegreeProfile pr({0, 1, 2}, 3 + 2);
    const auto M = random_matrix<double>(pr, 21);
    const auto T3 = build_trimmed(M, 3);
    const auto order = nesting_permutation(pr, 2);
    const Eigen::MatrixXd P = apply_row_order(Eigen::MatrixXd(T3.data), order);
    const auto T2 = build_trimmed(M, 2);
    const int r2 = pr.trimmed_rows(2), c2 = pr.sylvester_cols(2);
    CHECK(P.topLeftCorner(r2, c2) == T2.data);
    CHECK(P.bottomLeftCorner(pr.rows(), c2).norm() == 0.0);
    CHECK(P.bottomRightCorner(pr.rows(), pr.width()) == M.leading_rowwise());
  }
  SECTION("worked example, k = 1 -> 2: bottom rows are the bold block") {
    const auto M = fixtures::paper_matrix();
    const auto order = nesting_permutation(M.profile(), 1);
    const Eigen::MatrixXd P =
        apply_row_order(Eigen::MatrixXd(build_trimmed(M, 2).data), order);
    CHECK(P.bottomRightCorner(4, 7) == M.leading_rowwise());
    CHECK(P.bottomLeftCorner(4, 7).norm() == 0.0);
    CHECK(P.topLeftCorner(8, 7) == build_trimmed(M, 1).data);
  }
  SECTION("homogeneous profile moves each block's last row down") {
    const DegreeProfile pr({2, 2}, 5);
    const auto order = nesting_permutation(pr, 2);
    // T_3 rows: 10; last row of each per-row sub-block is (p = k + di) = 4.
    REQUIRE(order.size() == 10);
    CHECK(order[8] == 8);
    CHECK(order[9] == 9);
  }
  SECTION("holds entrywise on random profiles and sizes") {
    for (const auto& pr : fixtures::default_suite())
      for (int k = 1; k <= 3; ++k) {
        const auto M = random_matrix<double>(pr, 17 + static_cast<std::uint64_t>(k));
        const auto order = nesting_permutation(pr, k);
        const Eigen::MatrixXd P =
            apply_row_order(Eigen::MatrixXd(build_trimmed(M, k + 1).data), order);
        const int rk = pr.trimmed_rows(k), ck = pr.sylvester_cols(k);
        CHECK(P.topLeftCorner(rk, ck) == build_trimmed(M, k).data);
        CHECK(P.bottomLeftCorner(pr.rows(), ck).norm() == 0.0);
        CHECK(P.bottomRightCorner(pr.rows(), pr.width()) == M.leading_rowwise());
      }
  }
}

TEST_CASE("T_1 coincides with the coefficient stack used by the metric") {
  for (const auto& pr : fixtures::default_suite()) {
    const auto M = random_matrix<double>(pr, 55);
    CHECK(build_trimmed(M, 1).data == detail::t1_stack(M));
  }
}
