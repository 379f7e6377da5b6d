#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "minbasis/rank_engine.hpp"
#include "minbasis/sylvester.hpp"

namespace minbasis {

/// Rank data of the trimmed Sylvester family together with the recovered
/// right minimal indices and certificates.
struct EigenstructureReport {
  std::vector<int> r;       // r_1 .. r_{d'+1}
  std::vector<int> n_null;  // n_1 .. n_{d'+1}
  std::vector<int> alpha;   // alpha_0 .. alpha_{d'}
  int d_prime = 0;
  std::vector<int> minimal_indices;  // ascending, n entries
  bool is_minimal_basis = false;
  bool is_ftsr = false;
  int k_prime = 0;
  int t = 0;
  double min_gap_ratio = std::numeric_limits<double>::infinity();
};

namespace detail {

struct SequenceResult {
  std::vector<int> r;  // r_1 .. r_{d'+1}
  int d_prime = 0;
  double min_gap = std::numeric_limits<double>::infinity();
};

/// Computes ranks of T_1, T_2, ... until the increment settles at m, which
/// happens at k = d' + 1. The search is capped at d' <= sum(di) + 1; a
/// full-normal-rank matrix in the profile space must stop by then.
template <typename Scalar>
SequenceResult run_rank_sequence(const PolyMatrix<Scalar>& M, std::optional<double> tol) {
  const int m = M.rows();
  const int cap = M.profile().total_degree() + 1;
  SequenceResult out;
  int r_prev = 0;
  for (int k = 1; k <= cap + 1; ++k) {
    const RankDecision dec = svd_rank(build_trimmed(M, k).data, tol);
    out.r.push_back(static_cast<int>(dec.rank));
    out.min_gap = std::min(out.min_gap, dec.gap_ratio);
    if (static_cast<int>(dec.rank) - r_prev == m) {
      out.d_prime = k - 1;
      return out;
    }
    r_prev = static_cast<int>(dec.rank);
  }
  fail(ErrorCode::NotFullNormalRank,
       "rank increments never settled at m within k <= sum(di) + 1");
}

}  // namespace detail

/// Ranks and right nullities of T_1..T_K.
template <typename Scalar>
std::pair<std::vector<int>, std::vector<int>> rank_sequence(const PolyMatrix<Scalar>& M,
                                                            int K,
                                                            std::optional<double> tol = {}) {
  require(K >= 1, ErrorCode::ShapeMismatch, "need K >= 1");
  std::vector<int> r, n;
  for (int k = 1; k <= K; ++k) {
    const RankDecision dec = svd_rank(build_trimmed(M, k).data, tol);
    r.push_back(static_cast<int>(dec.rank));
    n.push_back(k * M.width() - static_cast<int>(dec.rank));
  }
  return {r, n};
}

/// Certificate for the finite rank characterization of minimal bases:
/// rank(M_hr) = m together with r_{d'} - m d' = sum of exact row degrees.
struct MinimalBasisCertificate {
  bool value = false;
  int rank_hr = 0;
  int d_prime = 0;
  int index_sum = 0;       // r_{d'} - m d'
  int row_degree_sum = 0;  // sum of exact row degrees
};

template <typename Scalar>
MinimalBasisCertificate certify_minimal_basis(const PolyMatrix<Scalar>& M,
                                              std::optional<double> tol = {}) {
  MinimalBasisCertificate cert;
  cert.rank_hr = static_cast<int>(svd_rank(M.highest_row_degree(), tol).rank);
  for (int i = 0; i < M.rows(); ++i)
    cert.row_degree_sum += std::max(0, M.exact_row_degree(i));
  if (cert.rank_hr < M.rows()) return cert;  // not row reduced: not minimal

  const auto seq = detail::run_rank_sequence(M, tol);
  cert.d_prime = seq.d_prime;
  const int r_dprime = seq.d_prime == 0 ? 0 : seq.r[static_cast<std::size_t>(seq.d_prime - 1)];
  cert.index_sum = r_dprime - M.rows() * seq.d_prime;
  cert.value = cert.index_sum == cert.row_degree_sum;
  return cert;
}

/// Certificate for the full-row-rank characterization: some T_k has full row
/// rank; the smallest such k is the largest right minimal index.
struct FullRowRankCertificate {
  bool value = false;
  int k = -1;  // smallest k with T_k of full row rank, when value
};

template <typename Scalar>
FullRowRankCertificate certify_minimal_basis_full_rank(const PolyMatrix<Scalar>& M,
                                                       std::optional<double> tol = {}) {
  const auto& pr = M.profile();
  // T_k is strictly taller than wide for k < k', so start the scan at k'.
  for (int k = pr.k_prime(); k <= pr.total_degree() + 1; ++k) {
    const RankDecision dec = svd_rank(build_trimmed(M, k).data, tol);
    if (dec.full_row_rank(pr.trimmed_rows(k))) return {true, k};
  }
  return {false, -1};
}

/// Witness of the two-rank full-trimmed-Sylvester-rank test.
struct FtsrWitness {
  bool value = false;
  int k_prime = 0;
  int t = 0;
  RankDecision tall;  // T_{k'-1} column-rank decision (unused when k'=1 or t=0)
  RankDecision wide;  // T_{k'} row-rank decision
  double min_gap_ratio = std::numeric_limits<double>::infinity();
};

template <typename Scalar>
FtsrWitness is_ftsr(const PolyMatrix<Scalar>& M, std::optional<double> tol = {}) {
  const auto& pr = M.profile();
  FtsrWitness w;
  w.k_prime = pr.k_prime();
  w.t = pr.t();
  w.wide = svd_rank(build_trimmed(M, w.k_prime).data, tol);
  w.min_gap_ratio = w.wide.gap_ratio;
  bool ok = w.wide.full_row_rank(pr.trimmed_rows(w.k_prime));
  if (w.k_prime > 1 && w.t > 0) {
    w.tall = svd_rank(build_trimmed(M, w.k_prime - 1).data, tol);
    w.min_gap_ratio = std::min(w.min_gap_ratio, w.tall.gap_ratio);
    ok = ok && w.tall.full_column_rank(pr.sylvester_cols(w.k_prime - 1));
  }
  w.value = ok;
  return w;
}

/// Right minimal indices from the rank sequence of the trimmed family.
/// Requires full normal rank, verified a posteriori through the recurrence.
template <typename Scalar>
EigenstructureReport minimal_indices(const PolyMatrix<Scalar>& M,
                                     std::optional<double> tol = {}) {
  const auto& pr = M.profile();
  const int m = pr.rows(), n = pr.n(), w = pr.width();

  const auto seq = detail::run_rank_sequence(M, tol);
  EigenstructureReport rep;
  rep.r = seq.r;
  rep.d_prime = seq.d_prime;
  rep.k_prime = pr.k_prime();
  rep.t = pr.t();
  rep.min_gap_ratio = seq.min_gap;
  for (std::size_t k = 1; k <= rep.r.size(); ++k)
    rep.n_null.push_back(static_cast<int>(k) * w - rep.r[k - 1]);

  auto r_at = [&](int k) { return k == 0 ? 0 : rep.r[static_cast<std::size_t>(k - 1)]; };
  rep.alpha.resize(static_cast<std::size_t>(rep.d_prime) + 1);
  rep.alpha[0] = w - r_at(1);  // alpha_0 = n_1
  for (int k = 1; k <= rep.d_prime; ++k)
    rep.alpha[static_cast<std::size_t>(k)] =
        (r_at(k) - r_at(k - 1)) - (r_at(k + 1) - r_at(k));

  int sum = 0, weighted = 0;
  for (int k = 0; k <= rep.d_prime; ++k) {
    const int a = rep.alpha[static_cast<std::size_t>(k)];
    require(a >= 0, ErrorCode::NotFullNormalRank, "negative index multiplicity");
    sum += a;
    weighted += k * a;
    rep.minimal_indices.insert(rep.minimal_indices.end(), static_cast<std::size_t>(a), k);
  }
  require(sum == n, ErrorCode::InconsistentSequence, "index multiplicities must sum to n");
  require(weighted == r_at(rep.d_prime) - m * rep.d_prime, ErrorCode::InconsistentSequence,
          "index sum disagrees with r_{d'} - m d'");

  rep.is_minimal_basis = certify_minimal_basis(M, tol).value;
  rep.is_ftsr = is_ftsr(M, tol).value;
  return rep;
}

/// Generic prediction for the profile: t right minimal indices equal to
/// k' - 1 and n - t equal to k', plus one infinite elementary divisor of
/// degree d - di for each di < d.
struct GenericEigenstructure {
  std::vector<int> minimal_indices;           // ascending
  std::vector<int> infinite_divisor_degrees;  // in row order
};

inline GenericEigenstructure generic_eigenstructure(const DegreeProfile& profile) {
  GenericEigenstructure g;
  g.minimal_indices.insert(g.minimal_indices.end(), static_cast<std::size_t>(profile.t()),
                           profile.k_prime() - 1);
  g.minimal_indices.insert(g.minimal_indices.end(),
                           static_cast<std::size_t>(profile.n() - profile.t()),
                           profile.k_prime());
  for (int i = 0; i < profile.rows(); ++i)
    if (profile.degree(i) < profile.max_degree())
      g.infinite_divisor_degrees.push_back(profile.max_degree() - profile.degree(i));
  return g;
}

/// Infinite elementary divisor degrees of a concrete matrix; valid under
/// full-trimmed-Sylvester-rank only, so the operation refuses otherwise.
template <typename Scalar>
std::vector<int> infinite_elementary_divisors(const PolyMatrix<Scalar>& M,
                                              std::optional<double> tol = {}) {
  require(is_ftsr(M, tol).value, ErrorCode::NotFTSR,
          "divisor structure is read off the profile only under FTSR");
  return generic_eigenstructure(M.profile()).infinite_divisor_degrees;
}

/// Sampled version of the classical pointwise test: the smallest of
/// sigma_m(M(lambda0)) over the samples, plus the row-reducedness flag.
struct ClassicalCheck {
  double min_sigma_m = std::numeric_limits<double>::infinity();
  bool row_reduced = false;
};

template <typename Scalar>
ClassicalCheck classical_check(const PolyMatrix<Scalar>& M,
                               const std::vector<Complex>& samples,
                               std::optional<double> tol = {}) {
  require(!samples.empty(), ErrorCode::ShapeMismatch, "need at least one sample point");
  ClassicalCheck out;
  for (const Complex z : samples) {
    const MatrixX<Complex> value = evaluate_at(M, z);
    Eigen::JacobiSVD<MatrixX<Complex>> svd(value);
    out.min_sigma_m = std::min(out.min_sigma_m, svd.singularValues()(M.rows() - 1));
  }
  out.row_reduced = svd_rank(M.highest_row_degree(), tol).rank == M.rows();
  return out;
}

}  // namespace minbasis
