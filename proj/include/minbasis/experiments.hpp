#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "minbasis/dual_basis.hpp"

namespace minbasis {

/// One Monte Carlo trial. Perturbation trials carry the theorem tag, target
/// fraction, realized distance and bound slack; genericity trials carry the
/// recovered index multiset and the decisive rank-gap diagnostic.
struct TrialRecord {
  int trial = 0;
  std::uint64_t seed = 0;
  bool ftsr = false;
  std::vector<int> indices;
  double gap_ratio = std::numeric_limits<double>::infinity();
  std::string theorem;  // "thm72", "thm73", "thm81" for perturbation trials
  double fraction = 0.0;
  double radius = 0.0;  // radius the fraction applies to
  double rho2 = 0.0;
  double slack = 0.0;  // bound minus achieved quantity, >= 0 when preserved
  bool preserved = true;
};

struct TrialBatchResult {
  DegreeProfile profile;
  int trials = 0;
  std::uint64_t seed = 0;
  int ftsr_count = 0;
  std::map<std::vector<int>, int> index_histogram;
  std::map<std::string, int> bound_violations;
  double elapsed_seconds = 0.0;
  std::vector<TrialRecord> records;
};

/// Worker cap: MINBASIS_THREADS when set, hardware concurrency otherwise.
inline int thread_cap() {
  if (const char* env = std::getenv("MINBASIS_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

namespace detail {

/// Runs fn(trial) for trial = 0..count-1 on up to thread_cap() workers.
/// Trials map to fixed slots, so the merged result is order-deterministic.
template <typename Fn>
void parallel_trials(int count, Fn&& fn) {
  const int workers = std::min(thread_cap(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace detail

/// Draws `trials` random matrices in the profile space and records the FTSR
/// rate and the histogram of right minimal index multisets.
template <typename Scalar = double>
TrialBatchResult genericity_experiment(const DegreeProfile& profile, int trials,
                                       std::uint64_t seed) {
  require(trials >= 1, ErrorCode::PreconditionFailed, "need at least one trial");
  const auto t0 = std::chrono::steady_clock::now();
  TrialBatchResult out{profile, trials, seed, 0, {}, {}, 0.0, {}};
  out.records.resize(static_cast<std::size_t>(trials));

  detail::parallel_trials(trials, [&](int i) {
    TrialRecord& rec = out.records[static_cast<std::size_t>(i)];
    rec.trial = i;
    rec.seed = mix_seed(seed, static_cast<std::uint64_t>(i));
    const auto M = random_matrix<Scalar>(profile, rec.seed);
    const FtsrWitness w = is_ftsr(M);
    rec.ftsr = w.value;
    rec.gap_ratio = w.min_gap_ratio;
    try {
      rec.indices = minimal_indices(M).minimal_indices;
    } catch (const Error&) {
      rec.indices.clear();  // left empty for a degenerate draw
    }
  });

  for (const auto& rec : out.records) {
    out.ftsr_count += rec.ftsr ? 1 : 0;
    ++out.index_histogram[rec.indices];
  }
  out.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

/// Samples perturbations of M at the given fractions of each applicable
/// robustness radius and asserts the preserved property. Violations are
/// counted per theorem and raise BoundViolation unless `throw_on_violation`
/// is cleared (theorem-backed bounds admit none).
template <typename Scalar>
TrialBatchResult perturbation_experiment(const PolyMatrix<Scalar>& M, int trials,
                                         std::uint64_t seed,
                                         const std::vector<double>& fractions,
                                         bool throw_on_violation = true,
                                         const std::vector<std::string>& theorems = {}) {
  require(trials >= 1, ErrorCode::PreconditionFailed, "need at least one trial");
  for (const double f : fractions)
    require(f >= 0.0 && f < 1.0, ErrorCode::PreconditionFailed,
            "fractions must lie in [0, 1)");
  const auto t0 = std::chrono::steady_clock::now();
  const auto& pr = M.profile();

  const auto wanted = [&](const char* name) {
    return theorems.empty() ||
           std::find(theorems.begin(), theorems.end(), name) != theorems.end();
  };

  // Applicable hypotheses and their radii.
  std::optional<MinimalBasisRadius> mb;
  std::optional<FtsrRadius> fr;
  std::optional<DualBasis<Scalar>> dual;
  double dual_rad = 0.0;
  try {
    if (wanted("thm72")) mb = minimal_basis_radius(M);
  } catch (const Error&) {
  }
  try {
    if (wanted("thm73")) fr = ftsr_radius(M);
  } catch (const Error&) {
  }
  try {
    if (wanted("thm81") && is_ftsr(M).value) {
      dual = compute_dual(M);
      dual_rad = dual_perturbation_radius(M, *dual);
    }
  } catch (const Error&) {
  }
  require(mb || fr || dual, ErrorCode::PreconditionFailed,
          "matrix satisfies no perturbation-theorem hypothesis");

  struct Task {
    std::string theorem;
    double radius;
  };
  std::vector<Task> tasks;
  if (mb) tasks.push_back({"thm72", mb->radius});
  if (fr) tasks.push_back({"thm73", fr->radius});
  if (dual) tasks.push_back({"thm81", dual_rad});

  TrialBatchResult out{pr, trials, seed, 0, {}, {}, 0.0, {}};
  const int per_trial = static_cast<int>(tasks.size() * fractions.size());
  out.records.resize(static_cast<std::size_t>(trials) * per_trial);

  detail::parallel_trials(trials, [&](int i) {
    const std::uint64_t tseed = mix_seed(seed, static_cast<std::uint64_t>(i));
    const auto direction = random_matrix<Scalar>(pr, tseed);
    const double dir_norm = t1_spectral_norm(direction);
    int slot = i * per_trial;
    for (const auto& task : tasks)
      for (const double f : fractions) {
        TrialRecord& rec = out.records[static_cast<std::size_t>(slot++)];
        rec.trial = i;
        rec.seed = tseed;
        rec.theorem = task.theorem;
        rec.fraction = f;
        rec.radius = task.radius;
        const double target = f * task.radius;
        const auto Mt = M + direction * static_cast<Scalar>(target / dir_norm);
        rec.rho2 = distance_spectral(M, Mt);
        try {
          if (task.theorem == "thm72") {
            const bool minimal = certify_minimal_basis(Mt).value;
            const bool full_leading = svd_rank(Mt.leading_rowwise()).rank == Mt.rows();
            rec.preserved = minimal && full_leading;
            rec.slack = task.radius - rec.rho2;
          } else if (task.theorem == "thm73") {
            rec.preserved = is_ftsr(Mt).value;
            rec.slack = task.radius - rec.rho2;
          } else {
            const auto dp = perturb_dual(M, *dual, Mt);
            rec.preserved = dp.bound_holds;
            rec.slack = dp.bound - dp.rel_change;
          }
        } catch (const Error&) {
          rec.preserved = false;  // inside the stated neighborhood this is a violation
        }
      }
  });

  for (const auto& rec : out.records)
    if (!rec.preserved) ++out.bound_violations[rec.theorem];
  out.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  int total = 0;
  for (const auto& [theorem, count] : out.bound_violations) total += count;
  if (throw_on_violation && total > 0)
    fail(ErrorCode::BoundViolation,
         std::to_string(total) + " perturbation trials violated a theorem-backed bound");
  return out;
}

}  // namespace minbasis
