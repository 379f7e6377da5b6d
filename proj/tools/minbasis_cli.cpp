// Command-line front-end: eigenstructure analysis, certification, robustness
// radii, dual bases, and Monte Carlo experiments over the JSON matrix format.
//
// Exit codes: 0 success, 2 input/usage error, 3 numerical failure,
// 4 hypothesis failure.

#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <string>

#include <minbasis/minbasis.hpp>

namespace {

using namespace minbasis;

struct Options {
  std::string input;
  std::string output;
  std::optional<double> tol;
  std::uint64_t seed = 1;
  int trials = 100;
  std::string grid = "0.5,1,2x64";
  std::string format = "json";
  std::string profile;
  int k = 1;
  bool full = false;
  std::vector<double> fractions{0.5, 0.9, 0.99};
};

void emit(const Options& opt, const std::string& content) {
  if (opt.output.empty())
    std::cout << content;
  else
    write_text_file(opt.output, content);
}

void emit_json(const Options& opt, const json& j) {
  emit(opt, (opt.format == "text" ? render_text(j) : j.dump(2) + "\n"));
}

DegreeProfile parse_profile_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  require(colon != std::string::npos, ErrorCode::InvalidProfile,
          "profile spec must look like m,n:d1,...,dm");
  int m = 0, n = 0;
  {
    std::stringstream head(spec.substr(0, colon));
    char comma = 0;
    require(static_cast<bool>(head >> m >> comma >> n) && comma == ',',
            ErrorCode::InvalidProfile, "profile spec must start with m,n:");
  }
  std::vector<int> degrees;
  std::stringstream tail(spec.substr(colon + 1));
  std::string item;
  while (std::getline(tail, item, ',')) degrees.push_back(std::stoi(item));
  require(static_cast<int>(degrees.size()) == m, ErrorCode::InvalidProfile,
          "profile spec must list m degrees");
  return DegreeProfile(degrees, m + n);
}

int cmd_analyze(const Options& opt) {
  const LoadedMatrix M = load_matrix_file(opt.input);
  std::visit(
      [&](const auto& mat) {
        const EigenstructureReport rep = minimal_indices(mat, opt.tol);
        json j = to_json(rep);
        const GenericEigenstructure gen = generic_eigenstructure(mat.profile());
        j["genericPrediction"] = json{{"minimalIndices", gen.minimal_indices},
                                      {"infiniteDivisorDegrees", gen.infinite_divisor_degrees}};
        j["matchesGenericPrediction"] = rep.minimal_indices == gen.minimal_indices;
        emit_json(opt, j);
      },
      M);
  return 0;
}

int cmd_certify(const Options& opt) {
  const LoadedMatrix M = load_matrix_file(opt.input);
  std::visit(
      [&](const auto& mat) {
        const MinimalBasisCertificate cert = certify_minimal_basis(mat, opt.tol);
        const FullRowRankCertificate frr = certify_minimal_basis_full_rank(mat, opt.tol);
        emit_json(opt, json{{"isMinimalBasis", cert.value},
                            {"rankHighestRowDegree", cert.rank_hr},
                            {"dPrime", cert.d_prime},
                            {"indexSum", cert.index_sum},
                            {"rowDegreeSum", cert.row_degree_sum},
                            {"hasFullRowRankTk", frr.value},
                            {"smallestFullRowRankK", frr.k}});
      },
      M);
  return 0;
}

int cmd_ftsr(const Options& opt) {
  const LoadedMatrix M = load_matrix_file(opt.input);
  std::visit(
      [&](const auto& mat) {
        const FtsrWitness w = is_ftsr(mat, opt.tol);
        json j{{"isFTSR", w.value},
               {"kPrime", w.k_prime},
               {"t", w.t},
               {"rankTkPrime", static_cast<int>(w.wide.rank)},
               {"gapRatio", w.min_gap_ratio}};
        if (w.k_prime > 1 && w.t > 0) j["rankTkPrimeMinus1"] = static_cast<int>(w.tall.rank);
        emit_json(opt, j);
      },
      M);
  return 0;
}

int cmd_dual(const Options& opt) {
  const LoadedMatrix M = load_matrix_file(opt.input);
  std::visit(
      [&](const auto& mat) {
        const auto dual = compute_dual(mat, opt.tol);
        const DualityCheck check = verify_duality(mat, dual.basis, opt.tol);
        json j = to_json(dual);
        j["residual"] = check.residual;
        j["verified"] = check.value;
        emit_json(opt, j);
      },
      M);
  return 0;
}

int cmd_radius(const Options& opt) {
  const LoadedMatrix M = load_matrix_file(opt.input);
  std::visit(
      [&](const auto& mat) {
        const RobustnessReport rep =
            build_robustness_report(mat, parse_grid_spec(opt.grid), opt.tol);
        emit_json(opt, to_json(rep));
      },
      M);
  return 0;
}

int cmd_perturb(const Options& opt) {
  const LoadedMatrix M = load_matrix_file(opt.input);
  std::visit(
      [&](const auto& mat) {
        const TrialBatchResult batch =
            perturbation_experiment(mat, opt.trials, opt.seed, opt.fractions);
        if (opt.format == "csv")
          emit(opt, trial_batch_csv(batch));
        else
          emit_json(opt, trial_batch_summary(batch));
      },
      M);
  return 0;
}

int cmd_genericity(const Options& opt) {
  const DegreeProfile profile = parse_profile_spec(opt.profile);
  const TrialBatchResult batch = genericity_experiment(profile, opt.trials, opt.seed);
  if (opt.format == "csv")
    emit(opt, trial_batch_csv(batch));
  else
    emit_json(opt, trial_batch_summary(batch));
  return 0;
}

int cmd_dump_sylvester(const Options& opt) {
  const LoadedMatrix M = load_matrix_file(opt.input);
  std::visit(
      [&](const auto& mat) {
        if (opt.full)
          emit(opt, matrix_csv(build_sylvester(mat, opt.k)));
        else
          emit(opt, matrix_csv(build_trimmed(mat, opt.k).data));
      },
      M);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimal-basis analysis of polynomial matrices with row-degree bounds"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* sub, bool needs_input) {
    if (needs_input) sub->add_option("--input", opt.input, "matrix JSON file")->required();
    sub->add_option("--output", opt.output, "output file (stdout when omitted)");
    sub->add_option("--tol", opt.tol, "rank tolerance override")
        ->check(CLI::PositiveNumber);
    sub->add_option("--format", opt.format, "json|text|csv")->default_val("json");
  };

  auto* analyze = app.add_subcommand("analyze", "rank/nullity sequences and minimal indices");
  add_common(analyze, true);
  auto* certify = app.add_subcommand("certify", "minimal-basis certificates");
  add_common(certify, true);
  auto* ftsr = app.add_subcommand("ftsr", "full-trimmed-Sylvester-rank test");
  add_common(ftsr, true);
  auto* dual = app.add_subcommand("dual", "dual minimal basis extraction");
  add_common(dual, true);
  auto* radius = app.add_subcommand("radius", "robustness radii and bounds");
  add_common(radius, true);
  radius->add_option("--grid", opt.grid, "sample grid, e.g. 0.5,1,2x64");
  auto* perturb = app.add_subcommand("perturb", "perturbation Monte Carlo on a matrix");
  add_common(perturb, true);
  perturb->add_option("--trials", opt.trials, "trial count")->check(CLI::PositiveNumber);
  perturb->add_option("--seed", opt.seed, "RNG seed");
  perturb->add_option("--fractions", opt.fractions, "radius fractions in [0,1)");
  auto* genericity = app.add_subcommand("genericity", "genericity Monte Carlo on a profile");
  add_common(genericity, false);
  genericity->add_option("--profile", opt.profile, "profile spec m,n:d1,...,dm")->required();
  genericity->add_option("--trials", opt.trials, "trial count")->check(CLI::PositiveNumber);
  genericity->add_option("--seed", opt.seed, "RNG seed");
  auto* dump = app.add_subcommand("dump-sylvester", "CSV dump of T_k (or S_k with --full)");
  add_common(dump, true);
  dump->add_option("--k", opt.k, "block-column count")->check(CLI::PositiveNumber);
  dump->add_flag("--full", opt.full, "dump the untrimmed Sylvester matrix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(opt);
    if (certify->parsed()) return cmd_certify(opt);
    if (ftsr->parsed()) return cmd_ftsr(opt);
    if (dual->parsed()) return cmd_dual(opt);
    if (radius->parsed()) return cmd_radius(opt);
    if (perturb->parsed()) return cmd_perturb(opt);
    if (genericity->parsed()) return cmd_genericity(opt);
    if (dump->parsed()) return cmd_dump_sylvester(opt);
  } catch (const minbasis::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case minbasis::ErrorKind::Input: return 2;
      case minbasis::ErrorKind::Numerical: return 3;
      case minbasis::ErrorKind::Hypothesis: return 4;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
