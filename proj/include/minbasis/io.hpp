#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>

#include <json.hpp>

#include "minbasis/experiments.hpp"

namespace minbasis {

using json = nlohmann::json;

using LoadedMatrix = std::variant<PolyMatrix<double>, PolyMatrix<Complex>>;

namespace detail {

inline json entry_to_json(double v) { return json(v); }
inline json entry_to_json(const Complex& v) { return json::array({v.real(), v.imag()}); }

inline void entry_from_json(const json& j, double& out) {
  if (!j.is_number()) fail(ErrorCode::ShapeMismatch, "real entries must be numbers");
  out = j.get<double>();
}
inline void entry_from_json(const json& j, Complex& out) {
  if (!j.is_array() || j.size() != 2)
    fail(ErrorCode::ShapeMismatch, "complex entries must be [re, im] pairs");
  out = Complex(j[0].get<double>(), j[1].get<double>());
}

}  // namespace detail

template <typename Scalar>
json matrix_to_json(const PolyMatrix<Scalar>& M) {
  json rows = json::array();
  for (int i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j <= M.profile().degree(i); ++j) {
      json coeff = json::array();
      for (int q = 0; q < M.width(); ++q)
        coeff.push_back(detail::entry_to_json(M.coeff(i, j)(q)));
      row.push_back(std::move(coeff));
    }
    rows.push_back(std::move(row));
  }
  return json{{"field", is_complex_v<Scalar> ? "complex" : "real"},
              {"m", M.rows()},
              {"n", M.n()},
              {"degrees", M.profile().degrees()},
              {"rows", std::move(rows)}};
}

inline json matrix_to_json(const LoadedMatrix& M) {
  return std::visit([](const auto& m) { return matrix_to_json(m); }, M);
}

namespace detail {

template <typename Scalar>
PolyMatrix<Scalar> matrix_from_json_typed(const json& j, const DegreeProfile& profile) {
  const auto& jrows = j.at("rows");
  require(jrows.is_array() && static_cast<int>(jrows.size()) == profile.rows(),
          ErrorCode::ShapeMismatch, "`rows` must list m coefficient lists");
  std::vector<std::vector<RowVecX<Scalar>>> rows(jrows.size());
  for (int i = 0; i < profile.rows(); ++i) {
    const auto& jrow = jrows[static_cast<std::size_t>(i)];
    require(jrow.is_array() && static_cast<int>(jrow.size()) == profile.degree(i) + 1,
            ErrorCode::ShapeMismatch,
            "row " + std::to_string(i) + " must carry di+1 coefficient vectors");
    for (const auto& jcoeff : jrow) {
      require(jcoeff.is_array() && static_cast<int>(jcoeff.size()) == profile.width(),
              ErrorCode::ShapeMismatch, "coefficient vectors must have length m+n");
      RowVecX<Scalar> c(profile.width());
      for (int q = 0; q < profile.width(); ++q)
        entry_from_json(jcoeff[static_cast<std::size_t>(q)], c(q));
      rows[static_cast<std::size_t>(i)].push_back(std::move(c));
    }
  }
  return PolyMatrix<Scalar>(profile, std::move(rows));
}

}  // namespace detail

inline LoadedMatrix matrix_from_json(const json& j) {
  try {
    const std::string field = j.at("field").get<std::string>();
    const int m = j.at("m").get<int>();
    const int n = j.at("n").get<int>();
    const auto degrees = j.at("degrees").get<std::vector<int>>();
    require(static_cast<int>(degrees.size()) == m, ErrorCode::ShapeMismatch,
            "`degrees` must list m entries");
    const DegreeProfile profile(degrees, m + n);
    if (field == "real") return detail::matrix_from_json_typed<double>(j, profile);
    if (field == "complex") return detail::matrix_from_json_typed<Complex>(j, profile);
    fail(ErrorCode::ShapeMismatch, "`field` must be \"real\" or \"complex\"");
  } catch (const json::exception& e) {
    fail(ErrorCode::ShapeMismatch, std::string("malformed matrix document: ") + e.what());
  }
}

inline LoadedMatrix load_matrix_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::ShapeMismatch, "cannot open input file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(ErrorCode::ShapeMismatch, std::string("JSON parse error: ") + e.what());
  }
  return matrix_from_json(j);
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  require(out.good(), ErrorCode::ShapeMismatch, "cannot open output file: " + path);
  out << content;
}

// --- report serialization ---------------------------------------------------

inline json to_json(const EigenstructureReport& rep) {
  return json{{"r", rep.r},
              {"nNull", rep.n_null},
              {"alpha", rep.alpha},
              {"dPrime", rep.d_prime},
              {"minimalIndices", rep.minimal_indices},
              {"isMinimalBasis", rep.is_minimal_basis},
              {"isFTSR", rep.is_ftsr},
              {"kPrime", rep.k_prime},
              {"t", rep.t}};
}

inline json to_json(const RobustnessReport& rep) {
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  json j{{"minimalBasisRadius", opt(rep.minimal_basis_radius)},
         {"ftsrRadius", opt(rep.ftsr_radius)},
         {"sharpRadius", opt(rep.sharp_radius)},
         {"theta1", opt(rep.theta1)},
         {"theta2", opt(rep.theta2)},
         {"dualRadius", opt(rep.dual_radius)},
         {"classicalLowerBound", opt(rep.classical_lower_bound)}};
  if (rep.minimal_basis_radius) j["minimalBasisK"] = rep.minimal_basis_k;
  if (rep.ftsr_radius) j["ftsrBranch"] = std::string(1, rep.ftsr_branch);
  if (rep.theta1) j["thetaCase"] = std::string(1, rep.theta_case);
  return j;
}

template <typename Scalar>
json to_json(const DualBasis<Scalar>& dual) {
  json j = matrix_to_json(dual.basis);
  j["source_indices"] = dual.source_indices;
  return j;
}

// --- experiment output ------------------------------------------------------

namespace detail {

inline std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string join_indices(const std::vector<int>& idx) {
  std::string s;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) s += '|';
    s += std::to_string(idx[i]);
  }
  return s;
}

}  // namespace detail

/// One CSV row per trial record; byte-deterministic for a given batch.
inline std::string trial_batch_csv(const TrialBatchResult& batch) {
  std::ostringstream out;
  out << "profile,trial,seed,theorem,fraction,radius,ftsr,indices,rho2,slack,preserved,"
         "gap_ratio\n";
  const std::string profile = batch.profile.to_string();
  for (const auto& rec : batch.records) {
    out << profile << ',' << rec.trial << ',' << rec.seed << ',' << rec.theorem << ','
        << detail::fmt_double(rec.fraction) << ',' << detail::fmt_double(rec.radius) << ','
        << (rec.ftsr ? 1 : 0) << ',' << detail::join_indices(rec.indices) << ','
        << detail::fmt_double(rec.rho2) << ',' << detail::fmt_double(rec.slack) << ','
        << (rec.preserved ? 1 : 0) << ',' << detail::fmt_double(rec.gap_ratio) << '\n';
  }
  return out.str();
}

inline json trial_batch_summary(const TrialBatchResult& batch) {
  json hist = json::array();
  for (const auto& [indices, count] : batch.index_histogram)
    hist.push_back(json{{"indices", indices}, {"count", count}});
  json violations = json::object();
  for (const auto& [theorem, count] : batch.bound_violations) violations[theorem] = count;
  return json{{"profile", batch.profile.to_string()},
              {"trials", batch.trials},
              {"seed", batch.seed},
              {"ftsrCount", batch.ftsr_count},
              {"ftsrRate", batch.trials > 0 ? double(batch.ftsr_count) / batch.trials : 0.0},
              {"indexHistogram", hist},
              {"boundViolations", violations},
              {"timingSeconds", batch.elapsed_seconds}};
}

/// "key: value" rendering of a flat JSON object, one field per line.
inline std::string render_text(const json& j) {
  std::ostringstream out;
  for (const auto& [key, value] : j.items()) out << key << ": " << value.dump() << '\n';
  return out.str();
}

/// CSV dump of a constant matrix, one row per line.
template <typename Scalar>
std::string matrix_csv(const MatrixX<Scalar>& A) {
  std::ostringstream out;
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      if (j) out << ',';
      if constexpr (is_complex_v<Scalar>) {
        out << detail::fmt_double(A(i, j).real());
        const double im = A(i, j).imag();
        out << (im < 0 ? "-" : "+") << detail::fmt_double(std::abs(im)) << 'i';
      } else {
        out << detail::fmt_double(A(i, j));
      }
    }
    out << '\n';
  }
  return out.str();
}

/// Parses "r1,r2,...xP" into a circle grid (plus the origin). The default
/// "0.5,1,2x64" yields 193 points.
inline std::vector<Complex> parse_grid_spec(const std::string& spec) {
  const auto xpos = spec.find('x');
  require(xpos != std::string::npos, ErrorCode::ShapeMismatch,
          "grid spec must look like \"0.5,1,2x64\"");
  std::vector<double> radii;
  std::stringstream rs(spec.substr(0, xpos));
  std::string item;
  while (std::getline(rs, item, ',')) radii.push_back(std::stod(item));
  const int points = std::stoi(spec.substr(xpos + 1));
  require(!radii.empty() && points >= 1, ErrorCode::ShapeMismatch, "empty grid spec");
  return make_circle_grid(radii, points, true);
}

}  // namespace minbasis
