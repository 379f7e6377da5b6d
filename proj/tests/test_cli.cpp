// Exercises the installed command-line surface end to end: exit codes,
// deterministic output, and the documented file formats.

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"

#ifndef CLI_BINARY
#error "CLI_BINARY must point at the built executable"
#endif
#ifndef CLI_WORK_DIR
#error "CLI_WORK_DIR must point at a scratch directory"
#endif

namespace {

using namespace minbasis;

const std::string kBinary = CLI_BINARY;
const std::string kWork = CLI_WORK_DIR;

int run(const std::string& args, std::string* output = nullptr) {
  const std::string out_path = kWork + "/cli_stdout.txt";
  const int rc = std::system((kBinary + " " + args + " > " + out_path + " 2>/dev/null").c_str());
  if (output) {
    std::ifstream in(out_path);
    std::stringstream ss;
    ss << in.rdbuf();
    *output = ss.str();
  }
  return WEXITSTATUS(rc);
}

std::string write_fixture(const std::string& name, const json& j) {
  const std::string path = kWork + "/" + name;
  std::ofstream out(path);
  out << j.dump();
  return path;
}

}  // namespace

TEST_CASE("analyze") {
  const auto path = write_fixture("paper.json", matrix_to_json(fixtures::paper_matrix()));
  std::string out;
  SECTION("reports the worked-example eigenstructure") {
    REQUIRE(run("analyze --input " + path, &out) == 0);
    const json j = json::parse(out);
    CHECK(j["r"] == json::array({6, 12, 16}));
    CHECK(j["alpha"] == json::array({1, 0, 2}));
    CHECK(j["isMinimalBasis"] == true);
    CHECK(j["isFTSR"] == false);
    CHECK(j["matchesGenericPrediction"] == false);
  }
  SECTION("text format is one field per line") {
    REQUIRE(run("analyze --input " + path + " --format text", &out) == 0);
    CHECK(out.find("dPrime: 2\n") != std::string::npos);
  }
  SECTION("malformed JSON exits 2") {
    const std::string bad = kWork + "/bad.json";
    std::ofstream(bad) << "{not json";
    CHECK(run("analyze --input " + bad) == 2);
  }
  SECTION("missing file exits 2") {
    CHECK(run("analyze --input " + kWork + "/nope.json") == 2);
  }
  SECTION("non-minimal input still analyzes with exit 0") {
    const auto p2 = write_fixture("ll.json", matrix_to_json(fixtures::lambda_lambda()));
    REQUIRE(run("analyze --input " + p2, &out) == 0);
    CHECK(json::parse(out)["isMinimalBasis"] == false);
  }
}

TEST_CASE("certify and ftsr") {
  const auto path = write_fixture("paper.json", matrix_to_json(fixtures::paper_matrix()));
  std::string out;
  REQUIRE(run("certify --input " + path, &out) == 0);
  CHECK(json::parse(out)["isMinimalBasis"] == true);
  REQUIRE(run("ftsr --input " + path, &out) == 0);
  const json j = json::parse(out);
  CHECK(j["isFTSR"] == false);
  CHECK(j["kPrime"] == 2);
}

TEST_CASE("dual") {
  std::string out;
  SECTION("writes the dual basis with residual") {
    const auto path = write_fixture("paper.json", matrix_to_json(fixtures::paper_matrix()));
    const std::string dual_path = kWork + "/dual.json";
    REQUIRE(run("dual --input " + path + " --output " + dual_path) == 0);
    std::ifstream in(dual_path);
    json j;
    in >> j;
    CHECK(j["degrees"] == json::array({0, 2, 2}));
    CHECK(j["source_indices"] == json::array({0, 2, 2}));
    CHECK(j["residual"].get<double>() <= 1e-12);
    // The emitted dual parses back as a matrix document.
    const auto loaded = load_matrix_file(dual_path);
    CHECK(std::holds_alternative<PolyMatrix<double>>(loaded));
  }
  SECTION("non-minimal input exits 4") {
    const auto path = write_fixture("ll.json", matrix_to_json(fixtures::lambda_lambda()));
    CHECK(run("dual --input " + path) == 4);
  }
}

TEST_CASE("radius") {
  std::string out;
  SECTION("worked example: minimal-basis radius present, FTSR fields n/a") {
    const auto path = write_fixture("paper.json", matrix_to_json(fixtures::paper_matrix()));
    REQUIRE(run("radius --input " + path, &out) == 0);
    const json j = json::parse(out);
    CHECK(j["minimalBasisRadius"].is_number());
    CHECK(j["minimalBasisRadius"].get<double>() > 0.0);
    CHECK(j["ftsrRadius"].is_null());
  }
  SECTION("non-minimal input: all n/a, exit 0") {
    const auto path = write_fixture("ll.json", matrix_to_json(fixtures::lambda_lambda()));
    REQUIRE(run("radius --input " + path, &out) == 0);
    const json j = json::parse(out);
    CHECK(j["minimalBasisRadius"].is_null());
    CHECK(j["classicalLowerBound"].is_null());
  }
}

TEST_CASE("genericity") {
  std::string out;
  SECTION("summary of a small run") {
    REQUIRE(run("genericity --profile 4,3:0,1,1,2 --trials 25 --seed 7", &out) == 0);
    const json j = json::parse(out);
    CHECK(j["trials"] == 25);
    CHECK(j["ftsrRate"] == 1.0);
  }
  SECTION("CSV output is byte-identical across runs") {
    std::string a, b;
    REQUIRE(run("genericity --profile 2,2:1,3 --trials 10 --seed 3 --format csv", &a) == 0);
    REQUIRE(run("genericity --profile 2,2:1,3 --trials 10 --seed 3 --format csv", &b) == 0);
    CHECK(a == b);
    CHECK(std::count(a.begin(), a.end(), '\n') == 11);
  }
  SECTION("zero trials exit 2") {
    CHECK(run("genericity --profile 1,1:1 --trials 0") == 2);
  }
  SECTION("bad profile spec exits 2") {
    CHECK(run("genericity --profile nonsense --trials 5") == 2);
  }
}

TEST_CASE("perturb") {
  const auto path = write_fixture("ftsr.json",
                                  matrix_to_json(fixtures::random_ftsr_matrix(
                                      DegreeProfile({0, 1, 1, 2}, 7), 5150)));
  std::string out;
  REQUIRE(run("perturb --input " + path + " --trials 5 --seed 2", &out) == 0);
  const json j = json::parse(out);
  CHECK(j["boundViolations"].empty());
}

TEST_CASE("dump-sylvester") {
  const auto path = write_fixture("paper.json", matrix_to_json(fixtures::paper_matrix()));
  std::string out;
  SECTION("trimmed dump has km + sum(di) rows") {
    REQUIRE(run("dump-sylvester --input " + path + " --k 2", &out) == 0);
    CHECK(std::count(out.begin(), out.end(), '\n') == 12);
  }
  SECTION("full dump has (k+d)m rows") {
    REQUIRE(run("dump-sylvester --input " + path + " --k 2 --full", &out) == 0);
    CHECK(std::count(out.begin(), out.end(), '\n') == 16);
  }
}

TEST_CASE("usage errors") {
  CHECK(run("") == 2);
  CHECK(run("frobnicate") == 2);
  CHECK(run("analyze") == 2);  // missing --input
}

TEST_CASE("complex matrices flow through the CLI") {
  const auto M = fixtures::random_ftsr_matrix<Complex>(DegreeProfile({1, 2}, 4), 1234);
  const auto path = write_fixture("cplx.json", matrix_to_json(M));
  std::string out;
  REQUIRE(run("analyze --input " + path, &out) == 0);
  const json j = json::parse(out);
  CHECK(j["isFTSR"] == true);
}
