#include <doctest.h>
#include <json.hpp>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "fpois/cli.hpp"
#include "fpois/error.hpp"
#include "fpois/suites.hpp"

namespace {

namespace fs = std::filesystem;
using namespace fpois::cli;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "fpois");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string job_file(const std::string& body) {
  static std::atomic<int> counter{0};
  fs::path p = fs::temp_directory_path() / ("fpois_job_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + ".json");
  std::ofstream(p) << body;
  return p.string();
}

const char* kPlanar = R"({"dimension":2,"truncation_order":4,
  "pi":[{"order":1,"terms":[{"i":1,"j":2,"coeff":"1"}]}],
  "B":[{"order":0,"terms":[{"i":1,"j":2,"coeff":"1"}]}]})";

const char* kRotation = R"({"dimension":3,"truncation_order":3,
  "pi":[{"order":1,"terms":[{"i":1,"j":2,"coeff":"q3"},{"i":2,"j":3,"coeff":"q1"},{"i":3,"j":1,"coeff":"q2"}]}]})";

const char* kNotPoisson = R"({"dimension":3,"truncation_order":2,
  "pi":[{"order":1,"terms":[{"i":1,"j":2,"coeff":"q3"},{"i":2,"j":3,"coeff":"q2"}]}]})";

}  // namespace

TEST_CASE("job parsing") {
  JobSpec job = parse_job(kRotation);
  CHECK(job.dimension == 3);
  CHECK(job.truncation_order == 3);
  REQUIRE(job.pi.size() == 3);
  CHECK(job.pi[2].i == 3);
  CHECK(job.pi[2].j == 1);
  CHECK(job.b.empty());

  CHECK_THROWS_AS(parse_job("{"), fpois::ParseError);
  CHECK_THROWS_AS(parse_job("[]"), fpois::ParseError);
  CHECK_THROWS_AS(parse_job(R"({"dimension":0})"), fpois::ParseError);
  CHECK_THROWS_AS(parse_job(R"({"dimension":9})"), fpois::ParseError);
  CHECK_THROWS_AS(parse_job(R"({"truncation_order":0})"), fpois::ParseError);
  CHECK_THROWS_AS(parse_job(R"({"pi":[{"order":1,"terms":[{"i":1,"j":1,"coeff":"1"}]}]})"), fpois::ParseError);
  CHECK_THROWS_AS(parse_job(R"({"pi":[{"order":1,"terms":[{"i":1,"j":3,"coeff":"1"}]}]})"), fpois::ParseError);
  CHECK_THROWS_AS(parse_job(R"({"pi":[{"order":-1,"terms":[]}]})"), fpois::ParseError);
  CHECK_THROWS_AS(parse_job(R"({"dimension":"two"})"), fpois::ParseError);
}

TEST_CASE("morita on the planar structure") {
  Outcome r = invoke({"morita", "--input", job_file(kPlanar)});
  CHECK(r.code == kPass);
  CHECK(r.out.find("result: PASS") != std::string::npos);
  // λ/(1+λ) truncated at order 4
  CHECK(r.out.find("tau_{-B}(pi) = λ^1: 1 * ∂q1∧∂q2; λ^2: -1 * ∂q1∧∂q2; λ^3: 1 * ∂q1∧∂q2; λ^4: -1 * ∂q1∧∂q2") !=
        std::string::npos);
  CHECK(r.out.find("timing_ms") == std::string::npos);
}

TEST_CASE("jacobi rejects a non-Poisson bivector") {
  Outcome r = invoke({"jacobi", "--input", job_file(kNotPoisson)});
  CHECK(r.code == kCheckFailure);
  CHECK(r.out.find("FAIL jacobi") != std::string::npos);
  CHECK(r.out.find("λ^2: 2 * q3 * ∂q1∧∂q2∧∂q3") != std::string::npos);

  Outcome ok = invoke({"jacobi", "--input", job_file(kRotation)});
  CHECK(ok.code == kPass);
}

TEST_CASE("gauge with zero B echoes the input") {
  Outcome r = invoke({"gauge", "--input", job_file(kRotation), "--format", "structured"});
  REQUIRE(r.code == kPass);
  auto doc = nlohmann::json::parse(r.out);
  const auto& out = doc.at("outputs");
  CHECK(out.at("B") == "0");
  CHECK(out.at("tau_B(pi)") == out.at("pi"));
  CHECK(out.at("tau_{-B}(pi)") == out.at("pi"));
  CHECK(doc.at("pass") == true);
}

TEST_CASE("exit codes for bad input") {
  CHECK(invoke({"morita"}).code == kInputError);
  CHECK(invoke({"bogus"}).code == kInputError);
  CHECK(invoke({"jacobi", "--input", "/nonexistent/job.json"}).code == kInputError);
  CHECK(invoke({"jacobi", "--input", job_file("{oops")}).code == kInputError);
  CHECK(invoke({"gauge", "--input", job_file(kNotPoisson)}).code == kInputError);
  CHECK(invoke({"morita", "--input", job_file(kPlanar), "--order", "0"}).code == kInputError);
  CHECK(invoke({"morita", "--input", job_file(kPlanar), "--format", "xml"}).code == kInputError);
  CHECK(invoke({"self-equiv", "--input", job_file(kPlanar), "--check", "nope"}).code == kInputError);
  const char* unclosed = R"({"dimension":3,"truncation_order":2,
    "pi":[{"order":1,"terms":[{"i":1,"j":2,"coeff":"1"}]}],
    "B":[{"order":0,"terms":[{"i":1,"j":2,"coeff":"q3"}]}]})";
  Outcome r = invoke({"gauge", "--input", job_file(unclosed)});
  CHECK(r.code == kInputError);
  CHECK(r.err.find("not closed") != std::string::npos);
  CHECK(invoke({"--help"}).code == kPass);
}

TEST_CASE("command may come from the job") {
  std::string body = std::string(kPlanar);
  body.insert(1, R"("command":"self-equiv",)");
  Outcome r = invoke({"--input", job_file(body)});
  CHECK(r.code == kPass);
  CHECK(r.out.rfind("command: self-equiv", 0) == 0);
}

TEST_CASE("order override and check filter") {
  Outcome r = invoke({"self-equiv", "--input", job_file(kPlanar), "--order", "2", "--check", "closed", "flow"});
  REQUIRE(r.code == kPass);
  CHECK(r.out.find("truncation_order: 2") != std::string::npos);
  CHECK(r.out.find("PASS closed") != std::string::npos);
  CHECK(r.out.find("PASS flow Poisson") != std::string::npos);
  CHECK(r.out.find("commutation") == std::string::npos);
}

TEST_CASE("classify reports residuals and stages") {
  Outcome r = invoke({"classify", "--input", job_file(kPlanar), "--order", "3", "--format", "structured"});
  REQUIRE(r.code == kPass);
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc.at("outputs").contains("pi_B"));
  bool saw_jacobi = false;
  for (const auto& c : doc.at("checks")) {
    CHECK(c.at("pass") == true);
    saw_jacobi = saw_jacobi || c.at("name") == "jacobi";
  }
  CHECK(saw_jacobi);
}

TEST_CASE("output is deterministic") {
  std::string path = job_file(kRotation);
  for (const char* cmd : {"self-equiv", "classify", "morita", "gauge"}) {
    Outcome a = invoke({cmd, "--input", path}), b = invoke({cmd, "--input", path});
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
  Outcome t = invoke({"morita", "--input", path, "--timing"});
  CHECK(t.out.find("timing_ms: ") != std::string::npos);
}

TEST_CASE("fuzz does not depend on the worker count") {
  Outcome one = invoke({"fuzz", "--seed", "11", "--cases", "4", "--threads", "1"});
  Outcome many = invoke({"fuzz", "--seed", "11", "--cases", "4", "--threads", "6"});
  CHECK(one.code == kPass);
  CHECK(one.out == many.out);
  CHECK(one.out.find("seed: 11") != std::string::npos);

  Outcome h = invoke({"homotopy-check", "--cases", "10", "--format", "structured"});
  CHECK(h.code == kPass);
  CHECK(nlohmann::json::parse(h.out).at("checks").size() == 2);
}

TEST_CASE("suite runner classifies failures") {
  std::vector<fpois::Suite> suites = {
      {"always", [](fpois::Random&) { return std::string(); }},
      {"odd", [](fpois::Random& rng) { return rng.coin() ? std::string("odd") : std::string(); }},
      {"internal", [](fpois::Random&) -> std::string { throw fpois::InternalAssertion("broken"); }},
      {"domain", [](fpois::Random&) -> std::string { throw fpois::DomainError("outside"); }},
  };
  auto a = fpois::run_suites(suites, 16, 5, 1);
  auto b = fpois::run_suites(suites, 16, 5, 4);
  REQUIRE(a.size() == 4);
  CHECK(a[0].failures == 0);
  CHECK(a[1].failures == b[1].failures);
  CHECK(a[1].first_failure == b[1].first_failure);
  CHECK(a[2].failures == 16);
  CHECK(a[2].internal_error);
  CHECK(a[3].failures == 16);
  CHECK_FALSE(a[3].internal_error);
  CHECK(fpois::case_seed(1, 0, 0) != fpois::case_seed(1, 0, 1));
  CHECK(fpois::case_seed(1, 0, 0) != fpois::case_seed(1, 1, 0));
}

TEST_CASE("golden reports") {
  const fs::path dir = FPOIS_GOLDEN_DIR;
  auto read = [](const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  };
  struct Golden {
    std::vector<std::string> args;
    const char* file;
    int code;
  };
  const std::vector<Golden> cases = {
      {{"morita", "--input", (dir / "planar.json").string()}, "morita_planar.txt", kPass},
      {{"classify", "--input", (dir / "planar.json").string(), "--order", "3", "--format", "structured"},
       "classify_planar.json", kPass},
      {{"jacobi", "--input", (dir / "not_poisson.json").string()}, "jacobi_not_poisson.txt", kCheckFailure},
  };
  for (const auto& g : cases) {
    Outcome r = invoke(g.args);
    CHECK(r.code == g.code);
    CHECK_MESSAGE(r.out == read(dir / g.file), g.file);
  }
}
