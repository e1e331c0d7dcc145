#include "fpois/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

#include "fpois/courant.hpp"
#include "fpois/error.hpp"
#include "fpois/suites.hpp"

namespace fpois::cli {

namespace {

using Json = nlohmann::ordered_json;

const std::vector<std::string> kCommands = {"jacobi",   "gauge", "self-equiv", "classify",
                                            "morita",   "homotopy-check", "fuzz"};

bool needs_structures(const std::string& command) { return command != "homotopy-check" && command != "fuzz"; }

template <class T>
std::string text(const FormalSeries<T>& s) {
  std::string out = series_to_string(s);
  return out.empty() ? "0" : out;
}

std::string text(const FormalVF& x) { return text(x.field()); }

std::vector<TermSpec> parse_terms(const Json& list, std::size_t dimension, const char* what) {
  if (!list.is_array()) throw ParseError(std::string(what) + " must be a list");
  std::vector<TermSpec> out;
  for (const auto& entry : list) {
    if (!entry.is_object() || !entry.contains("order") || !entry.contains("terms"))
      throw ParseError(std::string(what) + " entries need \"order\" and \"terms\"");
    int order = entry.at("order").get<int>();
    if (order < 0) throw ParseError(std::string(what) + ": negative order");
    for (const auto& term : entry.at("terms")) {
      if (!term.contains("i") || !term.contains("j") || !term.contains("coeff"))
        throw ParseError(std::string(what) + " terms need \"i\", \"j\" and \"coeff\"");
      long i = term.at("i").get<long>(), j = term.at("j").get<long>();
      if (i < 1 || j < 1 || static_cast<std::size_t>(i) > dimension || static_cast<std::size_t>(j) > dimension)
        throw ParseError(std::string(what) + ": index out of range 1.." + std::to_string(dimension));
      if (i == j) throw ParseError(std::string(what) + ": repeated index " + std::to_string(i));
      const Json& c = term.at("coeff");
      std::string coeff = c.is_string() ? c.get<std::string>() : c.dump();
      out.push_back({order, static_cast<std::size_t>(i), static_cast<std::size_t>(j), std::move(coeff)});
    }
  }
  return out;
}

template <class T>
FormalSeries<T> build(const Chart& chart, int order, const std::vector<TermSpec>& terms) {
  FormalSeries<T> out(order, T(chart, 2));
  for (const auto& t : terms) {
    if (t.order > order) continue;
    Poly c = parse_poly(chart, t.coeff);
    std::size_t a = t.i - 1, b = t.j - 1;
    if (a > b) {
      std::swap(a, b);
      c = -c;
    }
    out[t.order] += T::basis(chart, {a, b}, c);
  }
  return out;
}

Check zero_check(const std::string& name, const std::string& residual) { return {name, residual == "0", residual}; }

void run_suite_report(Report& report, std::span<const Suite> suites, const JobSpec& job, const RunOptions& options) {
  report.seed = job.seed;
  for (const auto& o : run_suites(suites, options.cases, job.seed, options.threads)) {
    std::string name = o.suite + " (" + std::to_string(o.cases) + " cases)";
    report.checks.add({name, o.failures == 0, o.failures == 0 ? "0" : o.first_failure});
    report.internal_error = report.internal_error || o.internal_error;
  }
}

void filter_checks(Report& report, const std::vector<std::string>& wanted) {
  if (wanted.empty()) return;
  std::vector<Check> kept;
  for (const auto& w : wanted) {
    bool found = false;
    for (const auto& c : report.checks.checks)
      if (c.name.rfind(w, 0) == 0) {
        found = true;
        bool dup = false;
        for (const auto& k : kept) dup = dup || k.name == c.name;
        if (!dup) kept.push_back(c);
      }
    if (!found) throw ParseError("no check named '" + w + "' in " + report.command);
  }
  report.checks.checks = std::move(kept);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

int Report::exit_code() const {
  if (internal_error) return kInternalError;
  return checks.pass() ? kPass : kCheckFailure;
}

JobSpec parse_job(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed job: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("job must be an object");
  JobSpec job;
  try {
    if (doc.contains("dimension")) {
      long n = doc.at("dimension").get<long>();
      if (n < 1 || n > static_cast<long>(kMaxChartDim / 2))
        throw ParseError("dimension must lie in 1.." + std::to_string(kMaxChartDim / 2));
      job.dimension = static_cast<std::size_t>(n);
    }
    if (doc.contains("truncation_order")) {
      job.truncation_order = doc.at("truncation_order").get<int>();
      if (job.truncation_order < 1) throw ParseError("truncation_order must be at least 1");
    }
    if (doc.contains("pi")) job.pi = parse_terms(doc.at("pi"), job.dimension, "pi");
    if (doc.contains("B")) job.b = parse_terms(doc.at("B"), job.dimension, "B");
    if (doc.contains("command")) job.command = doc.at("command").get<std::string>();
    if (doc.contains("seed")) job.seed = doc.at("seed").get<std::uint64_t>();
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed job: ") + e.what());
  }
  return job;
}

Report run_job(const JobSpec& job, const RunOptions& options) {
  Report report;
  report.command = job.command;
  report.dimension = job.dimension;
  report.truncation_order = job.truncation_order;
  const std::string& cmd = job.command;

  if (cmd == "homotopy-check") {
    std::vector<Suite> suites = homotopy_suites();
    run_suite_report(report, suites, job, options);
  } else if (cmd == "fuzz") {
    std::vector<Suite> suites = fuzz_suites();
    run_suite_report(report, suites, job, options);
  } else {
    CotangentChart chart(job.dimension);
    const Chart& base = chart.base();
    const int order = job.truncation_order;
    FormalMultiVector pi = build<MultiVector>(base, order, job.pi);
    FormalForm b = build<DiffForm>(base, order, job.b);
    report.outputs.emplace_back("pi", text(pi));

    if (cmd == "jacobi") {
      report.checks.add(zero_check("jacobi", text(jacobi_residual(pi))));
    } else {
      FormalPoisson poisson(base, pi);
      if (!is_closed(b)) throw DomainError("B is not closed: dB = " + text(formal_d(b)));
      if (cmd == "gauge") {
        FormalPoisson forward = gauge(poisson, b), backward = gauge(poisson, -b);
        report.outputs.emplace_back("B", text(b));
        report.outputs.emplace_back("tau_B(pi)", text(forward.bivector()));
        report.outputs.emplace_back("tau_{-B}(pi)", text(backward.bivector()));
        report.checks.add(zero_check("jacobi tau_B(pi)", text(jacobi_residual(forward.bivector()))));
        report.checks.add(zero_check("jacobi tau_{-B}(pi)", text(jacobi_residual(backward.bivector()))));
        report.checks.add(zero_check("tau_{-B} tau_B pi - pi", text(gauge(forward, -b).bivector() - pi)));
      } else if (cmd == "self-equiv") {
        SelfEquivalence se = self_equivalence(chart, poisson);
        report.outputs.emplace_back("Z", text(se.z));
        report.outputs.emplace_back("omega", text(se.omega.form()));
        report.outputs.emplace_back("theta", text(se.potential));
        report.checks = std::move(se.report);
      } else if (cmd == "classify") {
        report.outputs.emplace_back("B", text(b));
        ClassifyResult r = classifying_action(chart, b, poisson);
        report.outputs.emplace_back("pi_B", text(r.pi_b.bivector()));
        for (std::size_t k = 0; k < r.morphism.cocycles.size(); ++k)
          report.outputs.emplace_back("R_" + std::to_string(k + 1), r.morphism.cocycles[k].to_string());
        for (std::size_t k = 0; k < r.morphism.residuals.size(); ++k)
          report.checks.add(zero_check("morphism residual order " + std::to_string(k), r.morphism.residuals[k].to_string()));
        report.checks.append(r.stages);
      } else if (cmd == "morita") {
        report.outputs.emplace_back("B", text(b));
        report.outputs.emplace_back("tau_{-B}(pi)", text(gauge(poisson, -b).bivector()));
        report.checks = morita_witness(chart, poisson, b);
      } else {
        throw ParseError("unknown command '" + cmd + "'");
      }
    }
  }
  filter_checks(report, options.checks);
  return report;
}

std::string render_text(const Report& report) {
  std::ostringstream os;
  os << "command: " << report.command << "\n";
  if (!report.seed) {
    os << "dimension: " << report.dimension << "\n";
    os << "truncation_order: " << report.truncation_order << "\n";
  } else {
    os << "seed: " << *report.seed << "\n";
  }
  for (const auto& [name, value] : report.outputs) os << name << " = " << value << "\n";
  for (const auto& c : report.checks.checks) {
    os << (c.pass ? "PASS " : "FAIL ") << c.name;
    if (!c.pass) os << "  residual: " << c.residual;
    os << "\n";
  }
  for (const auto& n : report.checks.notes) os << "note: " << n << "\n";
  if (report.timing_ms) os << "timing_ms: " << *report.timing_ms << "\n";
  const Check* failure = report.checks.first_failure();
  os << "result: " << (failure ? "FAIL (" + failure->name + ")" : std::string("PASS")) << "\n";
  return os.str();
}

std::string render_structured(const Report& report) {
  Json doc;
  doc["command"] = report.command;
  if (report.seed) {
    doc["seed"] = *report.seed;
  } else {
    doc["dimension"] = report.dimension;
    doc["truncation_order"] = report.truncation_order;
  }
  Json outputs = Json::object();
  for (const auto& [name, value] : report.outputs) outputs[name] = value;
  doc["outputs"] = outputs;
  Json checks = Json::array();
  for (const auto& c : report.checks.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"residual", c.residual}});
  doc["checks"] = checks;
  doc["notes"] = report.checks.notes;
  if (report.timing_ms) doc["timing_ms"] = *report.timing_ms;
  doc["pass"] = report.checks.pass();
  if (const Check* f = report.checks.first_failure()) doc["first_failure"] = f->name;
  return doc.dump(2) + "\n";
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Formal Poisson structures, gauge transformations and Morita equivalence", "fpois"};
  std::string command, input, format = "text";
  std::optional<int> order;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> cases;
  unsigned threads = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  std::vector<std::string> checks;
  bool timing = false;
  app.add_option("command", command, "Command to run")->check(CLI::IsMember(kCommands));
  app.add_option("--input", input, "Job file (JSON)");
  app.add_option("--order", order, "Truncation order N, overriding the job");
  app.add_option("--seed", seed, "Seed for randomized suites");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "structured"}));
  app.add_option("--check", checks, "Report only checks whose names start with these")->expected(1, -1);
  app.add_option("--cases", cases, "Cases per randomized suite");
  app.add_option("--threads", threads, "Workers for randomized suites")->check(CLI::Range(1u, 256u));
  app.add_flag("--timing", timing, "Append wall-clock timing (makes output non-reproducible)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kPass : kInputError;
  }

  try {
    JobSpec job;
    if (!input.empty()) job = parse_job(read_file(input));
    if (!command.empty()) job.command = command;
    if (job.command.empty()) throw ParseError("no command given");
    if (std::find(kCommands.begin(), kCommands.end(), job.command) == kCommands.end())
      throw ParseError("unknown command '" + job.command + "'");
    if (needs_structures(job.command) && input.empty()) throw ParseError(job.command + " requires --input");
    if (order) {
      if (*order < 1) throw ParseError("--order must be at least 1");
      job.truncation_order = *order;
    }
    if (seed) job.seed = *seed;
    RunOptions options;
    options.threads = threads;
    options.checks = checks;
    options.cases = cases.value_or(job.command == "fuzz" ? 10 : 50);

    auto start = std::chrono::steady_clock::now();
    Report report = run_job(job, options);
    if (timing)
      report.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    out << (format == "structured" ? render_structured(report) : render_text(report));
    return report.exit_code();
  } catch (const InternalAssertion& e) {
    err << "error: " << e.what() << "\n";
    return kInternalError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace fpois::cli
