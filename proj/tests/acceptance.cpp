// Acceptance run: one line per criterion, exit status 0 iff all pass.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "fpois/courant.hpp"
#include "fpois/error.hpp"
#include "fpois/random.hpp"
#include "fpois/suites.hpp"

using namespace fpois;

namespace {

constexpr std::uint64_t kSeed = 20261016;

struct Criterion {
  std::string name;
  double limit_s;
  std::function<std::string()> run;
};

std::string fail_if(bool bad, const std::string& what) { return bad ? what : std::string(); }

std::string first_suite_failure(const Suite& suite, std::size_t cases) {
  for (const auto& o : run_suites(std::span<const Suite>(&suite, 1), cases, kSeed, 4))
    if (o.failures) return o.suite + ": " + std::to_string(o.failures) + " failures, " + o.first_failure;
  return {};
}

const Suite& suite_named(const std::vector<Suite>& all, const std::string& name) {
  for (const auto& s : all)
    if (s.name == name) return s;
  throw InternalAssertion("no suite " + name);
}

FormalPoisson lambda_poisson(const Chart& c, int order, const MultiVector& first) {
  FormalMultiVector pi = zero_multivector(c, order, 2);
  pi[1] = first;
  return FormalPoisson(c, pi);
}

struct Example {
  std::string name;
  CotangentChart chart;
  FormalPoisson pi;
};

std::vector<Example> examples(int order) {
  std::vector<Example> out;
  CotangentChart ch2(2), ch3(3);
  const Chart& b2 = ch2.base();
  const Chart& b3 = ch3.base();
  auto q = [](const Chart& c, const char* name) { return Poly::variable(c, name); };
  out.push_back({"constant", ch2, lambda_poisson(b2, order, MultiVector::basis(b2, {0, 1}, Poly::constant(b2, 1)))});
  out.push_back({"linear q1", ch2, lambda_poisson(b2, order, MultiVector::basis(b2, {0, 1}, q(b2, "q1")))});
  MultiVector so3 = MultiVector::basis(b3, {0, 1}, q(b3, "q3")) + MultiVector::basis(b3, {1, 2}, q(b3, "q1")) -
                    MultiVector::basis(b3, {0, 2}, q(b3, "q2"));
  out.push_back({"so(3)", ch3, lambda_poisson(b3, order, so3)});
  return out;
}

std::string report_failure(const std::string& where, const MoritaReport& r) {
  const Check* f = r.first_failure();
  return f ? where + ": " + f->name + " residual " + f->residual : std::string();
}

std::string homotopy_identity() {
  return first_suite_failure(suite_named(homotopy_suites(), "homotopy-identity"), 200);
}

std::string chain_map() { return first_suite_failure(suite_named(homotopy_suites(), "chain-map"), 200); }

std::string calculus() { return first_suite_failure(suite_named(fuzz_suites(), "calculus"), 100); }

std::string gauge_action() {
  Random rng(kSeed + 4);
  for (int trial = 0; trial < 50; ++trial) {
    const Chart& c = Chart::numbered("q", static_cast<std::size_t>(rng.uniform(1, 3)));
    FormalPoisson pi = rng.formal_poisson(c, 4);
    FormalForm b1 = rng.closed_two_form(c, 4, 0, 2), b2 = rng.closed_two_form(c, 4, 0, 2);
    FormalPoisson once = gauge(gauge(pi, b1), b2);
    if (!(once == gauge(pi, b1 + b2))) return "composition fails in trial " + std::to_string(trial);
    if (!jacobi_residual(once.bivector()).is_zero()) return "Jacobi fails in trial " + std::to_string(trial);
  }
  return {};
}

std::string self_equivalences() {
  for (const auto& ex : examples(4)) {
    SelfEquivalence se = self_equivalence(ex.chart, ex.pi);
    if (auto f = report_failure(ex.name, se.report); !f.empty()) return f;
    if (ex.name == "constant") {
      const Chart& t = ex.chart.total();
      FormalForm expected = zero_form(t, 4, 2);
      for (std::size_t i = 0; i < 2; ++i) expected[0] += DiffForm::basis(t, {i, i + 2}, Poly::constant(t, 1));
      expected[1] = DiffForm::basis(t, {2, 3}, Poly::constant(t, 1));
      if (!(se.omega.form() == expected)) return "constant omega differs from the closed form";
    }
  }
  return {};
}

std::string morita() {
  const Rational c = make_rational(3, 2), c_prime = make_rational(-2, 3);
  for (const auto& ex : examples(4)) {
    const Chart& b = ex.chart.base();
    FormalForm constant = zero_form(b, 4, 2), shifted = zero_form(b, 4, 2);
    constant[0] = DiffForm::basis(b, {0, 1}, Poly::constant(b, c));
    shifted[0] = constant[0];
    shifted[1] = DiffForm::basis(b, {0, 1}, Poly::constant(b, c_prime));
    if (auto f = report_failure(ex.name + ", B = c", morita_witness(ex.chart, ex.pi, constant)); !f.empty()) return f;
    if (auto f = report_failure(ex.name + ", B = c + λc'", morita_witness(ex.chart, ex.pi, shifted)); !f.empty())
      return f;
  }
  return {};
}

std::string classify() {
  for (const auto& ex : examples(4)) {
    const Chart& b = ex.chart.base();
    FormalForm bf = zero_form(b, 4, 2);
    bf[0] = DiffForm::basis(b, {0, 1}, Poly::constant(b, 1));
    bf[1] = DiffForm::basis(b, {0, 1}, Poly::constant(b, make_rational(1, 2)));
    ClassifyResult r = classifying_action(ex.chart, bf, ex.pi);
    if (auto f = report_failure(ex.name, r.stages); !f.empty()) return f;
    for (const auto& res : r.morphism.residuals)
      if (!res.is_zero()) return ex.name + ": nonzero final residual";
    const FormalMultiVector& out = r.pi_b.bivector();
    if (!out[0].is_zero()) return ex.name + ": order-zero part";
    if (!(out[1] == ex.pi.bivector()[1])) return ex.name + ": first order differs";
    if (!jacobi_residual(out).is_zero()) return ex.name + ": Jacobi";
  }
  return {};
}

std::string dirac() {
  for (const auto& ex : examples(3)) {
    SelfEquivalence se = self_equivalence(ex.chart, ex.pi);
    MoritaReport ok = check_dirac_criterion(ex.chart, ex.pi, ex.pi, se.z, se.omega.form());
    if (auto f = report_failure(ex.name, ok); !f.empty()) return f;
    const Chart& t = ex.chart.total();
    FormalForm perturbed = se.omega.form();
    perturbed[1] += DiffForm::basis(t, {0, 1}, Poly::constant(t, 1));
    if (check_dirac_criterion(ex.chart, ex.pi, ex.pi, se.z, perturbed).pass())
      return ex.name + ": perturbed omega accepted";
  }
  Random rng(kSeed + 8);
  for (int trial = 0; trial < 20; ++trial) {
    CotangentChart ch(static_cast<std::size_t>(rng.uniform(2, 3)));
    GeneratorFrame frame = backward_generators(ch, rng.formal_poisson(ch.base(), 3));
    const auto& gens = frame.generators();
    for (const auto& g : gens)
      for (const auto& h : gens)
        if (!membership(dorfman(g.section, h.section), frame))
          return "frame not involutive in trial " + std::to_string(trial);
  }
  return {};
}

std::string factorization() { return first_suite_failure(suite_named(fuzz_suites(), "factorization"), 10); }

std::string logarithm() {
  Random rng(kSeed + 10);
  for (int trial = 0; trial < 20; ++trial) {
    CotangentChart ch(static_cast<std::size_t>(rng.uniform(1, 3)));
    FormalVF z = rng.formal_vf(ch.total(), 4, 2, 2);
    std::vector<FormalFunction> images;
    for (std::size_t i = 0; i < ch.n(); ++i)
      images.push_back(exp_lie(z, constant_series(4, Poly::variable(ch.total(), ch.q(i)))));
    FormalVF back = log_along_projection(ch, images);
    for (std::size_t i = 0; i < ch.n(); ++i)
      if (!(exp_lie(back, constant_series(4, Poly::variable(ch.total(), ch.q(i)))) == images[i]))
        return "round trip differs in trial " + std::to_string(trial);
  }
  return {};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"homotopy identity", 60, homotopy_identity},
      {"chain map, square zero, linearity", 30, chain_map},
      {"Cartan and Schouten identities", 60, calculus},
      {"gauge action", 120, gauge_action},
      {"self-equivalence", 120, self_equivalences},
      {"Morita certificate", 300, morita},
      {"classifying pipeline", 300, classify},
      {"Dirac criterion and involutivity", 120, dirac},
      {"factorization", 120, factorization},
      {"logarithm round trip", 60, logarithm},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    auto start = std::chrono::steady_clock::now();
    std::string problem;
    try {
      problem = c.run();
    } catch (const std::exception& e) {
      problem = std::string("exception: ") + e.what();
    }
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (problem.empty() && elapsed >= c.limit_s) problem = "time limit exceeded";
    failures += !problem.empty();
    std::printf("[%s] %2zu %-36s %8.3f s (limit %g s)%s%s\n", problem.empty() ? "PASS" : "FAIL", i + 1, c.name.c_str(),
                elapsed, c.limit_s, problem.empty() ? "" : "  ", problem.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
