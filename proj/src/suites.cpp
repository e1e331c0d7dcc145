#include "fpois/suites.hpp"

#include <atomic>
#include <thread>

#include "fpois/courant.hpp"
#include "fpois/error.hpp"

namespace fpois {

namespace {

const Chart& base(std::size_t n) { return Chart::numbered("q", n); }

CECochain random_cochain(Random& rng, const CotangentChart& ch, int degree, int max_degree) {
  CECochain out(ch, degree);
  while (out.is_zero())
    for (IndexSet s = 0; s < index_bit(ch.n()); ++s)
      if (index_count(s) == degree && rng.coin()) out.accumulate(s, rng.poly(ch.total(), max_degree, 3));
  return out;
}

CECochain delta_or_zero(const CECochain& d) {
  if (d.degree() >= static_cast<int>(d.chart().n())) return CECochain(d.chart(), d.degree() + 1);
  return ce_delta(d);
}

std::string homotopy_case(Random& rng) {
  CotangentChart ch(static_cast<std::size_t>(rng.uniform(1, 3)));
  const int degree = rng.uniform(1, static_cast<int>(ch.n()));
  const int order = rng.uniform(1, 4);
  for (int k = 0; k <= order; ++k) {
    CECochain d = random_cochain(rng, ch, degree, 3);
    CECochain back = ce_homotopy(delta_or_zero(d)) + ce_delta(ce_homotopy(d));
    if (!(back == d)) return "λ^" + std::to_string(k) + ": (δh+hδ−id)(" + d.to_string() + ") = " + (back - d).to_string();
  }
  return {};
}

std::string chain_map_case(Random& rng) {
  CotangentChart ch(static_cast<std::size_t>(rng.uniform(1, 3)));
  const int degree = rng.uniform(0, static_cast<int>(ch.n()) - 1);
  CECochain d = random_cochain(rng, ch, degree, 3);
  CECochain dd = ce_delta(d);
  if (!(d_ver(psi(d)) == psi(dd))) return "d_ver∘Ψ ≠ Ψ∘δ on " + d.to_string();
  if (!delta_or_zero(dd).is_zero()) return "δ² ≠ 0 on " + d.to_string();
  Poly f = rng.poly(ch.total(), 2, 2, ch.base_indices());
  if (!(ce_delta(d.times(f)) == dd.times(f))) return "δ not linear over basic " + f.to_string();
  return {};
}

std::string calculus_case(Random& rng) {
  const Chart& c = base(static_cast<std::size_t>(rng.uniform(1, 3)));
  const int n = static_cast<int>(c.dim());
  VectorField x = rng.multivector(c, 1, 2, 2), y = rng.multivector(c, 1, 2, 2);
  DiffForm a = rng.form(c, rng.uniform(1, n), 2, 2);
  if (!(lie_derivative(x, a) == contract(x, exterior_d(a)) + exterior_d(contract(x, a)))) return "ℒ ≠ ιd + dι";
  if (!exterior_d(exterior_d(a)).is_zero()) return "d² ≠ 0";
  if (!(lie_derivative(x, contract(y, a)) - contract(y, lie_derivative(x, a)) == contract(lie_derivative(x, y), a)))
    return "[ℒ_X, ι_Y] ≠ ι_[X,Y]";
  int p = rng.uniform(1, std::min(n, 2)), q = rng.uniform(1, std::min(n, 2)), r = rng.uniform(1, std::min(n, 2));
  MultiVector u = rng.multivector(c, p, 2, 2), v = rng.multivector(c, q, 2, 2), w = rng.multivector(c, r, 2, 2);
  Rational anti = ((p - 1) * (q - 1)) % 2 == 0 ? -1 : 1;
  if (!(schouten(u, v) == schouten(v, u) * anti)) return "Schouten graded antisymmetry";
  Rational s = ((p - 1) * (q - 1)) % 2 == 0 ? 1 : -1;
  if (!(schouten(u, schouten(v, w)) == schouten(schouten(u, v), w) + schouten(v, schouten(u, w)) * s))
    return "Schouten graded Jacobi";
  Rational l = ((p - 1) * q) % 2 == 0 ? 1 : -1;
  if (!(schouten(u, wedge(v, w)) == wedge(schouten(u, v), w) + wedge(v, schouten(u, w)) * l))
    return "Schouten graded Leibniz";
  return {};
}

std::string gauge_case(Random& rng) {
  const Chart& c = base(static_cast<std::size_t>(rng.uniform(2, 3)));
  const int order = rng.uniform(2, 3);
  FormalPoisson pi = rng.formal_poisson(c, order);
  FormalForm b1 = rng.closed_two_form(c, order, 0, 1), b2 = rng.closed_two_form(c, order, 0, 1);
  FormalPoisson twice = gauge(gauge(pi, b1), b2);
  FormalPoisson once = gauge(pi, b1 + b2);
  if (!(twice == once)) return "τ_{B′}τ_B − τ_{B+B′}: " + series_to_string(twice.bivector() - once.bivector());
  return {};
}

std::string self_equivalence_case(Random& rng) {
  CotangentChart ch(2);
  SelfEquivalence se = self_equivalence(ch, rng.formal_poisson(ch.base(), rng.uniform(2, 3)));
  if (const Check* f = se.report.first_failure()) return f->name + ": " + f->residual;
  return {};
}

std::string classify_case(Random& rng) {
  CotangentChart ch(2);
  const int order = rng.uniform(2, 3);
  ClassifyResult r = classifying_action(ch, rng.closed_two_form(ch.base(), order, rng.uniform(0, 1), 1),
                                        rng.formal_poisson(ch.base(), order));
  if (const Check* f = r.stages.first_failure()) return f->name + ": " + f->residual;
  return {};
}

std::string log_case(Random& rng) {
  CotangentChart ch(static_cast<std::size_t>(rng.uniform(1, 2)));
  const int order = rng.uniform(2, 4);
  FormalVF z = rng.formal_vf(ch.total(), order, 2, 2);
  std::vector<FormalFunction> images;
  for (std::size_t i = 0; i < ch.n(); ++i)
    images.push_back(exp_lie(z, constant_series(order, Poly::variable(ch.total(), ch.q(i)))));
  FormalVF back = log_along_projection(ch, images);
  for (std::size_t i = 0; i < ch.n(); ++i) {
    FormalFunction again = exp_lie(back, constant_series(order, Poly::variable(ch.total(), ch.q(i))));
    if (!(again == images[i])) return "exp∘log differs on q" + std::to_string(i + 1) + ": " + to_string(again - images[i]);
  }
  return {};
}

std::string factorization_case(Random& rng) {
  CotangentChart ch(2);
  const Chart& t = ch.total();
  const int order = 3;
  FormalPoisson pi = rng.formal_poisson(ch.base(), order);
  FormalSymplectic omega = shifted_canonical(ch, rng.closed_two_form(ch.base(), order, 1, 1));
  MorphismSolution sol = solve_poisson_morphism(ch, pi, omega);
  FormalDiffeo bar = sol.diffeo;
  FormalFunction h = constant_series(order, rng.poly(t, 2, 3));
  bar.prepend(FormalVF(hamiltonian_vf(omega, h).shifted(rng.uniform(1, 2)), &t));
  VectorField vertical = MultiVector::basis(t, {ch.p(rng.uniform(0, 1))}, rng.poly(t, 2, 2));
  bar.append(FormalVF::single(order, rng.uniform(1, 2), vertical));
  Factorization f = factor_morphism_ambiguity(ch, sol.diffeo, bar, omega);
  for (std::size_t a = 0; a < t.dim(); ++a) {
    FormalFunction x = constant_series(order, Poly::variable(t, a));
    if (!(f.hamiltonian_flow.apply(sol.diffeo.apply(f.vertical.apply(x))) == bar.apply(x)))
      return "reassembly differs on " + t.name(a);
  }
  return {};
}

std::string involutivity_case(Random& rng) {
  CotangentChart ch(static_cast<std::size_t>(rng.uniform(2, 3)));
  GeneratorFrame frame = backward_generators(ch, rng.formal_poisson(ch.base(), 2));
  const auto& gens = frame.generators();
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t b = 0; b < gens.size(); ++b)
      if (!membership(dorfman(gens[a].section, gens[b].section), frame))
        return "⟦g" + std::to_string(a + 1) + ", g" + std::to_string(b + 1) + "⟧ leaves the frame span";
  return {};
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct CaseResult {
  bool pass = true;
  bool internal = false;
  std::string residual;
};

}  // namespace

std::vector<Suite> homotopy_suites() {
  return {{"homotopy-identity", homotopy_case}, {"chain-map", chain_map_case}};
}

std::vector<Suite> fuzz_suites() {
  std::vector<Suite> out = {{"calculus", calculus_case}};
  for (auto& s : homotopy_suites()) out.push_back(std::move(s));
  out.push_back({"gauge", gauge_case});
  out.push_back({"self-equivalence", self_equivalence_case});
  out.push_back({"classify", classify_case});
  out.push_back({"log", log_case});
  out.push_back({"factorization", factorization_case});
  out.push_back({"involutivity", involutivity_case});
  return out;
}

std::uint64_t case_seed(std::uint64_t seed, std::size_t suite, std::size_t index) {
  return splitmix(splitmix(seed ^ splitmix(suite)) + index);
}

std::vector<SuiteOutcome> run_suites(std::span<const Suite> suites, std::size_t cases, std::uint64_t seed,
                                     unsigned threads) {
  const std::size_t total = suites.size() * cases;
  std::vector<CaseResult> results(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t job = next++; job < total; job = next++) {
      std::size_t s = job / cases, i = job % cases;
      Random rng(case_seed(seed, s, i));
      CaseResult& r = results[job];
      try {
        r.residual = suites[s].run_case(rng);
        r.pass = r.residual.empty();
      } catch (const InternalAssertion& e) {
        r = {false, true, e.what()};
      } catch (const Error& e) {
        r = {false, false, e.what()};
      }
    }
  };
  std::vector<std::jthread> pool;
  for (unsigned k = 1; k < std::max(threads, 1u); ++k) pool.emplace_back(worker);
  worker();
  pool.clear();

  std::vector<SuiteOutcome> out;
  for (std::size_t s = 0; s < suites.size(); ++s) {
    SuiteOutcome o{suites[s].name, cases, 0, false, {}};
    for (std::size_t i = 0; i < cases; ++i) {
      const CaseResult& r = results[s * cases + i];
      if (r.pass) continue;
      if (o.failures++ == 0) o.first_failure = "case " + std::to_string(i) + ": " + r.residual;
      o.internal_error = o.internal_error || r.internal;
    }
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace fpois
