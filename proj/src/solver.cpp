#include "fpois/solver.hpp"

#include <map>

#include "fpois/error.hpp"

namespace fpois {

bool FormalDiffeo::is_identity() const {
  for (const auto& x : factors_)
    if (!x.is_zero()) return false;
  return true;
}

void FormalDiffeo::require(const FormalVF& x) const {
  if (&x.chart() != chart_) throw ChartMismatch("diffeomorphism factor on a different chart");
  if (x.order() != order_) throw OrderMismatch(std::to_string(order_) + " vs " + std::to_string(x.order()));
}

void FormalDiffeo::append(FormalVF x) {
  require(x);
  factors_.push_back(std::move(x));
}

void FormalDiffeo::prepend(FormalVF x) {
  require(x);
  factors_.insert(factors_.begin(), std::move(x));
}

std::vector<FormalFunction> FormalDiffeo::images(std::span<const std::size_t> coords) const {
  std::vector<FormalFunction> out;
  out.reserve(coords.size());
  for (auto a : coords) out.push_back(apply(constant_series(order_, Poly::variable(*chart_, a))));
  return out;
}

std::vector<FormalFunction> FormalDiffeo::images() const {
  std::vector<std::size_t> all(chart_->dim());
  for (std::size_t a = 0; a < all.size(); ++a) all[a] = a;
  return images(all);
}

FormalFunction substitute(const FormalFunction& g, std::span<const FormalFunction> images) {
  if (images.empty()) throw DomainError("substitute: no images");
  const int order = g.order();
  const Chart* target = nullptr;
  for (const auto& img : images) {
    if (img.order() != order) throw OrderMismatch("substitute: image order differs from the series order");
    for (int k = 0; k <= order; ++k) target = common_chart(target, img[k].chart());
  }
  if (target == nullptr) throw DomainError("substitute: images carry no chart");
  std::vector<std::vector<FormalFunction>> powers(images.size());
  auto power = [&](std::size_t v, unsigned e) -> const FormalFunction& {
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(constant_series(order, Poly::constant(*target, 1)));
    while (cache.size() <= e) cache.push_back(cache.back() * images[v]);
    return cache[e];
  };
  FormalFunction out = zero_function(*target, order);
  for (int m = 0; m <= order; ++m)
    for (const auto& [mono, c] : g[m].terms()) {
      FormalFunction term = constant_series(order, Poly::constant(*target, c));
      for (std::size_t v = 0; v < images.size(); ++v)
        if (mono[v] != 0) term = term * power(v, mono[v]);
      out += term.shifted(m);
    }
  return out;
}

std::vector<FormalFunction> base_images(const CotangentChart& chart, const FormalDiffeo& phi) {
  return phi.images(chart.base_indices());
}

namespace {

void require_closed(const CECochain& c, const std::string& what) {
  if (c.degree() >= static_cast<int>(c.chart().n())) return;
  CECochain dc = ce_delta(c);
  if (!dc.is_zero()) throw InternalAssertion(what + " is not δ-closed: δ = " + dc.to_string());
}

void require_vanishing_below(const FormalFunction& f, int k, const std::string& what) {
  for (int j = 0; j <= k && j <= f.order(); ++j)
    if (!f[j].is_zero()) throw InternalAssertion(what + " has a nonzero λ^" + std::to_string(j) + " term: " + f[j].to_string());
}

void require_shifted_canonical(const CotangentChart& chart, const FormalSymplectic& omega) {
  if (&omega.chart() != &chart.total()) throw ChartMismatch("symplectic structure must live on the total chart");
  DiffForm rest = omega.form()[0] - canonical_forms(chart).omega;
  for (const auto& [s, c] : rest.components())
    if ((s >> chart.n()) != 0 || !c.independent_of(chart.fiber_indices()))
      throw DomainError("ω₀ is not of the form ω_can + ρ*B₀");
}

/// Φ⁻¹{Φqⁱ,Φqʲ}_ω − ρ*πⁱʲ for all i < j.
std::map<IndexSet, FormalFunction> morphism_defects(const CotangentChart& chart, const FormalDiffeo& phi,
                                                    const FormalPoisson& pi, const FormalSymplectic& omega) {
  std::vector<FormalFunction> images = base_images(chart, phi);
  std::map<IndexSet, FormalFunction> out;
  for (std::size_t i = 0; i < chart.n(); ++i)
    for (std::size_t j = i + 1; j < chart.n(); ++j) {
      FormalFunction b = phi.apply_inverse(bracket(omega, images[i], images[j]));
      out.emplace(index_bit(i) | index_bit(j), b - rho_pullback(chart, pi.component(i, j)));
    }
  return out;
}

CECochain cochain_at(const CotangentChart& chart, const std::map<IndexSet, FormalFunction>& defects, int k) {
  CECochain out(chart, 2);
  for (const auto& [s, f] : defects) out.accumulate(s, f[k]);
  return out;
}

FormalFunction invert_image(const CotangentChart& chart, std::span<const FormalFunction> images,
                            const FormalFunction& target) {
  const int order = target.order();
  FormalFunction g = zero_function(chart.base(), order);
  for (int k = 0; k <= order; ++k) {
    FormalFunction r = target - substitute(g, images);
    if (k > 0) require_vanishing_below(r, k - 1, "commutant inversion remainder");
    if (!r[k].independent_of(chart.fiber_indices()))
      throw InternalAssertion("bracket is not basic at order " + std::to_string(k) + ": " + r[k].to_string());
    g[k] = r[k].embed(chart.base(), chart.base_indices());
  }
  if (!(target == substitute(g, images))) throw InternalAssertion("commutant inversion did not close");
  return g;
}

}  // namespace

CECochain morphism_residual(const CotangentChart& chart, const FormalDiffeo& phi, const FormalPoisson& pi,
                            const FormalSymplectic& omega, int k) {
  auto defects = morphism_defects(chart, phi, pi, omega);
  for (const auto& [s, f] : defects) require_vanishing_below(f, k, "Poisson-morphism defect");
  CECochain r = cochain_at(chart, defects, k + 1);
  require_closed(r, "R_" + std::to_string(k + 1));
  return r;
}

MorphismSolution solve_poisson_morphism(const CotangentChart& chart, const FormalPoisson& pi,
                                        const FormalSymplectic& omega) {
  if (&pi.chart() != &chart.base()) throw ChartMismatch("π must live on the base chart");
  if (!pi.vanishes_at_order_zero()) throw DomainError("solve_poisson_morphism: π₀ ≠ 0");
  if (pi.order() != omega.order()) throw OrderMismatch(std::to_string(pi.order()) + " vs " + std::to_string(omega.order()));
  require_shifted_canonical(chart, omega);
  const int order = pi.order();
  MorphismSolution sol{FormalDiffeo(chart.total(), order), {}, {}};
  for (int k = 0; k < order; ++k) {
    CECochain r = morphism_residual(chart, sol.diffeo, pi, omega, k);
    sol.cocycles.push_back(r);
    if (r.is_zero()) continue;
    CECochain xi = -ce_homotopy(r);
    sol.diffeo.append(FormalVF::single(order, k + 1, horizontal_lift(xi)));
  }
  auto defects = morphism_defects(chart, sol.diffeo, pi, omega);
  for (int k = 0; k <= order; ++k) {
    sol.residuals.push_back(cochain_at(chart, defects, k));
    if (!sol.residuals.back().is_zero())
      throw InternalAssertion("Poisson-morphism residual survives correction at order " + std::to_string(k));
  }
  return sol;
}

FormalDiffeo solve_commutant(const CotangentChart& chart, const MorphismSolution& phi, const FormalSymplectic& omega) {
  const int order = omega.order();
  std::vector<FormalFunction> images = base_images(chart, phi.diffeo);
  FormalDiffeo prime(chart.total(), order);
  for (int k = 0; k < order; ++k) {
    std::vector<FormalFunction> prime_images = base_images(chart, prime);
    VectorField x(chart.total(), 1);
    for (std::size_t i = 0; i < chart.n(); ++i) {
      CECochain d(chart, 1);
      for (std::size_t j = 0; j < chart.n(); ++j) {
        FormalFunction f = bracket(omega, prime_images[i], images[j]);
        require_vanishing_below(f, k, "commutation defect");
        d.accumulate(index_bit(j), f[k + 1]);
      }
      require_closed(d, "commutant cochain D_" + std::to_string(i + 1));
      Poly b = ce_homotopy(d).component(0);
      if (!b.is_zero()) x += VectorField::basis(chart.total(), {chart.q(i)}, b);
    }
    if (!x.is_zero()) prime.append(FormalVF::single(order, k + 1, x));
  }
  std::vector<FormalFunction> prime_images = base_images(chart, prime);
  for (std::size_t i = 0; i < chart.n(); ++i)
    for (std::size_t j = 0; j < chart.n(); ++j)
      if (!bracket(omega, prime_images[i], images[j]).is_zero())
        throw InternalAssertion("commutant images fail to Poisson-commute");
  return prime;
}

FormalPoisson extract_commutant_poisson(const CotangentChart& chart, const FormalDiffeo& phi_prime,
                                        const FormalSymplectic& omega) {
  const int order = omega.order();
  std::vector<FormalFunction> images = base_images(chart, phi_prime);
  std::vector<std::vector<FormalFunction>> matrix(chart.n(),
                                                  std::vector<FormalFunction>(chart.n(), zero_function(chart.base(), order)));
  for (std::size_t i = 0; i < chart.n(); ++i)
    for (std::size_t j = i + 1; j < chart.n(); ++j)
      matrix[i][j] = -invert_image(chart, images, bracket(omega, images[i], images[j]));
  return FormalPoisson(chart.base(), bivector_from_matrix(chart.base(), order, matrix));
}

std::vector<Poly> generator_set(const CotangentChart& chart) {
  const Chart& b = chart.base();
  std::vector<Poly> out;
  for (std::size_t i = 0; i < chart.n(); ++i) out.push_back(Poly::variable(b, i));
  for (std::size_t i = 0; i < chart.n(); ++i)
    for (std::size_t j = i; j < chart.n(); ++j) out.push_back(Poly::variable(b, i) * Poly::variable(b, j));
  return out;
}

Check morphism_check(const std::string& name, const CotangentChart& chart, std::span<const FormalFunction> images,
                     const FormalPoisson& pi, const FormalSymplectic& omega, int sign) {
  const int order = omega.order();
  std::vector<Poly> gens = generator_set(chart);
  std::vector<FormalFunction> mapped;
  for (const auto& g : gens) mapped.push_back(substitute(constant_series(order, g), images));
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t b = a + 1; b < gens.size(); ++b) {
      FormalFunction lhs = bracket(omega, mapped[a], mapped[b]);
      FormalFunction inner = bracket(pi, constant_series(order, gens[a]), constant_series(order, gens[b]));
      FormalFunction residual = lhs - substitute(inner, images) * Rational(sign);
      if (!residual.is_zero())
        return {name, false, "{" + gens[a].to_string() + ", " + gens[b].to_string() + "}: " + to_string(residual)};
    }
  return {name, true, "0"};
}

Check commutation_check(const std::string& name, const CotangentChart& chart, std::span<const FormalFunction> images,
                        std::span<const FormalFunction> images_prime, const FormalSymplectic& omega) {
  const int order = omega.order();
  std::vector<Poly> gens = generator_set(chart);
  std::vector<FormalFunction> left, right;
  for (const auto& g : gens) {
    left.push_back(substitute(constant_series(order, g), images));
    right.push_back(substitute(constant_series(order, g), images_prime));
  }
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t b = 0; b < gens.size(); ++b) {
      FormalFunction residual = bracket(omega, left[a], right[b]);
      if (!residual.is_zero())
        return {name, false, "{" + gens[a].to_string() + ", " + gens[b].to_string() + "′}: " + to_string(residual)};
    }
  return {name, true, "0"};
}

ClassifyResult classifying_action(const CotangentChart& chart, const FormalForm& b, const FormalPoisson& pi) {
  if (b.order() != pi.order()) throw OrderMismatch(std::to_string(pi.order()) + " vs " + std::to_string(b.order()));
  if (!is_closed(b)) throw DomainError("classifying_action: B is not closed");
  FormalSymplectic omega = shifted_canonical(chart, b);
  MorphismSolution morphism = solve_poisson_morphism(chart, pi, omega);
  FormalDiffeo commutant = solve_commutant(chart, morphism, omega);
  FormalPoisson pi_b = extract_commutant_poisson(chart, commutant, omega);

  MoritaReport stages;
  std::vector<FormalFunction> images = base_images(chart, morphism.diffeo);
  std::vector<FormalFunction> images_prime = base_images(chart, commutant);
  stages.add(morphism_check("poisson-morphism", chart, images, pi, omega, 1));
  stages.add(commutation_check("commutation", chart, images, images_prime, omega));
  stages.add(morphism_check("anti-poisson-commutant", chart, images_prime, pi_b, omega, -1));
  stages.add({"order-zero-vanishes", pi_b.vanishes_at_order_zero(), pi_b.bivector()[0].to_string()});
  bool first_agrees = pi.order() < 1 || pi_b.bivector()[1] == pi.bivector()[1];
  stages.add({"first-order-agreement", first_agrees,
              first_agrees ? "0" : (pi_b.bivector()[1] - pi.bivector()[1]).to_string()});
  FormalMultiVector jac = jacobi_residual(pi_b.bivector());
  stages.add({"jacobi", jac.is_zero(), series_to_string(jac)});
  return {std::move(pi_b), std::move(morphism), std::move(commutant), std::move(stages)};
}

FormalVF log_along_projection(const CotangentChart& chart, std::span<const FormalFunction> images) {
  if (images.size() != chart.n()) throw DomainError("log_along_projection: need one image per base coordinate");
  const int order = images[0].order();
  const Chart& t = chart.total();
  for (std::size_t i = 0; i < chart.n(); ++i) {
    if (images[i].order() != order) throw OrderMismatch("log_along_projection: images of different orders");
    if (!(images[i][0] == Poly::variable(t, chart.q(i))))
      throw DomainError("log_along_projection: order-0 image of q" + std::to_string(i + 1) + " is not q" +
                        std::to_string(i + 1));
  }
  FormalVF z(t, order);
  for (int k = 1; k <= order; ++k) {
    VectorField zk(t, 1);
    for (std::size_t i = 0; i < chart.n(); ++i) {
      FormalFunction e = exp_lie(z, constant_series(order, Poly::variable(t, chart.q(i))));
      Poly diff = images[i][k] - e[k];
      if (!diff.is_zero()) zk += VectorField::basis(t, {chart.q(i)}, diff);
    }
    if (!zk.is_zero()) z += FormalVF::single(order, k, zk);
  }
  return z;
}

Factorization factor_morphism_ambiguity(const CotangentChart& chart, const FormalDiffeo& phi,
                                        const FormalDiffeo& phi_bar, const FormalSymplectic& omega) {
  const Chart& t = chart.total();
  const int order = omega.order();
  if (phi.order() != order || phi_bar.order() != order) throw OrderMismatch("factorization inputs differ in order");
  Factorization out{zero_function(t, order), FormalDiffeo(t, order), FormalDiffeo(t, order)};
  FormalPoisson sigma0(t, lift_series(order, omega.poisson().bivector()[0]));

  auto discrepancy = [&](std::size_t a) {
    FormalFunction x = constant_series(order, Poly::variable(t, a));
    return out.hamiltonian_flow.apply(phi.apply(out.vertical.apply(phi_bar.apply_inverse(x))));
  };

  for (int k = 0; k < order; ++k) {
    std::vector<Poly> z(t.dim());
    for (std::size_t a = 0; a < t.dim(); ++a) {
      FormalFunction m = discrepancy(a);
      m[0] -= Poly::variable(t, a);
      require_vanishing_below(m, k, "factorization discrepancy");
      z[a] = m[k + 1];
    }
    CECochain d(chart, 1);
    for (std::size_t i = 0; i < chart.n(); ++i) d.accumulate(index_bit(i), z[chart.q(i)]);
    require_closed(d, "ρ-projection of the discrepancy");
    Poly h = d.is_zero() ? Poly(t) : ce_homotopy(d).component(0);
    out.hamiltonian[k + 1] = h;

    VectorField vertical(t, 1);
    FormalFunction hs = constant_series(order, h);
    for (std::size_t a = 0; a < t.dim(); ++a) {
      Poly v = bracket(sigma0, constant_series(order, Poly::variable(t, a)), hs)[0] - z[a];
      if (v.is_zero()) continue;
      if (a < chart.n()) throw InternalAssertion("vertical correction moves a base coordinate");
      vertical += VectorField::basis(t, {a}, v);
    }
    if (!h.is_zero()) {
      FormalMultiVector xh = hamiltonian_vf(omega, hs).shifted(k + 1);
      out.hamiltonian_flow.prepend(FormalVF(std::move(xh), &t));
    }
    if (!vertical.is_zero()) out.vertical.append(FormalVF::single(order, k + 1, vertical));
  }
  for (std::size_t a = 0; a < t.dim(); ++a) {
    FormalFunction m = discrepancy(a);
    m[0] -= Poly::variable(t, a);
    if (!m.is_zero()) throw InternalAssertion("factorization does not reassemble on " + t.name(a));
  }
  return out;
}

}  // namespace fpois
