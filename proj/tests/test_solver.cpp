#include "doctest.h"
#include "helpers.hpp"

#include "fpois/random.hpp"
#include "fpois/solver.hpp"

using namespace fpois;
using namespace testing_support;

namespace {

FormalPoisson lambda_poisson(const Chart& c, int order, const MultiVector& first) {
  FormalMultiVector pi = zero_multivector(c, order, 2);
  pi[1] = first;
  return FormalPoisson(c, pi);
}

FormalSymplectic canonical(const CotangentChart& ch, int order) {
  return shifted_canonical(ch, zero_form(ch.base(), order, 2));
}

/// ω_can + λ dp₁∧dp₂ on T*ℝ².
FormalSymplectic shifted_fiber(const CotangentChart& ch, int order) {
  const Chart& t = ch.total();
  FormalForm w = lift_series(order, canonical_forms(ch).omega);
  w[1] = form(t, {2, 3}, one(t));
  return FormalSymplectic(t, w);
}

std::vector<FormalFunction> coordinate_series(const CotangentChart& ch, int order) {
  std::vector<FormalFunction> out;
  for (std::size_t i = 0; i < ch.n(); ++i) out.push_back(constant_series(order, Poly::variable(ch.total(), ch.q(i))));
  return out;
}

/// Field with only ∂/∂qⁱ components and vanishing order 0.
FormalVF horizontal_field(Random& rng, const CotangentChart& ch, int order) {
  const Chart& t = ch.total();
  FormalVF z(t, order);
  for (int k = 1; k <= order; ++k) {
    VectorField v(t, 1);
    for (std::size_t i = 0; i < ch.n(); ++i)
      if (rng.coin()) v += vec(t, {ch.q(i)}, rng.poly(t, 2, 2));
    z += FormalVF::single(order, k, v);
  }
  return z;
}

}  // namespace

TEST_CASE("substitution into images") {
  CotangentChart ch(2);
  const Chart& b = ch.base();
  const Chart& t = ch.total();
  const int n = 3;
  std::vector<FormalFunction> id = coordinate_series(ch, n);
  Random rng(61);
  for (int i = 0; i < 10; ++i) {
    FormalFunction g = constant_series(n, rng.poly(b, 3, 4));
    g[2] = rng.poly(b, 2, 3);
    CHECK(substitute(g, id) == rho_pullback(ch, g));
  }
  // q1 ↦ q1 + λp1: (q1)² ↦ q1² + 2λq1p1 + λ²p1².
  std::vector<FormalFunction> shifted = id;
  shifted[0][1] = coord(t, "p1");
  FormalFunction sq = substitute(constant_series(n, coord(b, "q1") * coord(b, "q1")), shifted);
  CHECK(sq[0] == coord(t, "q1") * coord(t, "q1"));
  CHECK(sq[1] == constant(t, 2) * coord(t, "q1") * coord(t, "p1"));
  CHECK(sq[2] == coord(t, "p1") * coord(t, "p1"));
  CHECK(sq[3].is_zero());
  // Ring morphism: substitution commutes with products.
  FormalVF z = rng.formal_vf(t, n, 2, 2);
  std::vector<FormalFunction> images;
  for (std::size_t i = 0; i < 2; ++i) images.push_back(exp_lie(z, id[i]));
  for (int i = 0; i < 5; ++i) {
    FormalFunction f = constant_series(n, rng.poly(b, 2, 3)), g = constant_series(n, rng.poly(b, 2, 3));
    CHECK(substitute(f * g, images) == substitute(f, images) * substitute(g, images));
  }
}

TEST_CASE("diffeomorphism factor order") {
  CotangentChart ch(1);
  const Chart& t = ch.total();
  const int n = 2;
  FormalDiffeo phi(t, n);
  CHECK(phi.is_identity());
  FormalVF shift = FormalVF::single(n, 1, vec(t, {0}, coord(t, "p1")));
  FormalVF scale = FormalVF::single(n, 1, vec(t, {1}, coord(t, "p1")));
  phi.append(shift);
  phi.prepend(scale);
  FormalFunction q = constant_series(n, coord(t, "q1"));
  CHECK(phi.apply(q) == exp_lie(scale, exp_lie(shift, q)));
  CHECK(phi.apply_inverse(phi.apply(q)) == q);
  CHECK_THROWS_AS(phi.append(FormalVF(t, n + 1)), OrderMismatch);
  CHECK_THROWS_AS(phi.append(FormalVF(CotangentChart(2).total(), n)), ChartMismatch);
}

TEST_CASE("logarithm along the projection") {
  CotangentChart ch(2);
  const Chart& t = ch.total();
  const int n = 3;
  std::vector<FormalFunction> id = coordinate_series(ch, n);
  CHECK(log_along_projection(ch, id).is_zero());

  std::vector<FormalFunction> images = id;
  images[0][1] = coord(t, "p1");
  FormalVF z = log_along_projection(ch, images);
  CHECK(z[1] == vec(t, {0}, coord(t, "p1")));
  CHECK(z[2].is_zero());
  CHECK(z[3].is_zero());

  // q1 ↦ q1(1 + λp1) has logarithm q1·log(1 + λp1)∂_{q1}.
  images[0][1] = coord(t, "q1") * coord(t, "p1");
  z = log_along_projection(ch, images);
  Poly p = coord(t, "p1"), q = coord(t, "q1");
  CHECK(z[1] == vec(t, {0}, q * p));
  CHECK(z[2] == vec(t, {0}, constant(t, -1, 2) * q * p * p));
  CHECK(z[3] == vec(t, {0}, constant(t, 1, 3) * q * p * p * p));

  Random rng(62);
  for (int i = 0; i < 10; ++i) {
    FormalVF h = horizontal_field(rng, ch, n);
    std::vector<FormalFunction> im;
    for (const auto& c : id) im.push_back(exp_lie(h, c));
    CHECK(log_along_projection(ch, im) == h);
    FormalVF general = rng.formal_vf(t, n, 2, 3);
    im.clear();
    for (const auto& c : id) im.push_back(exp_lie(general, c));
    FormalVF back = log_along_projection(ch, im);
    for (std::size_t j = 0; j < 2; ++j) CHECK(exp_lie(back, id[j]) == im[j]);
  }

  images = id;
  images[1][0] = coord(t, "q1");
  CHECK_THROWS_AS(log_along_projection(ch, images), DomainError);
}

TEST_CASE("first residual of the morphism problem") {
  CotangentChart ch(2);
  const Chart& b = ch.base();
  const Chart& t = ch.total();
  const int n = 2;
  FormalDiffeo id(t, n);
  CECochain r0 = morphism_residual(ch, id, FormalPoisson::zero(b, n), canonical(ch, n), 0);
  CHECK(r0.is_zero());
  // Π for ω_can + λdp1∧dp2 has Π^{q1q2} = −λ, so R₁ = −1 − 1.
  CECochain r = morphism_residual(ch, id, lambda_poisson(b, n, vec(b, {0, 1}, one(b))), shifted_fiber(ch, n), 0);
  CHECK(r.degree() == 2);
  CHECK(r.component(0b11) == constant(t, -2));
}

TEST_CASE("Poisson morphism solver") {
  CotangentChart ch(2);
  const Chart& b = ch.base();
  const int n = 3;
  MorphismSolution trivial = solve_poisson_morphism(ch, FormalPoisson::zero(b, n), canonical(ch, n));
  CHECK(trivial.diffeo.is_identity());

  FormalPoisson pi = lambda_poisson(b, n, vec(b, {0, 1}, one(b)));
  FormalSymplectic omega = shifted_fiber(ch, n);
  MorphismSolution sol = solve_poisson_morphism(ch, pi, omega);
  CHECK_FALSE(sol.diffeo.is_identity());
  REQUIRE(sol.residuals.size() == static_cast<std::size_t>(n + 1));
  for (const auto& r : sol.residuals) CHECK(r.is_zero());
  CHECK(sol.cocycles.size() == static_cast<std::size_t>(n));
  std::vector<FormalFunction> images = base_images(ch, sol.diffeo);
  Check c = morphism_check("poisson", ch, images, pi, omega, 1);
  CHECK_MESSAGE(c.pass, c.residual);

  FormalPoisson lifted(b, lift_series(n, vec(b, {0, 1}, one(b))));
  CHECK_THROWS_AS(solve_poisson_morphism(ch, lifted, omega), DomainError);
}

TEST_CASE("Poisson morphism solver on random data") {
  Random rng(63);
  for (std::size_t dim : {2u, 3u}) {
    CotangentChart ch(dim);
    const Chart& b = ch.base();
    const int n = dim == 2 ? 3 : 2;
    for (int trial = 0; trial < 3; ++trial) {
      FormalPoisson pi = rng.formal_poisson(b, n);
      FormalForm bf = rng.closed_two_form(b, n, trial == 0 ? 0 : 1, 1);
      FormalSymplectic omega = shifted_canonical(ch, bf);
      MorphismSolution sol = solve_poisson_morphism(ch, pi, omega);
      for (const auto& r : sol.residuals) CHECK(r.is_zero());
      for (const auto& r : sol.cocycles)
        if (r.degree() < static_cast<int>(dim)) CHECK(ce_delta(r).is_zero());
      Check c = morphism_check("poisson", ch, base_images(ch, sol.diffeo), pi, omega, 1);
      CHECK_MESSAGE(c.pass, c.residual);
      // Replay the partial solver states: each R_{k+1} is a cocycle.
      FormalDiffeo partial(ch.total(), n);
      for (int k = 0; k < n; ++k) {
        CECochain r = morphism_residual(ch, partial, pi, omega, k);
        CHECK(r == sol.cocycles[k]);
        if (!r.is_zero()) partial.append(FormalVF::single(n, k + 1, horizontal_lift(-ce_homotopy(r))));
      }
    }
  }
}

TEST_CASE("commutant of the self-equivalence morphism") {
  CotangentChart ch(2);
  const Chart& b = ch.base();
  const Chart& t = ch.total();
  const int n = 3;
  MorphismSolution id{FormalDiffeo(t, n), {}, {}};
  FormalDiffeo prime = solve_commutant(ch, id, canonical(ch, n));
  CHECK(prime.is_identity());
  CHECK(extract_commutant_poisson(ch, prime, canonical(ch, n)).bivector().is_zero());

  FormalPoisson pi = lambda_poisson(b, n, vec(b, {0, 1}, one(b)));
  FormalVF z = z_field(ch, pi);
  FormalSymplectic omega(t, omega_from_z(ch, z).omega);
  MorphismSolution flow{FormalDiffeo(t, n), {}, {}};
  flow.diffeo.append(z);
  FormalDiffeo commutant = solve_commutant(ch, flow, omega);
  CHECK(commutant.is_identity());
  FormalPoisson extracted = extract_commutant_poisson(ch, commutant, omega);
  CHECK(extracted == pi);

  FormalPoisson curved = lambda_poisson(b, n, vec(b, {0, 1}, coord(b, "q1")));
  FormalVF zc = z_field(ch, curved);
  FormalSymplectic wc(t, omega_from_z(ch, zc).omega);
  MorphismSolution fc{FormalDiffeo(t, n), {}, {}};
  fc.diffeo.append(zc);
  CHECK(solve_commutant(ch, fc, wc).is_identity());
  CHECK(extract_commutant_poisson(ch, FormalDiffeo(t, n), wc) == curved);
}

TEST_CASE("commutant after solving") {
  Random rng(64);
  CotangentChart ch(2);
  const Chart& b = ch.base();
  const int n = 3;
  for (int trial = 0; trial < 4; ++trial) {
    FormalPoisson pi = rng.formal_poisson(b, n);
    FormalSymplectic omega = shifted_canonical(ch, rng.closed_two_form(b, n, 1, 1));
    MorphismSolution sol = solve_poisson_morphism(ch, pi, omega);
    FormalDiffeo prime = solve_commutant(ch, sol, omega);
    std::vector<FormalFunction> images = base_images(ch, sol.diffeo);
    std::vector<FormalFunction> images_prime = base_images(ch, prime);
    Check c = commutation_check("commute", ch, images, images_prime, omega);
    CHECK_MESSAGE(c.pass, c.residual);
    FormalPoisson pi_prime = extract_commutant_poisson(ch, prime, omega);
    CHECK(pi_prime.vanishes_at_order_zero());
    CHECK(pi_prime.bivector()[1] == pi.bivector()[1]);
    Check anti = morphism_check("anti", ch, images_prime, pi_prime, omega, -1);
    CHECK_MESSAGE(anti.pass, anti.residual);
  }
}

TEST_CASE("classifying action") {
  CotangentChart ch(2);
  const Chart& b = ch.base();
  const int n = 3;
  ClassifyResult zero = classifying_action(ch, zero_form(b, n, 2), FormalPoisson::zero(b, n));
  CHECK(zero.pi_b.bivector().is_zero());
  CHECK(zero.stages.pass());

  Random rng(65);
  for (int trial = 0; trial < 4; ++trial) {
    FormalPoisson pi = rng.formal_poisson(b, n);
    FormalForm bf = rng.closed_two_form(b, n, trial % 2, 1);
    ClassifyResult r = classifying_action(ch, bf, pi);
    CHECK_MESSAGE(r.stages.pass(), (r.stages.pass() ? std::string() : r.stages.first_failure()->name));
    CHECK(r.pi_b.bivector()[0].is_zero());
    CHECK(r.pi_b.bivector()[1] == pi.bivector()[1]);
    CHECK(jacobi_residual(r.pi_b.bivector()).is_zero());
  }
  FormalForm open = lift_series(n, form(b, {0}, coord(b, "q2")));
  CHECK_THROWS_AS(classifying_action(ch, open, FormalPoisson::zero(b, n)), DomainError);
}

TEST_CASE("factorization of the morphism ambiguity") {
  CotangentChart ch(2);
  const Chart& b = ch.base();
  const Chart& t = ch.total();
  const int n = 3;
  Random rng(66);
  for (int trial = 0; trial < 3; ++trial) {
    FormalPoisson pi = rng.formal_poisson(b, n);
    FormalSymplectic omega = shifted_canonical(ch, rng.closed_two_form(b, n, 1, 1));
    MorphismSolution sol = solve_poisson_morphism(ch, pi, omega);

    Factorization same = factor_morphism_ambiguity(ch, sol.diffeo, sol.diffeo, omega);
    CHECK(same.hamiltonian.is_zero());
    CHECK(same.vertical.is_identity());
    CHECK(same.hamiltonian_flow.is_identity());

    // Post-compose with a Hamiltonian flow at order 1.
    FormalFunction h(n, Poly());
    h[0] = rng.poly(t, 2, 3);
    FormalDiffeo bar = sol.diffeo;
    bar.prepend(FormalVF(hamiltonian_vf(omega, h).shifted(1), &t));
    Check still = morphism_check("poisson", ch, base_images(ch, bar), pi, omega, 1);
    CHECK_MESSAGE(still.pass, still.residual);
    Factorization post = factor_morphism_ambiguity(ch, sol.diffeo, bar, omega);
    CHECK(post.hamiltonian[0].is_zero());
    // Only ρ*-derivatives of H are seen at first order: h and H₁ differ by a basic function.
    for (std::size_t i = 0; i < 2; ++i)
      CHECK((post.hamiltonian[1] - h[0]).partial(ch.p(i)).is_zero());
    for (const auto& v : post.vertical.factors())
      for (int k = 0; k <= n; ++k)
        for (std::size_t i = 0; i < 2; ++i) CHECK(v[k].component(index_bit(ch.q(i))).is_zero());

    // Pre-compose with a vertical factor at order 2.
    FormalDiffeo pre = sol.diffeo;
    VectorField vert = vec(t, {ch.p(0)}, rng.poly(t, 2, 2)) + vec(t, {ch.p(1)}, rng.poly(t, 2, 2));
    pre.append(FormalVF::single(n, 2, vert));
    Factorization vf = factor_morphism_ambiguity(ch, sol.diffeo, pre, omega);
    CHECK(vf.hamiltonian[1].is_zero());
    CHECK(vf.hamiltonian[2].is_zero());
  }
}
