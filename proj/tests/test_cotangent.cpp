#include "doctest.h"
#include "helpers.hpp"

#include "fpois/cotangent.hpp"
#include "fpois/random.hpp"

using namespace fpois;
using namespace testing_support;

namespace {

FormalPoisson lambda_poisson(const Chart& c, int order, const MultiVector& first) {
  FormalMultiVector pi = zero_multivector(c, order, 2);
  pi[1] = first;
  return FormalPoisson(c, pi);
}

}  // namespace

TEST_CASE("pullback along the projection") {
  CotangentChart ch(2);
  const Chart& b = ch.base();
  const Chart& t = ch.total();
  CHECK(rho_pullback(ch, coord(b, "q1")) == coord(t, "q1"));
  DiffForm pulled = rho_pullback(ch, form(b, {0, 1}, coord(b, "q2")));
  CHECK(pulled == form(t, {0, 1}, coord(t, "q2")));
  for (const auto& [s, c] : pulled.components()) CHECK((s >> 2) == 0u);
  Random rng(41);
  for (int i = 0; i < 20; ++i) {
    Poly f = rng.poly(b, 3, 3), g = rng.poly(b, 3, 3);
    CHECK(rho_pullback(ch, f * g) == rho_pullback(ch, f) * rho_pullback(ch, g));
  }
  CHECK_THROWS_AS(rho_pullback(ch, coord(t, "p1")), ChartMismatch);
}

TEST_CASE("basic functions") {
  CotangentChart ch(2);
  const Chart& t = ch.total();
  const int n = 1;
  FormalFunction f(n, Poly());
  f[0] = coord(t, "q1");
  f[1] = coord(t, "q2") * coord(t, "q2");
  auto basic = is_basic(ch, f);
  REQUIRE(basic.has_value());
  CHECK(rho_pullback(ch, *basic) == f);
  CHECK_FALSE(is_basic(ch, constant_series(n, coord(t, "p1"))).has_value());
  f[1] = coord(t, "p1") * coord(t, "q2");
  CHECK_FALSE(is_basic(ch, f).has_value());
}

TEST_CASE("canonical forms") {
  CotangentChart one_dim(1);
  const Chart& t1 = one_dim.total();
  CanonicalForms c1 = canonical_forms(one_dim);
  CHECK(c1.theta == form(t1, {0}, coord(t1, "p1")));
  CHECK(c1.omega == form(t1, {0, 1}, one(t1)));
  CotangentChart ch(3);
  CanonicalForms c = canonical_forms(ch);
  CHECK(-exterior_d(c.theta) == c.omega);
  CHECK(exterior_d(c.omega).is_zero());
}

TEST_CASE("horizontal lift") {
  CotangentChart ch(2);
  const Chart& t = ch.total();
  CECochain d(ch, 1);
  d.accumulate(index_bit(0), one(t));
  CHECK(horizontal_lift(d) == vec(t, {0}, one(t)));
  CECochain e(ch, 1);
  e.accumulate(index_bit(1), coord(t, "p1"));
  CHECK(horizontal_lift(e) == vec(t, {1}, coord(t, "p1")));
  Random rng(42);
  for (int i = 0; i < 20; ++i) {
    CECochain r(ch, 1);
    for (std::size_t j = 0; j < 2; ++j) r.accumulate(index_bit(j), rng.poly(t, 3, 3));
    CHECK(project(ch, horizontal_lift(r)) == r);
  }
}

TEST_CASE("the field Z") {
  CotangentChart ch(2);
  const Chart& b = ch.base();
  const Chart& t = ch.total();
  const int n = 3;
  CHECK(z_field(ch, FormalPoisson::zero(b, n)).is_zero());
  FormalVF z = z_field(ch, lambda_poisson(b, n, vec(b, {0, 1}, one(b))));
  CHECK(z[1] == vec(t, {1}, coord(t, "p1")) - vec(t, {0}, coord(t, "p2")));
  CHECK(z[2].is_zero());
  FormalVF zq = z_field(ch, lambda_poisson(b, n, vec(b, {0, 1}, coord(b, "q1"))));
  CHECK(zq[1] == vec(t, {1}, coord(t, "q1") * coord(t, "p1")) - vec(t, {0}, coord(t, "q1") * coord(t, "p2")));
  CHECK_THROWS_AS(z_field(ch, FormalPoisson(b, lift_series(n, vec(b, {0, 1}, one(b))))), DomainError);
}

TEST_CASE("integrated symplectic form") {
  CotangentChart ch(2);
  const Chart& b = ch.base();
  const Chart& t = ch.total();
  const int n = 4;
  CanonicalForms can = canonical_forms(ch);
  IntegratedForm zero = omega_from_z(ch, FormalVF(t, n));
  CHECK(zero.omega == lift_series(n, can.omega));
  CHECK(zero.potential.is_zero());

  FormalVF z = z_field(ch, lambda_poisson(b, n, vec(b, {0, 1}, one(b))));
  IntegratedForm w = omega_from_z(ch, z);
  FormalForm expected = lift_series(n, can.omega);
  expected[1] = form(t, {2, 3}, one(t));
  CHECK(w.omega == expected);

  Random rng(43);
  for (int i = 0; i < 8; ++i) {
    FormalPoisson pi = rng.formal_poisson(b, n);
    IntegratedForm r = omega_from_z(ch, z_field(ch, pi));
    CHECK(is_closed(r.omega));
    CHECK(r.omega[0] == can.omega);
    FormalForm rebuilt = lift_series(n, can.omega) + formal_d(r.potential);
    CHECK(rebuilt == r.omega);
    FormalVF zr = rng.formal_vf(t, 3, 2, 2);
    CHECK(is_closed(omega_from_z(ch, zr).omega));
  }
}

TEST_CASE("fiber translation") {
  CotangentChart ch(2);
  const Chart& b = ch.base();
  const Chart& t = ch.total();
  CanonicalForms can = canonical_forms(ch);
  FiberTranslation identity(ch, DiffForm(b, 1));
  CHECK(identity.pull(can.omega) == can.omega);
  DiffForm theta = form(b, {0}, coord(b, "q2"));
  FiberTranslation psi(ch, theta);
  // With ω_can = −dθ_can, translating by θ shifts ω_can by −ρ*dθ.
  CHECK(psi.pull(can.omega) == can.omega - rho_pullback(ch, exterior_d(theta)));
  Random rng(44);
  for (int i = 0; i < 10; ++i) {
    DiffForm th = rng.form(b, 1, 2, 2);
    DiffForm b_new = exterior_d(rng.form(b, 1, 2, 2));
    DiffForm b_old = b_new + exterior_d(th);
    FiberTranslation f(ch, th);
    CHECK(f.pull(can.omega + rho_pullback(ch, b_old)) == can.omega + rho_pullback(ch, b_new));
    Poly g = rng.poly(b, 3, 3);
    CHECK(f.pull(rho_pullback(ch, g)) == rho_pullback(ch, g));
  }
}
