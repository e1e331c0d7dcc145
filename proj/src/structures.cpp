#include "fpois/structures.hpp"

#include <map>

#include "fpois/error.hpp"

namespace fpois {

namespace {

using PolyMatrix = std::vector<std::vector<Poly>>;
using SeriesMatrix = std::vector<std::vector<FormalFunction>>;

PolyMatrix multiply(const PolyMatrix& a, const PolyMatrix& b) {
  const std::size_t m = a.size();
  PolyMatrix out(m, std::vector<Poly>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (!b[k][j].is_zero()) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

SeriesMatrix multiply(const SeriesMatrix& a, const SeriesMatrix& b) {
  const std::size_t m = a.size();
  const int order = a[0][0].order();
  SeriesMatrix out(m, std::vector<FormalFunction>(m, FormalFunction(order, Poly())));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (!b[k][j].is_zero()) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

bool is_zero(const SeriesMatrix& a) {
  for (const auto& row : a)
    for (const auto& e : row)
      if (!e.is_zero()) return false;
  return true;
}

/// A⁻¹ by Faddeev–LeVerrier. The characteristic recursion only divides by
/// integers, so the result is polynomial whenever det A is a nonzero
/// constant; otherwise DomainError.
PolyMatrix invert_polynomial_matrix(const Chart& chart, const PolyMatrix& a) {
  const std::size_t m = a.size();
  PolyMatrix mk(m, std::vector<Poly>(m, Poly(chart)));
  Poly c = Poly::constant(chart, 1);
  for (std::size_t k = 1; k <= m; ++k) {
    mk = multiply(a, mk);
    for (std::size_t i = 0; i < m; ++i) mk[i][i] += c;
    PolyMatrix amk = multiply(a, mk);
    Poly trace(chart);
    for (std::size_t i = 0; i < m; ++i) trace += amk[i][i];
    c = trace * Rational(-1, static_cast<long>(k));
  }
  if (!c.is_constant() || c.is_zero())
    throw DomainError("order-0 matrix has non-constant or zero determinant: no polynomial inverse");
  Rational scale = -1 / c.constant_term();
  for (auto& row : mk)
    for (auto& e : row) e *= scale;
  return mk;
}

/// Inverse of a series matrix with polynomially invertible order 0.
SeriesMatrix invert_series_matrix(const Chart& chart, const SeriesMatrix& w) {
  const std::size_t m = w.size();
  const int order = w[0][0].order();
  PolyMatrix w0(m, std::vector<Poly>(m, Poly(chart)));
  SeriesMatrix higher = w;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      w0[i][j] = w[i][j][0];
      higher[i][j][0] = Poly(chart);
    }
  PolyMatrix w0_inv = invert_polynomial_matrix(chart, w0);
  SeriesMatrix base(m, std::vector<FormalFunction>(m, FormalFunction(order, Poly())));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) base[i][j] = constant_series(order, w0_inv[i][j]);
  // W⁻¹ = Σ_k (−W0⁻¹W₊)^k W0⁻¹.
  SeriesMatrix t = multiply(base, higher);
  SeriesMatrix sum = base;
  SeriesMatrix term = base;
  for (int k = 1; k <= order; ++k) {
    term = multiply(t, term);
    if (is_zero(term)) break;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        term[i][j] = -term[i][j];
        sum[i][j] += term[i][j];
      }
  }
  return sum;
}

template <class T>
SeriesMatrix component_matrix(const Chart& chart, const FormalSeries<T>& t) {
  const std::size_t m = chart.dim();
  const int order = t.order();
  SeriesMatrix out(m, std::vector<FormalFunction>(m, zero_function(chart, order)));
  for (int k = 0; k <= order; ++k) {
    if (!t[k].is_zero() && t[k].degree() != 2) throw DomainError("expected a series of degree-2 tensors");
    for (const auto& [s, c] : t[k].components()) {
      auto idx = index_list(s);
      out[idx[0]][idx[1]][k] += c;
      out[idx[1]][idx[0]][k] -= c;
    }
  }
  return out;
}

FormalForm form_from_matrix(const Chart& chart, int order, const SeriesMatrix& w) {
  FormalForm out = zero_form(chart, order, 2);
  for (std::size_t a = 0; a < w.size(); ++a)
    for (std::size_t b = a + 1; b < w.size(); ++b)
      for (int k = 0; k <= order; ++k)
        if (!w[a][b][k].is_zero()) out[k] += DiffForm::basis(chart, {a, b}, w[a][b][k]);
  return out;
}

void require_chart(const Chart* expected, const Chart* actual) {
  if (actual != nullptr && actual != expected) throw ChartMismatch("structure and argument on different charts");
}

}  // namespace

FormalMultiVector jacobi_residual(const FormalMultiVector& pi) { return formal_schouten(pi, pi); }

FormalMultiVector sharp(const FormalMultiVector& pi, const FormalForm& alpha) { return formal_contract(alpha, pi); }

FormalForm flat(const FormalForm& b, const FormalMultiVector& x) { return formal_contract(x, b); }

bool is_closed(const FormalForm& alpha) { return formal_d(alpha).is_zero(); }

FormalMultiVector bivector_from_matrix(const Chart& chart, int order, const SeriesMatrix& matrix) {
  FormalMultiVector out = zero_multivector(chart, order, 2);
  for (std::size_t a = 0; a < matrix.size(); ++a)
    for (std::size_t b = a + 1; b < matrix.size(); ++b)
      for (int k = 0; k <= order; ++k)
        if (!matrix[a][b][k].is_zero()) out[k] += MultiVector::basis(chart, {a, b}, matrix[a][b][k]);
  return out;
}

FormalPoisson::FormalPoisson(const Chart& chart, FormalMultiVector pi) : chart_(&chart), pi_(std::move(pi)) {
  for (int k = 0; k <= pi_.order(); ++k) {
    if (pi_[k].is_zero()) continue;
    if (pi_[k].degree() != 2) throw DomainError("Poisson structure must be a bivector series");
    require_chart(chart_, pi_[k].chart());
  }
  FormalMultiVector residual = jacobi_residual(pi_);
  if (!residual.is_zero())
    throw DomainError("not a formal Poisson structure: [π,π] = " + series_to_string(residual));
}

FormalPoisson FormalPoisson::zero(const Chart& chart, int order) {
  return FormalPoisson(chart, zero_multivector(chart, order, 2));
}

FormalFunction FormalPoisson::component(std::size_t a, std::size_t b) const {
  FormalFunction out = zero_function(*chart_, order());
  if (a == b) return out;
  IndexSet s = index_bit(a) | index_bit(b);
  for (int k = 0; k <= order(); ++k) out[k] = a < b ? pi_[k].component(s) : -pi_[k].component(s);
  return out;
}

FormalSymplectic::FormalSymplectic(const Chart& chart, FormalForm omega)
    : omega_(std::move(omega)), poisson_(invert_symplectic(chart, omega_)) {}

FormalPoisson invert_symplectic(const Chart& chart, const FormalForm& omega) {
  for (int k = 0; k <= omega.order(); ++k) require_chart(&chart, omega[k].chart());
  if (!is_closed(omega)) throw DomainError("symplectic form is not closed");
  SeriesMatrix w = component_matrix(chart, omega);
  SeriesMatrix inv = invert_series_matrix(chart, w);
  for (auto& row : inv)
    for (auto& e : row) e = -e;
  return FormalPoisson(chart, bivector_from_matrix(chart, omega.order(), inv));
}

FormalForm invert_poisson(const FormalPoisson& pi) {
  SeriesMatrix p = component_matrix(pi.chart(), pi.bivector());
  for (auto& row : p)
    for (auto& e : row) e = -e;
  return form_from_matrix(pi.chart(), pi.order(), invert_series_matrix(pi.chart(), p));
}

FormalPoisson gauge(const FormalPoisson& pi, const FormalForm& b) {
  if (!pi.vanishes_at_order_zero()) throw DomainError("gauge: π₀ ≠ 0 (general invertibility is out of scope)");
  if (b.order() != pi.order()) throw OrderMismatch(std::to_string(pi.order()) + " vs " + std::to_string(b.order()));
  if (!is_closed(b)) throw DomainError("gauge: B is not closed");
  const Chart& chart = pi.chart();
  const int order = pi.order();
  auto op = [&](const FormalForm& beta) { return flat(b, sharp(pi.bivector(), beta)); };
  SeriesMatrix matrix(chart.dim(), std::vector<FormalFunction>(chart.dim(), zero_function(chart, order)));
  for (std::size_t a = 0; a < chart.dim(); ++a) {
    FormalForm dxa = lift_series(order, DiffForm::basis(chart, {a}, Poly::constant(chart, 1)));
    FormalMultiVector v = sharp(pi.bivector(), neumann_apply(op, dxa, order));
    for (std::size_t c = a + 1; c < chart.dim(); ++c)
      for (int k = 0; k <= order; ++k) matrix[a][c][k] = v[k].component(index_bit(c));
  }
  return FormalPoisson(chart, bivector_from_matrix(chart, order, matrix));
}

FormalFunction bracket(const FormalPoisson& pi, const FormalFunction& f, const FormalFunction& g) {
  const Chart& chart = pi.chart();
  const int order = pi.order();
  if (f.order() != order || g.order() != order)
    throw OrderMismatch("bracket operands must share the structure's truncation order");
  std::vector<FormalFunction> df, dg;
  for (std::size_t a = 0; a < chart.dim(); ++a) {
    df.push_back(f.map([a](const Poly& p) { return p.partial(a); }));
    dg.push_back(g.map([a](const Poly& p) { return p.partial(a); }));
  }
  std::map<IndexSet, FormalFunction> cross;
  FormalFunction out = zero_function(chart, order);
  for (int k = 0; k <= order; ++k)
    for (const auto& [s, c] : pi.bivector()[k].components()) {
      auto it = cross.find(s);
      if (it == cross.end()) {
        auto idx = index_list(s);
        it = cross.emplace(s, df[idx[0]] * dg[idx[1]] - df[idx[1]] * dg[idx[0]]).first;
      }
      const FormalFunction& x = it->second;
      for (int j = 0; j + k <= order; ++j)
        if (!x[j].is_zero()) out[j + k] += c * x[j];
    }
  return out;
}

FormalFunction bracket(const FormalSymplectic& omega, const FormalFunction& f, const FormalFunction& g) {
  return bracket(omega.poisson(), f, g);
}

FormalMultiVector hamiltonian_vf(const FormalPoisson& pi, const FormalFunction& f) {
  FormalMultiVector out = sharp(pi.bivector(), formal_d(f));
  for (int k = 0; k <= out.order(); ++k)
    if (out[k].is_zero()) out[k] = MultiVector(pi.chart(), 1);
  return out;
}

FormalMultiVector hamiltonian_vf(const FormalSymplectic& omega, const FormalFunction& f) {
  return hamiltonian_vf(omega.poisson(), f);
}

bool check_equivalence_witness(const FormalPoisson& pi, const FormalPoisson& pi_prime, const FormalVF& x) {
  if (pi.order() != pi_prime.order() || x.order() != pi.order()) return false;
  return exp_lie(x, pi.bivector()) == pi_prime.bivector();
}

}  // namespace fpois
