#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "fpois/error.hpp"
#include "fpois/poly.hpp"

namespace fpois {

/// Power series in λ truncated after λ^N. All arithmetic is mod λ^{N+1};
/// combining series with different N is an error, never an implicit
/// re-truncation.
///
/// `T` must provide `+=`, `-=`, unary `-`, `*= Rational` and `is_zero()`.
template <class T>
class FormalSeries {
public:
  FormalSeries(int order, const T& zero) : coeffs_(checked_size(order), zero) {}

  static FormalSeries single(int order, const T& zero, int power, const T& value) {
    FormalSeries s(order, zero);
    if (power <= order) s.coeffs_.at(power) = value;
    return s;
  }

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const T& operator[](int k) const { return coeffs_.at(k); }
  T& operator[](int k) { return coeffs_.at(k); }
  const std::vector<T>& coeffs() const { return coeffs_; }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (!c.is_zero()) return false;
    return true;
  }

  /// Lowest k with a nonzero coefficient, or order()+1 for the zero series.
  int valuation() const {
    for (int k = 0; k <= order(); ++k)
      if (!coeffs_[k].is_zero()) return k;
    return order() + 1;
  }

  FormalSeries& operator+=(const FormalSeries& o) {
    require_same_order(o);
    for (int k = 0; k <= order(); ++k) coeffs_[k] += o.coeffs_[k];
    return *this;
  }
  FormalSeries& operator-=(const FormalSeries& o) {
    require_same_order(o);
    for (int k = 0; k <= order(); ++k) coeffs_[k] -= o.coeffs_[k];
    return *this;
  }
  FormalSeries& operator*=(const Rational& c) {
    for (auto& x : coeffs_) x *= c;
    return *this;
  }
  FormalSeries operator-() const {
    FormalSeries out = *this;
    for (auto& x : out.coeffs_) x = -x;
    return out;
  }
  friend FormalSeries operator+(FormalSeries a, const FormalSeries& b) { return a += b; }
  friend FormalSeries operator-(FormalSeries a, const FormalSeries& b) { return a -= b; }
  friend FormalSeries operator*(FormalSeries a, const Rational& c) { return a *= c; }
  friend FormalSeries operator*(const Rational& c, FormalSeries a) { return a *= c; }

  /// Multiply by λ^k (dropping what falls off the end).
  FormalSeries shifted(int k) const {
    FormalSeries out(order(), coeffs_.front() * Rational(0));
    for (int j = 0; j + k <= order(); ++j) out.coeffs_[j + k] = coeffs_[j];
    return out;
  }

  /// Apply a coefficientwise map.
  template <class F>
  auto map(F&& f) const -> FormalSeries<decltype(f(std::declval<const T&>()))> {
    using U = decltype(f(std::declval<const T&>()));
    FormalSeries<U> out(order(), f(coeffs_.front()) * Rational(0));
    for (int k = 0; k <= order(); ++k) out[k] = f(coeffs_[k]);
    return out;
  }

  void require_same_order(const FormalSeries& o) const {
    if (o.order() != order())
      throw OrderMismatch(std::to_string(order()) + " vs " + std::to_string(o.order()));
  }

private:
  static std::size_t checked_size(int order) {
    if (order < 0) throw DomainError("truncation order must be nonnegative");
    return static_cast<std::size_t>(order) + 1;
  }
  std::vector<T> coeffs_;
};

template <class T>
bool operator==(const FormalSeries<T>& a, const FormalSeries<T>& b) {
  if (a.order() != b.order()) return false;
  for (int k = 0; k <= a.order(); ++k)
    if (!(a[k] == b[k])) return false;
  return true;
}

/// Cauchy product Σ_{i+j=k} mul(a_i, b_j), truncated at the common order.
template <class A, class B, class Mul>
auto cauchy(const FormalSeries<A>& a, const FormalSeries<B>& b, Mul&& mul, const decltype(mul(a[0], b[0]))& zero)
    -> FormalSeries<decltype(mul(a[0], b[0]))> {
  if (a.order() != b.order())
    throw OrderMismatch(std::to_string(a.order()) + " vs " + std::to_string(b.order()));
  const int n = a.order();
  FormalSeries<decltype(mul(a[0], b[0]))> out(n, zero);
  for (int i = 0; i <= n; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; i + j <= n; ++j) {
      if (b[j].is_zero()) continue;
      out[i + j] += mul(a[i], b[j]);
    }
  }
  return out;
}

using FormalFunction = FormalSeries<Poly>;

inline FormalFunction operator*(const FormalFunction& a, const FormalFunction& b) {
  return cauchy(a, b, [](const Poly& x, const Poly& y) { return x * y; }, Poly());
}

/// Series with `p` in order 0 and zeros elsewhere.
inline FormalFunction constant_series(int order, const Poly& p) {
  return FormalFunction::single(order, Poly(), 0, p);
}

std::string to_string(const FormalFunction& f);

/// Σ_{k=0}^{N} (−T)^k x, the value of (id + T)^{-1} on `x` when T raises
/// λ-order. Throws DomainError if an application of T fails to raise the
/// valuation of its (nonzero) argument.
template <class V, class Op>
V neumann_apply(const Op& op, const V& x, int order) {
  V sum = x;
  V term = x;
  for (int k = 1; k <= order; ++k) {
    if (term.is_zero()) break;
    V next = op(term);
    if (!next.is_zero() && next.valuation() <= term.valuation())
      throw DomainError("neumann_inverse: operator has a nonzero order-0 part");
    term = -next;
    sum += term;
  }
  return sum;
}

/// (id + T)^{-1} as an operator, truncated at λ^N.
template <class V, class Op>
std::function<V(const V&)> neumann_inverse(Op op, int order) {
  return [op = std::move(op), order](const V& x) { return neumann_apply(op, x, order); };
}

}  // namespace fpois
