#pragma once

#include "fpois/series.hpp"
#include "fpois/tensor.hpp"

namespace fpois {

using FormalMultiVector = FormalSeries<MultiVector>;
using FormalForm = FormalSeries<DiffForm>;

inline FormalMultiVector zero_multivector(const Chart& chart, int order, int degree) {
  return FormalMultiVector(order, MultiVector(chart, degree));
}
inline FormalForm zero_form(const Chart& chart, int order, int degree) {
  return FormalForm(order, DiffForm(chart, degree));
}
inline FormalFunction zero_function(const Chart& chart, int order) { return FormalFunction(order, Poly(chart)); }

/// Formal vector field with vanishing order-0 part, so that exp(ℒ_X)
/// is a finite sum modulo λ^{N+1}.
class FormalVF {
public:
  FormalVF(const Chart& chart, int order);
  /// Throws DomainError unless `field` has degree 1 and zero order-0 part.
  /// `chart` is needed only when `field` carries no chart of its own.
  explicit FormalVF(FormalMultiVector field, const Chart* chart = nullptr);
  /// λ^power · v.
  static FormalVF single(int order, int power, const VectorField& v);

  const Chart& chart() const { return *chart_; }
  int order() const { return field_.order(); }
  const FormalMultiVector& field() const { return field_; }
  const VectorField& operator[](int k) const { return field_[k]; }
  bool is_zero() const { return field_.is_zero(); }

  FormalVF operator-() const { return FormalVF(-field_, chart_); }
  FormalVF& operator+=(const FormalVF& o);
  FormalVF& operator-=(const FormalVF& o);
  FormalVF& operator*=(const Rational& c);
  friend FormalVF operator+(FormalVF a, const FormalVF& b) { return a += b; }
  friend FormalVF operator-(FormalVF a, const FormalVF& b) { return a -= b; }
  friend FormalVF operator*(const Rational& c, FormalVF a) { return a *= c; }
  friend bool operator==(const FormalVF& a, const FormalVF& b) { return a.field_ == b.field_; }

  std::string to_string() const;

private:
  const Chart* chart_;
  FormalMultiVector field_;
};

/// Cauchy product of a coefficientwise bilinear operation.
template <class A, class B, class Op>
auto formal_bilinear(const FormalSeries<A>& a, const FormalSeries<B>& b, Op op) {
  using R = decltype(op(a[0], b[0]));
  return cauchy(a, b, op, R());
}

template <class T>
FormalSeries<T> formal_lie(const FormalMultiVector& x, const FormalSeries<T>& t) {
  return formal_bilinear(x, t, [](const VectorField& v, const T& s) { return lie_derivative(v, s); });
}

template <class T>
FormalSeries<T> formal_lie(const FormalVF& x, const FormalSeries<T>& t) {
  return formal_lie(x.field(), t);
}

/// exp(ℒ_X) T = Σ_m ℒ_X^m T / m!, truncated at the common order.
template <class T>
FormalSeries<T> exp_lie(const FormalVF& x, const FormalSeries<T>& t) {
  if (x.order() != t.order())
    throw OrderMismatch(std::to_string(x.order()) + " vs " + std::to_string(t.order()));
  FormalSeries<T> sum = t;
  FormalSeries<T> term = t;
  for (int m = 1; m <= t.order(); ++m) {
    term = formal_lie(x, term);
    if (term.is_zero()) break;
    term *= Rational(1, m);
    sum += term;
  }
  return sum;
}

FormalMultiVector formal_schouten(const FormalMultiVector& a, const FormalMultiVector& b);
FormalMultiVector formal_wedge(const FormalMultiVector& a, const FormalMultiVector& b);
FormalForm formal_wedge(const FormalForm& a, const FormalForm& b);
FormalMultiVector formal_contract(const FormalForm& alpha, const FormalMultiVector& t);
FormalForm formal_contract(const FormalMultiVector& x, const FormalForm& omega);
FormalFunction formal_apply(const FormalMultiVector& x, const FormalFunction& f);
FormalForm formal_d(const FormalForm& alpha);
FormalForm formal_d(const FormalFunction& f);
/// Module action of formal functions on formal tensors.
FormalMultiVector formal_times(const FormalFunction& f, const FormalMultiVector& t);
FormalForm formal_times(const FormalFunction& f, const FormalForm& t);

/// Constant-in-λ embedding of a tensor or function.
template <class T>
FormalSeries<T> lift_series(int order, const T& value) {
  return FormalSeries<T>::single(order, value * Rational(0), 0, value);
}

template <class T>
std::string series_to_string(const FormalSeries<T>& s) {
  std::string out;
  for (int k = 0; k <= s.order(); ++k) {
    if (s[k].is_zero()) continue;
    if (!out.empty()) out += "; ";
    out += "λ^" + std::to_string(k) + ": " + s[k].to_string();
  }
  return out.empty() ? "0" : out;
}

}  // namespace fpois
