#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "fpois/poly.hpp"

namespace fpois {

/// Strictly increasing index tuple, stored as a bitmask (bit i = index i).
using IndexSet = std::uint32_t;

inline int index_count(IndexSet s) { return __builtin_popcount(s); }
inline bool index_contains(IndexSet s, std::size_t i) { return (s >> i) & 1u; }
inline IndexSet index_bit(std::size_t i) { return IndexSet(1) << i; }
/// Number of elements of `s` strictly below `i`.
inline int index_below(IndexSet s, std::size_t i) { return index_count(s & (index_bit(i) - 1)); }
/// Number of elements of `s` strictly above `i`.
inline int index_above(IndexSet s, std::size_t i) { return index_count(s >> (i + 1)); }
std::vector<std::size_t> index_list(IndexSet s);
IndexSet index_set(const std::vector<std::size_t>& indices);

/// Sign of the permutation sorting the concatenation I ++ J (disjoint).
int concat_sign(IndexSet a, IndexSet b);

enum class TensorKind { Vector, Form };

/// Homogeneous multivector field (Kind = Vector) or differential form
/// (Kind = Form) of fixed degree with polynomial coefficients.
///
/// Only increasing index tuples are stored; zero components are dropped.
/// The degree is kept even for the zero tensor. A default-constructed
/// tensor is an unbound degree-0 zero.
template <TensorKind Kind>
class Tensor {
public:
  Tensor() = default;
  Tensor(const Chart& chart, int degree);

  /// Degree-0 tensor holding a function.
  static Tensor scalar(const Poly& f);
  /// coeff · e_{i1} ∧ … ∧ e_{ik}, indices in any order (sign applied).
  static Tensor basis(const Chart& chart, const std::vector<std::size_t>& indices, const Poly& coeff);

  const Chart* chart() const { return chart_; }
  int degree() const { return degree_; }
  const std::map<IndexSet, Poly>& components() const { return comps_; }
  Poly component(IndexSet s) const;
  /// Component on the (possibly unsorted) tuple, antisymmetry applied.
  Poly component(const std::vector<std::size_t>& indices) const;
  /// Degree-0 value as a function.
  Poly as_function() const { return component(IndexSet(0)); }

  bool is_zero() const { return comps_.empty(); }

  /// Add `coeff` to the component on `s` (sign not applied).
  void accumulate(IndexSet s, const Poly& coeff);

  Tensor& operator+=(const Tensor& o);
  Tensor& operator-=(const Tensor& o);
  Tensor& operator*=(const Rational& c);
  Tensor operator-() const;
  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator*(Tensor a, const Rational& c) { return a *= c; }
  friend Tensor operator*(const Rational& c, Tensor a) { return a *= c; }
  /// Module structure over functions.
  friend Tensor operator*(const Poly& f, const Tensor& t) { return t.times(f); }
  friend bool operator==(const Tensor& a, const Tensor& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return a.chart_ == b.chart_ && a.degree_ == b.degree_ && a.comps_ == b.comps_;
  }

  Tensor times(const Poly& f) const;
  /// Coefficientwise map of each component.
  template <class F>
  Tensor map_coeffs(F&& f) const {
    Tensor out(*chart_, degree_);
    for (const auto& [s, c] : comps_) out.accumulate(s, f(c));
    return out;
  }

  /// `coeff * ∂q1∧∂q2 + …` or `coeff * dq1∧dp1 + …`.
  std::string to_string() const;

private:
  void bind(const Tensor& o);
  const Chart* chart_ = nullptr;
  int degree_ = 0;
  std::map<IndexSet, Poly> comps_;
};

using MultiVector = Tensor<TensorKind::Vector>;
using DiffForm = Tensor<TensorKind::Form>;
using VectorField = MultiVector;

extern template class Tensor<TensorKind::Vector>;
extern template class Tensor<TensorKind::Form>;

/// Graded-commutative exterior product.
MultiVector wedge(const MultiVector& a, const MultiVector& b);
DiffForm wedge(const DiffForm& a, const DiffForm& b);

/// ι_α T for a 1-form α, with ι_α(X∧Y) = α(X)Y − α(Y)X extended as a
/// degree −1 derivation.
MultiVector contract(const DiffForm& alpha, const MultiVector& t);
/// ι_X ω for a vector field X, same convention.
DiffForm contract(const VectorField& x, const DiffForm& omega);

/// Directional derivative X(f).
Poly apply(const VectorField& x, const Poly& f);

DiffForm exterior_d(const DiffForm& alpha);
DiffForm exterior_d(const Poly& f);

/// Schouten–Nijenhuis bracket, computed componentwise:
/// [A,B] = Σ_i (A ∂⃖/∂ξ_i) ∧ ∂_i B − (−1)^{(a−1)(b−1)} (B ∂⃖/∂ξ_i) ∧ ∂_i A.
/// Agrees with the Lie bracket on vector fields and with X(f) on (X, f).
MultiVector schouten(const MultiVector& a, const MultiVector& b);

MultiVector lie_derivative(const VectorField& x, const MultiVector& t);
DiffForm lie_derivative(const VectorField& x, const DiffForm& alpha);
Poly lie_derivative(const VectorField& x, const Poly& f);

/// Pullback of a form along the map whose coordinate functions are
/// `images` (one per source coordinate, all on `target`).
DiffForm pullback(const DiffForm& alpha, const Chart& target, std::span<const Poly> images);

}  // namespace fpois
