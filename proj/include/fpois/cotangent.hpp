#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fpois/structures.hpp"

namespace fpois {

/// Coordinates q1..qn on the base and q1..qn, p1..pn on T*ℝⁿ. Base
/// coordinate i pairs with fiber coordinate n+i of the total chart.
class CotangentChart {
public:
  explicit CotangentChart(std::size_t n);

  std::size_t n() const { return base_->dim(); }
  const Chart& base() const { return *base_; }
  const Chart& total() const { return *total_; }
  std::size_t q(std::size_t i) const { return i; }
  std::size_t p(std::size_t i) const { return n() + i; }
  const std::vector<std::size_t>& base_indices() const { return *base_indices_; }
  const std::vector<std::size_t>& fiber_indices() const { return *fiber_indices_; }

  friend bool operator==(const CotangentChart& a, const CotangentChart& b) { return a.base_ == b.base_; }

private:
  const Chart* base_;
  const Chart* total_;
  const std::vector<std::size_t>* base_indices_;
  const std::vector<std::size_t>* fiber_indices_;
};

enum class CochainKind { Horizontal, Vertical };

/// Degree-k object over T*ℝⁿ indexed by increasing tuples of base
/// indices 0..n−1 with coefficients in (q,p):
///   Horizontal: sections Σ D^I ∂/∂q^I of ρ*∧ᵏTP;
///   Vertical:   vertical forms Σ η_I dp_I.
/// Degrees above n are allowed and hold only the zero cochain.
template <CochainKind Kind>
class IndexedCochain {
public:
  IndexedCochain(const CotangentChart& chart, int degree);

  const CotangentChart& chart() const { return chart_; }
  int degree() const { return degree_; }
  const std::map<IndexSet, Poly>& components() const { return comps_; }
  Poly component(IndexSet s) const;
  bool is_zero() const { return comps_.empty(); }
  void accumulate(IndexSet s, const Poly& coeff);

  IndexedCochain& operator+=(const IndexedCochain& o);
  IndexedCochain& operator-=(const IndexedCochain& o);
  IndexedCochain& operator*=(const Rational& c);
  IndexedCochain operator-() const;
  friend IndexedCochain operator+(IndexedCochain a, const IndexedCochain& b) { return a += b; }
  friend IndexedCochain operator-(IndexedCochain a, const IndexedCochain& b) { return a -= b; }
  friend IndexedCochain operator*(const Rational& c, IndexedCochain a) { return a *= c; }
  friend bool operator==(const IndexedCochain& a, const IndexedCochain& b) {
    return a.chart_ == b.chart_ && a.comps_ == b.comps_;
  }
  /// Multiplication by a function on the total chart.
  IndexedCochain times(const Poly& f) const;

  std::string to_string() const;

private:
  void require_compatible(const IndexedCochain& o) const;
  CotangentChart chart_;
  int degree_;
  std::map<IndexSet, Poly> comps_;
};

using CECochain = IndexedCochain<CochainKind::Horizontal>;
using VerticalForm = IndexedCochain<CochainKind::Vertical>;

extern template class IndexedCochain<CochainKind::Horizontal>;
extern template class IndexedCochain<CochainKind::Vertical>;

Poly rho_pullback(const CotangentChart& chart, const Poly& f);
DiffForm rho_pullback(const CotangentChart& chart, const DiffForm& alpha);
FormalFunction rho_pullback(const CotangentChart& chart, const FormalFunction& f);
FormalForm rho_pullback(const CotangentChart& chart, const FormalForm& alpha);

/// The base series f with ρ*f = F if every coefficient of F is
/// p-independent; empty otherwise.
std::optional<FormalFunction> is_basic(const CotangentChart& chart, const FormalFunction& f);

struct CanonicalForms {
  DiffForm theta;  ///< Σ pᵢ dqⁱ
  DiffForm omega;  ///< Σ dqⁱ∧dpᵢ
};
CanonicalForms canonical_forms(const CotangentChart& chart);

/// ω_can + ρ*B as a formal symplectic structure.
FormalSymplectic shifted_canonical(const CotangentChart& chart, const FormalForm& base_b);

/// Flat lift Σ Dⁱ ∂/∂qⁱ of a degree-1 cochain.
VectorField horizontal_lift(const CECochain& d);
/// Base-direction part of a vector field on the total chart.
CECochain project(const CotangentChart& chart, const VectorField& x);

/// Z = hor(π♯(Σ pᵢ dqⁱ)) for a base Poisson structure with π₀ = 0.
FormalVF z_field(const CotangentChart& chart, const FormalPoisson& pi);

struct IntegratedForm {
  FormalForm omega;      ///< ω_can + Σ_{k≥1} ℒ_Z^k ω_can / (k+1)!
  FormalForm potential;  ///< θ with ω = ω_can + dθ; its λ-coefficients are the θ_k
};
/// Requires Z₀ = 0 (guaranteed by FormalVF).
IntegratedForm omega_from_z(const CotangentChart& chart, const FormalVF& z);

/// The map pᵢ ↦ pᵢ + θᵢ(q) for a base 1-form θ.
class FiberTranslation {
public:
  FiberTranslation(const CotangentChart& chart, const DiffForm& theta);

  const std::vector<Poly>& images() const { return images_; }
  Poly pull(const Poly& f) const;
  DiffForm pull(const DiffForm& alpha) const;

private:
  CotangentChart chart_;
  std::vector<Poly> images_;
};

}  // namespace fpois
