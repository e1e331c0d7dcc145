#pragma once

#include <vector>

#include "fpois/formal.hpp"

namespace fpois {

/// [π,π] truncated at the order of π.
FormalMultiVector jacobi_residual(const FormalMultiVector& pi);

/// π♯α = ι_α π.
FormalMultiVector sharp(const FormalMultiVector& pi, const FormalForm& alpha);
/// B♭X = ι_X B.
FormalForm flat(const FormalForm& b, const FormalMultiVector& x);

bool is_closed(const FormalForm& alpha);

/// Formal bivector field whose Schouten square vanishes mod λ^{N+1}.
class FormalPoisson {
public:
  /// Throws DomainError if `pi` is not a bivector series or [π,π] ≠ 0.
  FormalPoisson(const Chart& chart, FormalMultiVector pi);
  static FormalPoisson zero(const Chart& chart, int order);

  const Chart& chart() const { return *chart_; }
  int order() const { return pi_.order(); }
  const FormalMultiVector& bivector() const { return pi_; }
  /// π(dxᵃ, dxᵇ) as a formal function.
  FormalFunction component(std::size_t a, std::size_t b) const;
  bool vanishes_at_order_zero() const { return pi_[0].is_zero(); }

  friend bool operator==(const FormalPoisson& a, const FormalPoisson& b) { return a.pi_ == b.pi_; }

private:
  const Chart* chart_;
  FormalMultiVector pi_;
};

/// Closed formal 2-form with polynomially invertible order-0 part. The
/// inverse Poisson structure is computed once at construction.
class FormalSymplectic {
public:
  /// Throws DomainError if ω is not closed or its order-0 component
  /// matrix has non-constant or zero determinant.
  FormalSymplectic(const Chart& chart, FormalForm omega);

  const Chart& chart() const { return poisson_.chart(); }
  int order() const { return omega_.order(); }
  const FormalForm& form() const { return omega_; }
  const FormalPoisson& poisson() const { return poisson_; }

private:
  FormalForm omega_;
  FormalPoisson poisson_;
};

/// Poisson structure π_ω of a symplectic series. The component matrix is
/// Π = −W⁻¹ for ω = Σ_{a<b} W_ab dxᵃ∧dxᵇ, so that ι_{X_f}ω = −df and
/// {qⁱ, F} = ∂F/∂pᵢ for ω = Σ dqⁱ∧dpᵢ.
FormalPoisson invert_symplectic(const Chart& chart, const FormalForm& omega);
/// Inverse direction: the 2-form with W = (−Π)⁻¹. Needs nondegenerate π₀.
FormalForm invert_poisson(const FormalPoisson& pi);

/// τ_B(π) with (τ_Bπ)♯ = π♯(id + B♭π♯)⁻¹. Requires π₀ = 0 and dB = 0.
FormalPoisson gauge(const FormalPoisson& pi, const FormalForm& b);

/// {f,g} = π(df, dg) = Σ_{a<b} Πᵃᵇ(∂ₐf ∂_bg − ∂_bf ∂ₐg).
FormalFunction bracket(const FormalPoisson& pi, const FormalFunction& f, const FormalFunction& g);
FormalFunction bracket(const FormalSymplectic& omega, const FormalFunction& f, const FormalFunction& g);

/// X_f = π♯(df), so that X_f(g) = {f,g}.
FormalMultiVector hamiltonian_vf(const FormalPoisson& pi, const FormalFunction& f);
FormalMultiVector hamiltonian_vf(const FormalSymplectic& omega, const FormalFunction& f);

/// True iff exp(ℒ_X)π ≡ π′.
bool check_equivalence_witness(const FormalPoisson& pi, const FormalPoisson& pi_prime, const FormalVF& x);

/// Bivector series from its component functions Πᵃᵇ (a<b read only).
FormalMultiVector bivector_from_matrix(const Chart& chart, int order,
                                       const std::vector<std::vector<FormalFunction>>& matrix);

}  // namespace fpois
