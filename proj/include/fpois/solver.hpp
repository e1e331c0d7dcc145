#pragma once

#include <span>
#include <vector>

#include "fpois/ce.hpp"
#include "fpois/report.hpp"

namespace fpois {

/// Composite exp(ℒ_{X₁}) ∘ exp(ℒ_{X₂}) ∘ … ∘ exp(ℒ_{X_m}) acting on formal
/// functions and tensors; the leftmost factor is applied last.
class FormalDiffeo {
public:
  FormalDiffeo(const Chart& chart, int order) : chart_(&chart), order_(order) {}

  const Chart& chart() const { return *chart_; }
  int order() const { return order_; }
  const std::vector<FormalVF>& factors() const { return factors_; }
  bool is_identity() const;

  /// Add a factor on the right (applied first).
  void append(FormalVF x);
  /// Add a factor on the left (applied last).
  void prepend(FormalVF x);

  template <class T>
  FormalSeries<T> apply(FormalSeries<T> t) const {
    for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) t = exp_lie(*it, t);
    return t;
  }
  template <class T>
  FormalSeries<T> apply_inverse(FormalSeries<T> t) const {
    for (const auto& x : factors_) t = exp_lie(-x, t);
    return t;
  }

  /// Images of coordinate functions `coords` (default: all).
  std::vector<FormalFunction> images(std::span<const std::size_t> coords) const;
  std::vector<FormalFunction> images() const;

private:
  void require(const FormalVF& x) const;
  const Chart* chart_;
  int order_;
  std::vector<FormalVF> factors_;
};

/// g(Φ) for a base series g, where `images[i]` is the image of the i-th
/// base coordinate. Valid for ring morphisms Φ, exactly.
FormalFunction substitute(const FormalFunction& g, std::span<const FormalFunction> images);

/// Images Φ(ρ*qⁱ) of the base coordinates.
std::vector<FormalFunction> base_images(const CotangentChart& chart, const FormalDiffeo& phi);

struct MorphismSolution {
  FormalDiffeo diffeo;
  /// R_{k+1} as found at each order k = 0..N−1, before correction.
  std::vector<CECochain> cocycles;
  /// Residual after solving, per order 0..N (all zero on success).
  std::vector<CECochain> residuals;
};

/// The λ^{k+1} coefficient of Φ⁻¹{Φqⁱ, Φqʲ}_ω − ρ*πⁱʲ as a 2-cochain.
/// Throws InternalAssertion if lower orders do not vanish or the result is
/// not δ-closed.
CECochain morphism_residual(const CotangentChart& chart, const FormalDiffeo& phi, const FormalPoisson& pi,
                            const FormalSymplectic& omega, int k);

/// Requires π₀ = 0 and ω₀ = ω_can + ρ*B₀.
MorphismSolution solve_poisson_morphism(const CotangentChart& chart, const FormalPoisson& pi,
                                        const FormalSymplectic& omega);

/// Φ′ = exp(X′)ρ* whose image Poisson-commutes with the image of Φ.
FormalDiffeo solve_commutant(const CotangentChart& chart, const MorphismSolution& phi, const FormalSymplectic& omega);

/// π′ with {Φ′qⁱ, Φ′qʲ}_ω = −Φ′(π′ⁱʲ), so that Φ′ is anti-Poisson.
FormalPoisson extract_commutant_poisson(const CotangentChart& chart, const FormalDiffeo& phi_prime,
                                        const FormalSymplectic& omega);

struct ClassifyResult {
  FormalPoisson pi_b;
  MorphismSolution morphism;
  FormalDiffeo commutant;
  MoritaReport stages;
};

/// ω_can + ρ*B → Poisson morphism → commutant → commutant Poisson
/// structure. Requires dB = 0 and π₀ = 0.
ClassifyResult classifying_action(const CotangentChart& chart, const FormalForm& b, const FormalPoisson& pi);

/// Z with exp(ℒ_Z)ρ*qⁱ = images[i]; the vertical part of Z is zero.
FormalVF log_along_projection(const CotangentChart& chart, std::span<const FormalFunction> images);

struct Factorization {
  /// Σ_k λ^{k+1} H_{k+1}, one Hamiltonian per order.
  FormalFunction hamiltonian;
  /// exp(λ^N X_{H_N}) ∘ … ∘ exp(λ X_{H_1}).
  FormalDiffeo hamiltonian_flow;
  /// Vertical factors, first order leftmost.
  FormalDiffeo vertical;
};

/// Writes Φ̄ = hamiltonian_flow ∘ Φ ∘ vertical on all chart generators.
Factorization factor_morphism_ambiguity(const CotangentChart& chart, const FormalDiffeo& phi,
                                        const FormalDiffeo& phi_bar, const FormalSymplectic& omega);

/// Base coordinates and their pairwise products.
std::vector<Poly> generator_set(const CotangentChart& chart);

/// Checks {Φf, Φg}_ω = sign·Φ{f,g}_π for f, g in the generator set.
Check morphism_check(const std::string& name, const CotangentChart& chart, std::span<const FormalFunction> images,
                     const FormalPoisson& pi, const FormalSymplectic& omega, int sign);
/// Checks {Φf, Φ′g}_ω = 0 for f, g in the generator set.
Check commutation_check(const std::string& name, const CotangentChart& chart, std::span<const FormalFunction> images,
                        std::span<const FormalFunction> images_prime, const FormalSymplectic& omega);

}  // namespace fpois
