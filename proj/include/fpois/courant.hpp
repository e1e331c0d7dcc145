#pragma once

#include <optional>
#include <vector>

#include "fpois/solver.hpp"

namespace fpois {

/// Formal section X ⊕ α of TM ⊕ T*M.
class CourantSection {
public:
  /// Throws if the parts are not degree 1 or differ in chart or order.
  /// `chart` is needed only when both parts are zero.
  CourantSection(FormalMultiVector field, FormalForm form, const Chart* chart = nullptr);
  static CourantSection zero(const Chart& chart, int order);

  const Chart& chart() const { return *chart_; }
  int order() const { return field_.order(); }
  const FormalMultiVector& field() const { return field_; }
  const FormalForm& form() const { return form_; }
  bool is_zero() const { return field_.is_zero() && form_.is_zero(); }

  CourantSection& operator+=(const CourantSection& o);
  CourantSection& operator-=(const CourantSection& o);
  friend CourantSection operator+(CourantSection a, const CourantSection& b) { return a += b; }
  friend CourantSection operator-(CourantSection a, const CourantSection& b) { return a -= b; }
  CourantSection operator-() const;
  CourantSection times(const FormalFunction& f) const;
  CourantSection shifted(int k) const;
  friend bool operator==(const CourantSection& a, const CourantSection& b) {
    return a.field_ == b.field_ && a.form_ == b.form_;
  }

  std::string to_string() const;

private:
  const Chart* chart_;
  FormalMultiVector field_;
  FormalForm form_;
};

/// ⟨X⊕α, Y⊕β⟩ = ι_Xβ + ι_Yα.
FormalFunction pairing(const CourantSection& a, const CourantSection& b);
/// [X,Y] ⊕ (ℒ_Xβ − ι_Y dα).
CourantSection dorfman(const CourantSection& a, const CourantSection& b);
/// τ_B(X⊕α) = X ⊕ (α + ι_X B).
CourantSection bfield_section(const FormalForm& b, const CourantSection& s);
/// [X,Y] ⊕ (ℒ_Xβ − ι_Y b).
CourantSection courant_derivation(const FormalVF& x, const FormalForm& b, const CourantSection& s);
/// exp(ℒ_X) on both parts.
CourantSection push_section(const FormalVF& x, const CourantSection& s);

/// F_t = exp(−tℒ_X) ∘ τ_{B_t} with B_t = Σ_k t^{k+1}/(k+1)! ℒ_X^k b.
struct BFieldFlow {
  FormalVF field;
  FormalForm b_t;
  CourantSection apply(const CourantSection& s) const;
};
BFieldFlow flow_bfield(const FormalVF& x, const FormalForm& b, const Rational& t);

/// Module generators whose order-0 part is the standard frame: each
/// anchored generator is 0 ⊕ dx^index and each vertical one ∂_index ⊕ 0
/// at order 0; the indices partition the chart coordinates.
struct Generator {
  CourantSection section;
  std::size_t index;
  bool vertical;
};

class GeneratorFrame {
public:
  /// Throws DomainError if the order-0 parts are not a standard frame.
  explicit GeneratorFrame(std::vector<Generator> generators);

  const std::vector<Generator>& generators() const { return generators_; }
  const Chart& chart() const { return generators_.front().section.chart(); }
  int order() const { return generators_.front().section.order(); }

private:
  std::vector<Generator> generators_;
};

/// ρ!gr(π): A_i = hor(π♯dqⁱ) ⊕ dqⁱ and V_i = ∂/∂pᵢ ⊕ 0. Requires π₀ = 0.
GeneratorFrame backward_generators(const CotangentChart& chart, const FormalPoisson& pi);
/// gr(π) on the base: π♯dqⁱ ⊕ dqⁱ. Requires π₀ = 0.
GeneratorFrame graph_generators(const FormalPoisson& pi);

/// Coefficients cⱼ with s = Σ cⱼ·generatorⱼ, in frame order, or nothing if
/// s is not in the span.
std::optional<std::vector<FormalFunction>> membership(const CourantSection& s, const GeneratorFrame& frame);

/// Both inclusions exp(−ℒ_Z)τ_{−ω}(ρ!gr π⁽¹⁾) ⊆ ρ!gr π⁽²⁾ and
/// τ_ω exp(ℒ_Z)(ρ!gr π⁽²⁾) ⊆ ρ!gr π⁽¹⁾, checked on generators.
MoritaReport check_dirac_criterion(const CotangentChart& chart, const FormalPoisson& pi1, const FormalPoisson& pi2,
                                   const FormalVF& z, const FormalForm& omega);

struct SelfEquivalence {
  FormalVF z;
  FormalSymplectic omega;
  /// ω = ω_can + dθ, one exact potential per order.
  FormalForm potential;
  MoritaReport report;
};

/// The self-equivalence bimodule of π: ρ* is anti-Poisson and exp(ℒ_Z)ρ*
/// is Poisson from π into the bracket of ω.
SelfEquivalence self_equivalence(const CotangentChart& chart, const FormalPoisson& pi);

/// Certificate that (π, ω + ρ*B, τ_{−B}π) is a bimodule, where ω is the
/// self-equivalence form of τ_{−B}π.
MoritaReport morita_witness(const CotangentChart& chart, const FormalPoisson& pi, const FormalForm& b);

}  // namespace fpois
