#pragma once

#include "fpois/cotangent.hpp"

namespace fpois {

/// (δD)^{I} = Σ_l (−1)^{l−1} ∂D^{I∖i_l}/∂p_{i_l}. Throws DomainError at top
/// degree.
CECochain ce_delta(const CECochain& d);

/// Relabel ∂/∂qⁱ as dpᵢ, and back.
VerticalForm psi(const CECochain& d);
CECochain psi_inv(const VerticalForm& eta);

/// Fiberwise exterior derivative, computed as the dp-part of d on the
/// total chart.
VerticalForm d_ver(const VerticalForm& eta);

/// Fiberwise Poincaré-lemma operator: m(q)p^a dp_I with |a| = d and
/// |I| = k maps to (1/(k+d)) Σ_l (−1)^{l−1} p_{i_l} m(q)p^a dp_{I∖i_l}.
VerticalForm vertical_homotopy(const VerticalForm& eta);

/// h = Ψ⁻¹ ∘ h_ver ∘ Ψ, so that δh + hδ = id in degrees ≥ 1.
CECochain ce_homotopy(const CECochain& d);

/// Degree-0 cochain holding a function on the total chart.
CECochain ce_function(const CotangentChart& chart, const Poly& f);

/// f − hδf in degree 0: the restriction of f to the zero section,
/// pulled back along ρ.
Poly zero_section_part(const CotangentChart& chart, const Poly& f);

}  // namespace fpois
