#include "fpois/ce.hpp"

#include "fpois/error.hpp"

namespace fpois {

namespace {

inline int parity_sign(int n) { return (n & 1) ? -1 : 1; }

}  // namespace

CECochain ce_delta(const CECochain& d) {
  const CotangentChart& chart = d.chart();
  if (d.degree() >= static_cast<int>(chart.n())) throw DomainError("ce_delta: input has top degree");
  CECochain out(chart, d.degree() + 1);
  for (const auto& [s, c] : d.components())
    for (std::size_t j = 0; j < chart.n(); ++j) {
      if (index_contains(s, j)) continue;
      Poly v = c.partial(chart.p(j));
      if (v.is_zero()) continue;
      out.accumulate(s | index_bit(j), parity_sign(index_below(s, j)) > 0 ? v : -v);
    }
  return out;
}

VerticalForm psi(const CECochain& d) {
  VerticalForm out(d.chart(), d.degree());
  for (const auto& [s, c] : d.components()) out.accumulate(s, c);
  return out;
}

CECochain psi_inv(const VerticalForm& eta) {
  CECochain out(eta.chart(), eta.degree());
  for (const auto& [s, c] : eta.components()) out.accumulate(s, c);
  return out;
}

VerticalForm d_ver(const VerticalForm& eta) {
  const CotangentChart& chart = eta.chart();
  const Chart& t = chart.total();
  if (eta.degree() >= static_cast<int>(chart.n())) throw DomainError("d_ver: input has top degree");
  DiffForm as_form(t, eta.degree());
  for (const auto& [s, c] : eta.components()) {
    std::vector<std::size_t> idx;
    for (auto i : index_list(s)) idx.push_back(chart.p(i));
    as_form += DiffForm::basis(t, idx, c);
  }
  DiffForm full = exterior_d(as_form);
  VerticalForm out(chart, eta.degree() + 1);
  const IndexSet base_mask = index_bit(chart.n()) - 1;
  for (const auto& [s, c] : full.components())
    if ((s & base_mask) == 0) out.accumulate(s >> chart.n(), c);
  return out;
}

VerticalForm vertical_homotopy(const VerticalForm& eta) {
  const CotangentChart& chart = eta.chart();
  const int k = eta.degree();
  if (k < 1) throw DomainError("vertical_homotopy: degree-0 input");
  const Chart& t = chart.total();
  VerticalForm out(chart, k - 1);
  for (const auto& [s, c] : eta.components()) {
    Poly weighted = fiber_radial_integral(c, chart.fiber_indices(), k);
    int l = 0;
    for (auto i : index_list(s)) {
      Poly v = Poly::variable(t, chart.p(i)) * weighted;
      out.accumulate(s & ~index_bit(i), parity_sign(l) > 0 ? v : -v);
      ++l;
    }
  }
  return out;
}

CECochain ce_homotopy(const CECochain& d) {
  if (d.degree() < 1) throw DomainError("ce_homotopy: degree-0 input");
  return psi_inv(vertical_homotopy(psi(d)));
}

CECochain ce_function(const CotangentChart& chart, const Poly& f) {
  CECochain out(chart, 0);
  out.accumulate(0, f);
  return out;
}

Poly zero_section_part(const CotangentChart& chart, const Poly& f) {
  return f.restrict_to_zero(chart.fiber_indices());
}

}  // namespace fpois
