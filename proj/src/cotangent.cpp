#include "fpois/cotangent.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <sstream>

#include "fpois/error.hpp"

namespace fpois {

namespace {

struct Layout {
  std::vector<std::size_t> base;
  std::vector<std::size_t> fiber;
};

const Layout& layout_for(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<Layout>> registry;
  std::lock_guard lock(mutex);
  auto& slot = registry[n];
  if (!slot) {
    slot = std::make_unique<Layout>();
    for (std::size_t i = 0; i < n; ++i) {
      slot->base.push_back(i);
      slot->fiber.push_back(n + i);
    }
  }
  return *slot;
}

const Chart& total_chart(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back("q" + std::to_string(i));
  for (std::size_t i = 1; i <= n; ++i) names.push_back("p" + std::to_string(i));
  return Chart::get(names);
}

void require_base(const CotangentChart& chart, const Chart* c) {
  if (c != nullptr && c != &chart.base()) throw ChartMismatch("expected a function or form on the base chart");
}

}  // namespace

CotangentChart::CotangentChart(std::size_t n) {
  if (n == 0 || 2 * n > kMaxChartDim) throw DomainError("cotangent chart needs 1 <= n <= " + std::to_string(kMaxChartDim / 2));
  base_ = &Chart::numbered("q", n);
  total_ = &total_chart(n);
  const Layout& l = layout_for(n);
  base_indices_ = &l.base;
  fiber_indices_ = &l.fiber;
}

// ---------------------------------------------------------------------------

template <CochainKind Kind>
IndexedCochain<Kind>::IndexedCochain(const CotangentChart& chart, int degree) : chart_(chart), degree_(degree) {
  if (degree < 0 || degree >= 32) throw DomainError("cochain degree out of range");
}

template <CochainKind Kind>
Poly IndexedCochain<Kind>::component(IndexSet s) const {
  auto it = comps_.find(s);
  return it == comps_.end() ? Poly(chart_.total()) : it->second;
}

template <CochainKind Kind>
void IndexedCochain<Kind>::accumulate(IndexSet s, const Poly& coeff) {
  if (coeff.is_zero()) return;
  if (index_count(s) != degree_ || (s >> chart_.n()) != 0) throw DomainError("cochain index out of range");
  if (coeff.chart() != &chart_.total()) throw ChartMismatch("cochain coefficients live on the total chart");
  auto [it, inserted] = comps_.try_emplace(s, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) comps_.erase(it);
  }
}

template <CochainKind Kind>
void IndexedCochain<Kind>::require_compatible(const IndexedCochain& o) const {
  if (!(o.chart_ == chart_)) throw ChartMismatch("cochains on different cotangent charts");
  if (o.degree_ != degree_ && !o.is_zero() && !is_zero()) throw DomainError("cochain degree mismatch");
}

template <CochainKind Kind>
IndexedCochain<Kind>& IndexedCochain<Kind>::operator+=(const IndexedCochain& o) {
  require_compatible(o);
  if (is_zero()) degree_ = o.degree_;
  for (const auto& [s, c] : o.comps_) accumulate(s, c);
  return *this;
}

template <CochainKind Kind>
IndexedCochain<Kind>& IndexedCochain<Kind>::operator-=(const IndexedCochain& o) {
  require_compatible(o);
  if (is_zero()) degree_ = o.degree_;
  for (const auto& [s, c] : o.comps_) accumulate(s, -c);
  return *this;
}

template <CochainKind Kind>
IndexedCochain<Kind>& IndexedCochain<Kind>::operator*=(const Rational& c) {
  if (c == 0) comps_.clear();
  for (auto& [s, p] : comps_) p *= c;
  return *this;
}

template <CochainKind Kind>
IndexedCochain<Kind> IndexedCochain<Kind>::operator-() const {
  IndexedCochain out = *this;
  for (auto& [s, p] : out.comps_) p = -p;
  return out;
}

template <CochainKind Kind>
IndexedCochain<Kind> IndexedCochain<Kind>::times(const Poly& f) const {
  IndexedCochain out(chart_, degree_);
  for (const auto& [s, c] : comps_) out.accumulate(s, f * c);
  return out;
}

template <CochainKind Kind>
std::string IndexedCochain<Kind>::to_string() const {
  if (comps_.empty()) return "0";
  std::vector<std::pair<std::vector<std::size_t>, const Poly*>> rows;
  for (const auto& [s, c] : comps_) rows.emplace_back(index_list(s), &c);
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::ostringstream os;
  bool first = true;
  for (const auto& [idx, c] : rows) {
    if (!first) os << " + ";
    first = false;
    if (idx.empty()) {
      os << c->to_string();
      continue;
    }
    os << (c->size() > 1 ? "(" + c->to_string() + ")" : c->to_string()) << " * ";
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (k > 0) os << "∧";
      if constexpr (Kind == CochainKind::Horizontal)
        os << "∂" << chart_.total().name(chart_.q(idx[k]));
      else
        os << "d" << chart_.total().name(chart_.p(idx[k]));
    }
  }
  return os.str();
}

template class IndexedCochain<CochainKind::Horizontal>;
template class IndexedCochain<CochainKind::Vertical>;

// ---------------------------------------------------------------------------

Poly rho_pullback(const CotangentChart& chart, const Poly& f) {
  require_base(chart, f.chart());
  return f.embed(chart.total(), chart.base_indices());
}

DiffForm rho_pullback(const CotangentChart& chart, const DiffForm& alpha) {
  require_base(chart, alpha.chart());
  DiffForm out(chart.total(), alpha.degree());
  for (const auto& [s, c] : alpha.components()) out.accumulate(s, rho_pullback(chart, c));
  return out;
}

FormalFunction rho_pullback(const CotangentChart& chart, const FormalFunction& f) {
  return f.map([&](const Poly& p) { return rho_pullback(chart, p); });
}

FormalForm rho_pullback(const CotangentChart& chart, const FormalForm& alpha) {
  return alpha.map([&](const DiffForm& a) { return rho_pullback(chart, a); });
}

std::optional<FormalFunction> is_basic(const CotangentChart& chart, const FormalFunction& f) {
  FormalFunction out = zero_function(chart.base(), f.order());
  for (int k = 0; k <= f.order(); ++k) {
    if (f[k].chart() != nullptr && f[k].chart() != &chart.total())
      throw ChartMismatch("is_basic expects a function on the total chart");
    if (!f[k].independent_of(chart.fiber_indices())) return std::nullopt;
    out[k] = f[k].embed(chart.base(), chart.base_indices());
  }
  return out;
}

CanonicalForms canonical_forms(const CotangentChart& chart) {
  const Chart& t = chart.total();
  CanonicalForms out{DiffForm(t, 1), DiffForm(t, 2)};
  for (std::size_t i = 0; i < chart.n(); ++i) {
    out.theta += DiffForm::basis(t, {chart.q(i)}, Poly::variable(t, chart.p(i)));
    out.omega += DiffForm::basis(t, {chart.q(i), chart.p(i)}, Poly::constant(t, 1));
  }
  return out;
}

FormalSymplectic shifted_canonical(const CotangentChart& chart, const FormalForm& base_b) {
  FormalForm omega = rho_pullback(chart, base_b);
  omega[0] += canonical_forms(chart).omega;
  return FormalSymplectic(chart.total(), std::move(omega));
}

VectorField horizontal_lift(const CECochain& d) {
  if (d.degree() != 1) throw DomainError("horizontal lift expects a degree-1 cochain");
  const CotangentChart& chart = d.chart();
  VectorField out(chart.total(), 1);
  for (const auto& [s, c] : d.components()) out.accumulate(s, c);
  return out;
}

CECochain project(const CotangentChart& chart, const VectorField& x) {
  CECochain out(chart, 1);
  for (const auto& [s, c] : x.components())
    if (s < index_bit(chart.n())) out.accumulate(s, c);
  return out;
}

FormalVF z_field(const CotangentChart& chart, const FormalPoisson& pi) {
  if (&pi.chart() != &chart.base()) throw ChartMismatch("z_field expects a Poisson structure on the base");
  if (!pi.vanishes_at_order_zero()) throw DomainError("z_field: π₀ ≠ 0");
  const Chart& t = chart.total();
  FormalMultiVector z = zero_multivector(t, pi.order(), 1);
  for (int k = 1; k <= pi.order(); ++k)
    for (const auto& [s, c] : pi.bivector()[k].components()) {
      auto idx = index_list(s);
      Poly coeff = rho_pullback(chart, c);
      z[k] += VectorField::basis(t, {chart.q(idx[1])}, Poly::variable(t, chart.p(idx[0])) * coeff);
      z[k] -= VectorField::basis(t, {chart.q(idx[0])}, Poly::variable(t, chart.p(idx[1])) * coeff);
    }
  return FormalVF(std::move(z), &t);
}

IntegratedForm omega_from_z(const CotangentChart& chart, const FormalVF& z) {
  if (&z.chart() != &chart.total()) throw ChartMismatch("omega_from_z expects a field on the total chart");
  const int order = z.order();
  CanonicalForms can = canonical_forms(chart);
  FormalForm omega = lift_series(order, can.omega);
  FormalForm potential = zero_form(chart.total(), order, 1);
  FormalForm lie_omega = omega;
  FormalForm lie_theta = lift_series(order, can.theta);
  Rational factorial = 1;
  for (int k = 1; k <= order; ++k) {
    lie_omega = formal_lie(z, lie_omega);
    lie_theta = formal_lie(z, lie_theta);
    if (lie_omega.is_zero() && lie_theta.is_zero()) break;
    factorial *= k + 1;
    omega += lie_omega * (1 / factorial);
    potential -= lie_theta * (1 / factorial);
  }
  return {omega, potential};
}

FiberTranslation::FiberTranslation(const CotangentChart& chart, const DiffForm& theta) : chart_(chart) {
  require_base(chart, theta.chart());
  if (!theta.is_zero() && theta.degree() != 1) throw DomainError("fiber translation needs a 1-form");
  const Chart& t = chart.total();
  for (std::size_t a = 0; a < t.dim(); ++a) images_.push_back(Poly::variable(t, a));
  for (const auto& [s, c] : theta.components()) {
    std::size_t i = index_list(s).front();
    images_[chart.p(i)] += rho_pullback(chart, c);
  }
}

Poly FiberTranslation::pull(const Poly& f) const { return f.compose(chart_.total(), images_); }

DiffForm FiberTranslation::pull(const DiffForm& alpha) const { return pullback(alpha, chart_.total(), images_); }

}  // namespace fpois
