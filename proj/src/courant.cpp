#include "fpois/courant.hpp"

#include "fpois/error.hpp"

namespace fpois {

namespace {

template <class T>
void check_part(const FormalSeries<T>& s, const Chart*& chart, const char* what) {
  for (int k = 0; k <= s.order(); ++k) {
    if (s[k].is_zero()) continue;
    if (s[k].degree() != 1) throw DomainError(std::string("section ") + what + " must have degree 1");
    chart = common_chart(chart, s[k].chart());
  }
}

FormalFunction scalar(const FormalForm& f) {
  return f.map([](const DiffForm& a) { return a.component(0); });
}

struct MembershipResult {
  std::vector<FormalFunction> coefficients;
  CourantSection residual;
};

MembershipResult reduce(const CourantSection& s, const GeneratorFrame& frame) {
  if (&s.chart() != &frame.chart()) throw ChartMismatch("section and frame on different charts");
  if (s.order() != frame.order()) throw OrderMismatch(std::to_string(s.order()) + " vs " + std::to_string(frame.order()));
  const int order = s.order();
  const auto& gens = frame.generators();
  MembershipResult out{std::vector<FormalFunction>(gens.size(), zero_function(s.chart(), order)), s};
  for (int m = 0; m <= order; ++m)
    for (std::size_t j = 0; j < gens.size(); ++j) {
      const Generator& g = gens[j];
      IndexSet slot = index_bit(g.index);
      Poly c = g.vertical ? out.residual.field()[m].component(slot) : out.residual.form()[m].component(slot);
      if (c.is_zero()) continue;
      out.coefficients[j][m] = c;
      out.residual -= g.section.times(constant_series(order, c)).shifted(m);
    }
  return out;
}

Check inclusion(const std::string& name, const std::vector<CourantSection>& sections, const GeneratorFrame& target) {
  for (std::size_t j = 0; j < sections.size(); ++j) {
    MembershipResult r = reduce(sections[j], target);
    if (!r.residual.is_zero())
      return {name, false, "generator " + std::to_string(j + 1) + ": " + r.residual.to_string()};
  }
  return {name, true, "0"};
}

std::vector<FormalFunction> coordinate_images(const CotangentChart& chart, int order) {
  std::vector<FormalFunction> out;
  for (std::size_t i = 0; i < chart.n(); ++i)
    out.push_back(constant_series(order, Poly::variable(chart.total(), chart.q(i))));
  return out;
}

Check closedness(const FormalForm& omega) {
  FormalForm d = formal_d(omega);
  return {"closed", d.is_zero(), series_to_string(d)};
}

const char* kAnalyticNote =
    "analytic conditions (complete projection, connected and simply connected fibres): satisfied by construction";

}  // namespace

CourantSection::CourantSection(FormalMultiVector field, FormalForm form, const Chart* chart)
    : chart_(chart), field_(std::move(field)), form_(std::move(form)) {
  if (field_.order() != form_.order())
    throw OrderMismatch(std::to_string(field_.order()) + " vs " + std::to_string(form_.order()));
  check_part(field_, chart_, "field");
  check_part(form_, chart_, "form");
  if (chart_ == nullptr) throw DomainError("section parts carry no chart");
}

CourantSection CourantSection::zero(const Chart& chart, int order) {
  return CourantSection(zero_multivector(chart, order, 1), zero_form(chart, order, 1), &chart);
}

CourantSection& CourantSection::operator+=(const CourantSection& o) {
  if (o.chart_ != chart_) throw ChartMismatch("sections on different charts");
  field_ += o.field_;
  form_ += o.form_;
  return *this;
}

CourantSection& CourantSection::operator-=(const CourantSection& o) {
  if (o.chart_ != chart_) throw ChartMismatch("sections on different charts");
  field_ -= o.field_;
  form_ -= o.form_;
  return *this;
}

CourantSection CourantSection::operator-() const {
  CourantSection out = *this;
  out.field_ = -field_;
  out.form_ = -form_;
  return out;
}

CourantSection CourantSection::times(const FormalFunction& f) const {
  CourantSection out = *this;
  out.field_ = formal_times(f, field_);
  out.form_ = formal_times(f, form_);
  return out;
}

CourantSection CourantSection::shifted(int k) const {
  CourantSection out = *this;
  out.field_ = field_.shifted(k);
  out.form_ = form_.shifted(k);
  return out;
}

std::string CourantSection::to_string() const {
  std::string x = series_to_string(field_), a = series_to_string(form_);
  return "(" + (x.empty() ? "0" : x) + ") ⊕ (" + (a.empty() ? "0" : a) + ")";
}

FormalFunction pairing(const CourantSection& a, const CourantSection& b) {
  return scalar(formal_contract(a.field(), b.form())) + scalar(formal_contract(b.field(), a.form()));
}

CourantSection dorfman(const CourantSection& a, const CourantSection& b) {
  FormalMultiVector x = formal_lie(a.field(), b.field());
  FormalForm alpha = formal_lie(a.field(), b.form()) - formal_contract(b.field(), formal_d(a.form()));
  return CourantSection(std::move(x), std::move(alpha), &a.chart());
}

CourantSection bfield_section(const FormalForm& b, const CourantSection& s) {
  return CourantSection(s.field(), s.form() + formal_contract(s.field(), b), &s.chart());
}

CourantSection courant_derivation(const FormalVF& x, const FormalForm& b, const CourantSection& s) {
  return CourantSection(formal_lie(x, s.field()), formal_lie(x, s.form()) - formal_contract(s.field(), b), &s.chart());
}

CourantSection push_section(const FormalVF& x, const CourantSection& s) {
  return CourantSection(exp_lie(x, s.field()), exp_lie(x, s.form()), &s.chart());
}

CourantSection BFieldFlow::apply(const CourantSection& s) const { return push_section(field, bfield_section(b_t, s)); }

BFieldFlow flow_bfield(const FormalVF& x, const FormalForm& b, const Rational& t) {
  if (x.order() != b.order()) throw OrderMismatch(std::to_string(x.order()) + " vs " + std::to_string(b.order()));
  FormalForm b_t = zero_form(x.chart(), b.order(), 2);
  FormalForm term = b;
  Rational coeff = t;
  for (int k = 0; k <= b.order(); ++k) {
    if (term.is_zero()) break;
    b_t += term * coeff;
    term = formal_lie(x, term);
    coeff *= t / (k + 2);
  }
  FormalVF field = x;
  field *= -t;
  return {std::move(field), std::move(b_t)};
}

GeneratorFrame::GeneratorFrame(std::vector<Generator> generators) : generators_(std::move(generators)) {
  if (generators_.empty()) throw DomainError("empty generator frame");
  const Chart& c = chart();
  std::vector<bool> seen(c.dim(), false);
  for (const auto& g : generators_) {
    if (&g.section.chart() != &c || g.section.order() != order()) throw DomainError("frame generators must share chart and order");
    if (g.index >= c.dim() || seen[g.index]) throw DomainError("frame indices must partition the coordinates");
    seen[g.index] = true;
    MultiVector f0 = g.vertical ? MultiVector::basis(c, {g.index}, Poly::constant(c, 1)) : MultiVector(c, 1);
    DiffForm a0 = g.vertical ? DiffForm(c, 1) : DiffForm::basis(c, {g.index}, Poly::constant(c, 1));
    if (!(g.section.field()[0] == f0) || !(g.section.form()[0] == a0))
      throw DomainError("frame is not standard at order 0");
  }
  if (generators_.size() != c.dim()) throw DomainError("frame indices must partition the coordinates");
}

GeneratorFrame backward_generators(const CotangentChart& chart, const FormalPoisson& pi) {
  if (&pi.chart() != &chart.base()) throw ChartMismatch("backward image needs a Poisson structure on the base");
  if (!pi.vanishes_at_order_zero()) throw DomainError("backward_generators: π₀ ≠ 0");
  const Chart& t = chart.total();
  const int order = pi.order();
  std::vector<Generator> gens;
  for (std::size_t i = 0; i < chart.n(); ++i) {
    FormalMultiVector x = zero_multivector(t, order, 1);
    for (std::size_t j = 0; j < chart.n(); ++j) {
      FormalFunction c = rho_pullback(chart, pi.component(i, j));
      for (int k = 0; k <= order; ++k)
        if (!c[k].is_zero()) x[k] += MultiVector::basis(t, {chart.q(j)}, c[k]);
    }
    FormalForm a = lift_series(order, DiffForm::basis(t, {chart.q(i)}, Poly::constant(t, 1)));
    gens.push_back({CourantSection(std::move(x), std::move(a), &t), chart.q(i), false});
  }
  for (std::size_t i = 0; i < chart.n(); ++i) {
    FormalMultiVector v = lift_series(order, MultiVector::basis(t, {chart.p(i)}, Poly::constant(t, 1)));
    gens.push_back({CourantSection(std::move(v), zero_form(t, order, 1), &t), chart.p(i), true});
  }
  return GeneratorFrame(std::move(gens));
}

GeneratorFrame graph_generators(const FormalPoisson& pi) {
  if (!pi.vanishes_at_order_zero()) throw DomainError("graph_generators: π₀ ≠ 0");
  const Chart& c = pi.chart();
  const int order = pi.order();
  std::vector<Generator> gens;
  for (std::size_t a = 0; a < c.dim(); ++a) {
    FormalForm dx = lift_series(order, DiffForm::basis(c, {a}, Poly::constant(c, 1)));
    FormalMultiVector x = sharp(pi.bivector(), dx);
    gens.push_back({CourantSection(std::move(x), std::move(dx), &c), a, false});
  }
  return GeneratorFrame(std::move(gens));
}

std::optional<std::vector<FormalFunction>> membership(const CourantSection& s, const GeneratorFrame& frame) {
  MembershipResult r = reduce(s, frame);
  if (!r.residual.is_zero()) return std::nullopt;
  return std::move(r.coefficients);
}

MoritaReport check_dirac_criterion(const CotangentChart& chart, const FormalPoisson& pi1, const FormalPoisson& pi2,
                                   const FormalVF& z, const FormalForm& omega) {
  GeneratorFrame frame1 = backward_generators(chart, pi1);
  GeneratorFrame frame2 = backward_generators(chart, pi2);
  FormalForm minus = -omega;
  FormalVF back = -z;
  std::vector<CourantSection> forward, backward;
  for (const auto& g : frame1.generators()) forward.push_back(push_section(back, bfield_section(minus, g.section)));
  for (const auto& g : frame2.generators()) backward.push_back(bfield_section(omega, push_section(z, g.section)));
  MoritaReport out;
  out.add(inclusion("dirac: exp(-L_Z) tau_{-omega} gr1 in gr2", forward, frame2));
  out.add(inclusion("dirac: tau_omega exp(L_Z) gr2 in gr1", backward, frame1));
  return out;
}

SelfEquivalence self_equivalence(const CotangentChart& chart, const FormalPoisson& pi) {
  const Chart& t = chart.total();
  const int order = pi.order();
  FormalVF z = z_field(chart, pi);
  IntegratedForm w = omega_from_z(chart, z);
  FormalSymplectic omega(t, w.omega);
  std::vector<FormalFunction> ids = coordinate_images(chart, order);
  std::vector<FormalFunction> images;
  for (const auto& q : ids) images.push_back(exp_lie(z, q));

  MoritaReport report;
  report.add(morphism_check("projection anti-Poisson", chart, ids, pi, omega, -1));
  report.add(morphism_check("flow Poisson", chart, images, pi, omega, 1));
  report.add(commutation_check("commutation", chart, ids, images, omega));
  report.append(check_dirac_criterion(chart, pi, pi, z, omega.form()));
  report.add(closedness(omega.form()));
  report.notes.push_back(kAnalyticNote);
  return {std::move(z), std::move(omega), std::move(w.potential), std::move(report)};
}

MoritaReport morita_witness(const CotangentChart& chart, const FormalPoisson& pi, const FormalForm& b) {
  const Chart& t = chart.total();
  const int order = pi.order();
  FormalPoisson gauged = gauge(pi, -b);
  SelfEquivalence se = self_equivalence(chart, gauged);
  FormalSymplectic omega_b(t, se.omega.form() + rho_pullback(chart, b));
  std::vector<FormalFunction> ids = coordinate_images(chart, order);
  std::vector<FormalFunction> images;
  for (const auto& q : ids) images.push_back(exp_lie(se.z, q));

  MoritaReport report;
  for (auto c : se.report.checks) {
    c.name = "self-equivalence: " + c.name;
    report.add(std::move(c));
  }
  report.add(morphism_check("projection anti-Poisson for pi", chart, ids, pi, omega_b, -1));
  report.add(morphism_check("flow Poisson for tau_{-B} pi", chart, images, gauged, omega_b, 1));
  report.add(commutation_check("commutation", chart, ids, images, omega_b));
  Check ham{"hamiltonian fields unchanged by rho*B", true, "0"};
  for (std::size_t i = 0; i < chart.n() && ham.pass; ++i) {
    FormalMultiVector diff = hamiltonian_vf(se.omega, images[i]) - hamiltonian_vf(omega_b, images[i]);
    if (!diff.is_zero()) ham = {ham.name, false, "q" + std::to_string(i + 1) + ": " + series_to_string(diff)};
  }
  report.add(std::move(ham));
  report.append(check_dirac_criterion(chart, pi, gauged, se.z, omega_b.form()));
  report.add(closedness(omega_b.form()));
  report.notes.push_back(kAnalyticNote);
  return report;
}

}  // namespace fpois
