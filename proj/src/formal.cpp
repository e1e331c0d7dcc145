#include "fpois/formal.hpp"

namespace fpois {

FormalVF::FormalVF(const Chart& chart, int order) : chart_(&chart), field_(zero_multivector(chart, order, 1)) {}

FormalVF::FormalVF(FormalMultiVector field, const Chart* chart) : chart_(chart), field_(std::move(field)) {
  for (int k = 0; k <= field_.order(); ++k) {
    const auto& v = field_[k];
    if (!v.is_zero() && v.degree() != 1) throw DomainError("formal vector field must have degree 1");
    chart_ = common_chart(chart_, v.chart());
  }
  if (!field_[0].is_zero()) throw DomainError("formal vector field has a nonzero order-0 part");
  if (chart_ == nullptr) throw DomainError("formal vector field without a chart");
}

FormalVF FormalVF::single(int order, int power, const VectorField& v) {
  if (power < 1) throw DomainError("formal vector field has a nonzero order-0 part");
  if (v.chart() == nullptr) throw DomainError("formal vector field without a chart");
  FormalMultiVector f = zero_multivector(*v.chart(), order, 1);
  if (power <= order) f[power] = v;
  FormalVF out(*v.chart(), order);
  out.field_ = std::move(f);
  return out;
}

FormalVF& FormalVF::operator+=(const FormalVF& o) {
  chart_ = common_chart(chart_, o.chart_);
  field_ += o.field_;
  return *this;
}

FormalVF& FormalVF::operator-=(const FormalVF& o) {
  chart_ = common_chart(chart_, o.chart_);
  field_ -= o.field_;
  return *this;
}

FormalVF& FormalVF::operator*=(const Rational& c) {
  field_ *= c;
  return *this;
}

std::string FormalVF::to_string() const { return series_to_string(field_); }

FormalMultiVector formal_schouten(const FormalMultiVector& a, const FormalMultiVector& b) {
  return formal_bilinear(a, b, [](const MultiVector& x, const MultiVector& y) { return schouten(x, y); });
}

FormalMultiVector formal_wedge(const FormalMultiVector& a, const FormalMultiVector& b) {
  return formal_bilinear(a, b, [](const MultiVector& x, const MultiVector& y) { return wedge(x, y); });
}

FormalForm formal_wedge(const FormalForm& a, const FormalForm& b) {
  return formal_bilinear(a, b, [](const DiffForm& x, const DiffForm& y) { return wedge(x, y); });
}

FormalMultiVector formal_contract(const FormalForm& alpha, const FormalMultiVector& t) {
  return formal_bilinear(alpha, t, [](const DiffForm& x, const MultiVector& y) { return contract(x, y); });
}

FormalForm formal_contract(const FormalMultiVector& x, const FormalForm& omega) {
  return formal_bilinear(x, omega, [](const VectorField& v, const DiffForm& w) { return contract(v, w); });
}

FormalFunction formal_apply(const FormalMultiVector& x, const FormalFunction& f) {
  return formal_bilinear(x, f, [](const VectorField& v, const Poly& g) { return apply(v, g); });
}

FormalForm formal_d(const FormalForm& alpha) {
  return alpha.map([](const DiffForm& a) { return exterior_d(a); });
}

FormalForm formal_d(const FormalFunction& f) {
  return f.map([](const Poly& g) { return exterior_d(g); });
}

FormalMultiVector formal_times(const FormalFunction& f, const FormalMultiVector& t) {
  return formal_bilinear(f, t, [](const Poly& g, const MultiVector& x) { return x.times(g); });
}

FormalForm formal_times(const FormalFunction& f, const FormalForm& t) {
  return formal_bilinear(f, t, [](const Poly& g, const DiffForm& x) { return x.times(g); });
}

}  // namespace fpois
