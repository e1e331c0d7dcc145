#include "fpois/tensor.hpp"

#include <algorithm>
#include <sstream>

#include "fpois/error.hpp"

namespace fpois {

std::vector<std::size_t> index_list(IndexSet s) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; s != 0; ++i, s >>= 1)
    if (s & 1u) out.push_back(i);
  return out;
}

IndexSet index_set(const std::vector<std::size_t>& indices) {
  IndexSet s = 0;
  for (auto i : indices) s |= index_bit(i);
  return s;
}

int concat_sign(IndexSet a, IndexSet b) {
  int inversions = 0;
  for (IndexSet rest = b; rest != 0; rest &= rest - 1) {
    std::size_t j = static_cast<std::size_t>(__builtin_ctz(rest));
    inversions += index_above(a, j);
  }
  return (inversions & 1) ? -1 : 1;
}

namespace {
inline int parity_sign(int n) { return (n & 1) ? -1 : 1; }
}  // namespace

template <TensorKind Kind>
Tensor<Kind>::Tensor(const Chart& chart, int degree) : chart_(&chart), degree_(degree) {
  if (degree < 0 || degree >= 32) throw DomainError("tensor degree out of range");
}

template <TensorKind Kind>
Tensor<Kind> Tensor<Kind>::scalar(const Poly& f) {
  if (f.chart() == nullptr) return Tensor();
  Tensor t(*f.chart(), 0);
  t.accumulate(0, f);
  return t;
}

template <TensorKind Kind>
Tensor<Kind> Tensor<Kind>::basis(const Chart& chart, const std::vector<std::size_t>& indices,
                                 const Poly& coeff) {
  Tensor t(chart, static_cast<int>(indices.size()));
  std::vector<std::size_t> sorted = indices;
  int sign = 1;
  // Bubble sort: count transpositions.
  for (std::size_t i = 0; i < sorted.size(); ++i)
    for (std::size_t j = 0; j + 1 < sorted.size() - i; ++j)
      if (sorted[j] > sorted[j + 1]) {
        std::swap(sorted[j], sorted[j + 1]);
        sign = -sign;
      }
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] >= chart.dim()) throw DomainError("tensor index out of range");
    if (i > 0 && sorted[i] == sorted[i - 1]) return t;
  }
  t.accumulate(index_set(sorted), sign > 0 ? coeff : -coeff);
  return t;
}

template <TensorKind Kind>
Poly Tensor<Kind>::component(IndexSet s) const {
  auto it = comps_.find(s);
  return it == comps_.end() ? Poly() : it->second;
}

template <TensorKind Kind>
Poly Tensor<Kind>::component(const std::vector<std::size_t>& indices) const {
  if (chart_ == nullptr) return Poly();
  Tensor probe = basis(*chart_, indices, Poly::constant(*chart_, 1));
  if (probe.is_zero()) return Poly();
  auto [s, sign] = *probe.comps_.begin();
  Poly c = component(s);
  return sign.constant_term() > 0 ? c : -c;
}

template <TensorKind Kind>
void Tensor<Kind>::accumulate(IndexSet s, const Poly& coeff) {
  if (coeff.is_zero()) return;
  if (index_count(s) != degree_) throw DomainError("component degree mismatch");
  chart_ = common_chart(chart_, coeff.chart());
  if (chart_ != nullptr && s >> chart_->dim() != 0) throw DomainError("component index out of range");
  auto [it, inserted] = comps_.try_emplace(s, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) comps_.erase(it);
  }
}

template <TensorKind Kind>
void Tensor<Kind>::bind(const Tensor& o) {
  chart_ = common_chart(chart_, o.chart_);
  if (degree_ == o.degree_ || o.is_zero()) return;
  if (is_zero()) {
    degree_ = o.degree_;
    return;
  }
  throw DomainError("tensor degree mismatch: " + std::to_string(degree_) + " vs " + std::to_string(o.degree_));
}

template <TensorKind Kind>
Tensor<Kind>& Tensor<Kind>::operator+=(const Tensor& o) {
  bind(o);
  for (const auto& [s, c] : o.comps_) accumulate(s, c);
  return *this;
}

template <TensorKind Kind>
Tensor<Kind>& Tensor<Kind>::operator-=(const Tensor& o) {
  bind(o);
  for (const auto& [s, c] : o.comps_) accumulate(s, -c);
  return *this;
}

template <TensorKind Kind>
Tensor<Kind>& Tensor<Kind>::operator*=(const Rational& c) {
  if (c == 0) {
    comps_.clear();
    return *this;
  }
  for (auto& [s, p] : comps_) p *= c;
  return *this;
}

template <TensorKind Kind>
Tensor<Kind> Tensor<Kind>::operator-() const {
  Tensor out = *this;
  for (auto& [s, p] : out.comps_) p = -p;
  return out;
}

template <TensorKind Kind>
Tensor<Kind> Tensor<Kind>::times(const Poly& f) const {
  Tensor out = *this;
  out.chart_ = common_chart(chart_, f.chart());
  out.comps_.clear();
  for (const auto& [s, c] : comps_) out.accumulate(s, f * c);
  return out;
}

template <TensorKind Kind>
std::string Tensor<Kind>::to_string() const {
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
    if (c->size() > 1)
      os << "(" << c->to_string() << ")";
    else
      os << c->to_string();
    os << " * ";
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (k > 0) os << "∧";
      os << (Kind == TensorKind::Vector ? "∂" : "d") << chart_->name(idx[k]);
    }
  }
  return os.str();
}

template class Tensor<TensorKind::Vector>;
template class Tensor<TensorKind::Form>;

// ---------------------------------------------------------------------------

namespace {

template <TensorKind Kind>
Tensor<Kind> wedge_impl(const Tensor<Kind>& a, const Tensor<Kind>& b) {
  const Chart* chart = common_chart(a.chart(), b.chart());
  if (chart == nullptr) return Tensor<Kind>();
  Tensor<Kind> out(*chart, a.degree() + b.degree());
  for (const auto& [sa, ca] : a.components())
    for (const auto& [sb, cb] : b.components()) {
      if (sa & sb) continue;
      Poly c = ca * cb;
      out.accumulate(sa | sb, concat_sign(sa, sb) > 0 ? c : -c);
    }
  return out;
}

/// ι of a degree-1 object with components `arg` into `t` (derivation from
/// the left).
template <TensorKind Out, TensorKind Arg>
Tensor<Out> contract_impl(const Tensor<Arg>& arg, const Tensor<Out>& t) {
  if (arg.degree() != 1) throw DomainError("contract: argument must have degree 1");
  const Chart* chart = common_chart(arg.chart(), t.chart());
  if (t.degree() == 0) throw DomainError("contract: degree-0 input");
  if (chart == nullptr) return Tensor<Out>();
  Tensor<Out> out(*chart, t.degree() - 1);
  for (const auto& [s, c] : t.components())
    for (const auto& [sa, ca] : arg.components()) {
      std::size_t i = static_cast<std::size_t>(__builtin_ctz(sa));
      if (!index_contains(s, i)) continue;
      Poly v = ca * c;
      out.accumulate(s & ~index_bit(i), parity_sign(index_below(s, i)) > 0 ? v : -v);
    }
  return out;
}

}  // namespace

MultiVector wedge(const MultiVector& a, const MultiVector& b) { return wedge_impl(a, b); }
DiffForm wedge(const DiffForm& a, const DiffForm& b) { return wedge_impl(a, b); }

MultiVector contract(const DiffForm& alpha, const MultiVector& t) { return contract_impl(alpha, t); }
DiffForm contract(const VectorField& x, const DiffForm& omega) { return contract_impl(x, omega); }

Poly apply(const VectorField& x, const Poly& f) {
  if (x.degree() != 1 && !x.is_zero()) throw DomainError("apply: expected a vector field");
  common_chart(x.chart(), f.chart());
  Poly out(f.chart() ? Poly(*f.chart()) : Poly());
  for (const auto& [s, c] : x.components()) {
    Poly d = f.partial(static_cast<std::size_t>(__builtin_ctz(s)));
    if (!d.is_zero()) out += c * d;
  }
  return out;
}

DiffForm exterior_d(const DiffForm& alpha) {
  if (alpha.chart() == nullptr) return DiffForm();
  const Chart& chart = *alpha.chart();
  DiffForm out(chart, alpha.degree() + 1);
  for (const auto& [s, c] : alpha.components())
    for (std::size_t j = 0; j < chart.dim(); ++j) {
      if (index_contains(s, j)) continue;
      Poly d = c.partial(j);
      if (d.is_zero()) continue;
      out.accumulate(s | index_bit(j), parity_sign(index_below(s, j)) > 0 ? d : -d);
    }
  return out;
}

DiffForm exterior_d(const Poly& f) { return exterior_d(DiffForm::scalar(f)); }

namespace {

/// Σ_i (A ∂⃖/∂ξ_i) ∧ ∂_i B, accumulated into `out` with overall `sign`.
void schouten_half(const MultiVector& a, const MultiVector& b, int sign, MultiVector& out) {
  for (const auto& [sa, ca] : a.components())
    for (IndexSet rest = sa; rest != 0; rest &= rest - 1) {
      std::size_t i = static_cast<std::size_t>(__builtin_ctz(rest));
      IndexSet ra = sa & ~index_bit(i);
      int s_right = parity_sign(index_above(sa, i)) * sign;
      for (const auto& [sb, cb] : b.components()) {
        if (ra & sb) continue;
        Poly d = cb.partial(i);
        if (d.is_zero()) continue;
        Poly v = ca * d;
        out.accumulate(ra | sb, s_right * concat_sign(ra, sb) > 0 ? v : -v);
      }
    }
}

}  // namespace

MultiVector schouten(const MultiVector& a, const MultiVector& b) {
  const Chart* chart = common_chart(a.chart(), b.chart());
  int deg = a.degree() + b.degree() - 1;
  if (chart == nullptr) return MultiVector();
  if (deg < 0) return MultiVector(*chart, 0);
  MultiVector out(*chart, deg);
  schouten_half(a, b, 1, out);
  int sym = ((a.degree() - 1) * (b.degree() - 1)) & 1 ? -1 : 1;
  schouten_half(b, a, -sym, out);
  return out;
}

MultiVector lie_derivative(const VectorField& x, const MultiVector& t) {
  if (x.degree() != 1 && !x.is_zero()) throw DomainError("lie_derivative: expected a vector field");
  if (x.is_zero()) {
    MultiVector z = t;
    return z *= Rational(0);
  }
  return schouten(x, t);
}

DiffForm lie_derivative(const VectorField& x, const DiffForm& alpha) {
  if (x.degree() != 1 && !x.is_zero()) throw DomainError("lie_derivative: expected a vector field");
  const Chart* chart = common_chart(x.chart(), alpha.chart());
  if (chart == nullptr) return alpha;
  DiffForm out(*chart, alpha.degree());
  for (const auto& [s, c] : alpha.components()) {
    out.accumulate(s, apply(x, c));
    for (IndexSet rest = s; rest != 0; rest &= rest - 1) {
      std::size_t il = static_cast<std::size_t>(__builtin_ctz(rest));
      Poly xi = x.component(index_bit(il));
      if (xi.is_zero()) continue;
      IndexSet reduced = s & ~index_bit(il);
      int pos = index_below(s, il);
      for (std::size_t j = 0; j < chart->dim(); ++j) {
        if (index_contains(reduced, j)) continue;
        Poly d = xi.partial(j);
        if (d.is_zero()) continue;
        Poly v = c * d;
        int sign = parity_sign(pos - index_below(reduced, j));
        out.accumulate(reduced | index_bit(j), sign > 0 ? v : -v);
      }
    }
  }
  return out;
}

Poly lie_derivative(const VectorField& x, const Poly& f) { return apply(x, f); }

DiffForm pullback(const DiffForm& alpha, const Chart& target, std::span<const Poly> images) {
  DiffForm out(target, alpha.degree());
  std::vector<DiffForm> differentials;
  differentials.reserve(images.size());
  for (const auto& img : images) differentials.push_back(exterior_d(DiffForm::scalar(img)));
  for (const auto& [s, c] : alpha.components()) {
    DiffForm term = DiffForm::scalar(c.compose(target, images));
    if (term.is_zero()) continue;
    for (auto i : index_list(s)) term = wedge(term, differentials.at(i));
    out += term;
  }
  return out;
}

}  // namespace fpois
