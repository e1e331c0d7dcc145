#include "fpois/poly.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <cstring>
#include <sstream>

#include "fpois/error.hpp"

namespace fpois {

Rational make_rational(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

Monomial Monomial::variable(std::size_t i) {
  Monomial m;
  m.exp.at(i) = 1;
  m.degree = 1;
  return m;
}

unsigned max_degree() {
  static const unsigned cap = [] {
    const char* env = std::getenv("FPOIS_MAX_DEGREE");
    if (env == nullptr) return 64u;
    long v = std::strtol(env, nullptr, 10);
    if (v < 1) return 1u;
    return static_cast<unsigned>(std::min<long>(v, 255));
  }();
  return cap;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  const unsigned cap = max_degree();
  for (std::size_t i = 0; i < kMaxChartDim; ++i) {
    unsigned e = unsigned(exp[i]) + other.exp[i];
    if (e > cap)
      throw DomainError("polynomial degree exceeds FPOIS_MAX_DEGREE=" + std::to_string(cap));
    out.exp[i] = static_cast<std::uint8_t>(e);
  }
  out.degree = static_cast<std::uint16_t>(degree + other.degree);
  return out;
}

bool operator<(const Monomial& a, const Monomial& b) {
  if (a.degree != b.degree) return a.degree < b.degree;
  // Same degree: the one with the smaller leading exponent is smaller.
  return std::memcmp(a.exp.data(), b.exp.data(), kMaxChartDim) < 0;
}

const Chart* common_chart(const Chart* a, const Chart* b) {
  if (a == nullptr) return b;
  if (b == nullptr || a == b) return a;
  throw ChartMismatch("polynomials on different charts");
}

Poly Poly::constant(const Chart& chart, const Rational& c) {
  return monomial(chart, Monomial::unit(), c);
}

Poly Poly::variable(const Chart& chart, std::size_t i) {
  if (i >= chart.dim()) throw DomainError("variable index out of range");
  return monomial(chart, Monomial::variable(i), Rational(1));
}

Poly Poly::variable(const Chart& chart, const std::string& name) {
  auto i = chart.index_of(name);
  if (!i) throw DomainError("unknown coordinate '" + name + "'");
  return variable(chart, *i);
}

Poly Poly::monomial(const Chart& chart, const Monomial& m, const Rational& c) {
  Poly p(chart);
  if (c != 0) p.terms_.emplace_back(m, c);
  return p;
}

Poly Poly::from_terms(const Chart& chart, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  Poly p(chart);
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().first == t.first) {
      p.terms_.back().second += t.second;
      if (p.terms_.back().second == 0) p.terms_.pop_back();
    } else if (t.second != 0) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first.degree == 0);
}

Rational Poly::constant_term() const {
  if (!terms_.empty() && terms_[0].first.degree == 0) return terms_[0].second;
  return 0;
}

Rational Poly::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& key) { return t.first < key; });
  if (it != terms_.end() && it->first == m) return it->second;
  return 0;
}

int Poly::total_degree() const { return terms_.empty() ? -1 : terms_.back().first.degree; }

void Poly::bind(const Poly& other) { chart_ = common_chart(chart_, other.chart_); }

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& t : out.terms_) t.second = -t.second;
  return out;
}

namespace {

template <bool Subtract>
std::vector<Poly::Term> merge(const std::vector<Poly::Term>& a, const std::vector<Poly::Term>& b) {
  std::vector<Poly::Term> out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->first < j->first)) {
      out.push_back(*i++);
    } else if (i == a.end() || j->first < i->first) {
      out.emplace_back(j->first, Subtract ? Rational(-j->second) : j->second);
      ++j;
    } else {
      Rational c = Subtract ? Rational(i->second - j->second) : Rational(i->second + j->second);
      if (c != 0) out.emplace_back(i->first, std::move(c));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Poly& Poly::operator+=(const Poly& o) {
  bind(o);
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) {
    terms_ = o.terms_;
    return *this;
  }
  terms_ = merge<false>(terms_, o.terms_);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  bind(o);
  if (o.terms_.empty()) return *this;
  terms_ = merge<true>(terms_, o.terms_);
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else if (c != 1) {
    for (auto& t : terms_) t.second *= c;
  }
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out;
  out.chart_ = common_chart(a.chart_, b.chart_);
  if (a.is_zero() || b.is_zero()) return out;
  if (a.terms_.size() == 1 && a.terms_[0].first.degree == 0) return b * a.terms_[0].second;
  if (b.terms_.size() == 1 && b.terms_[0].first.degree == 0) return a * b.terms_[0].second;
  std::vector<Poly::Term> prod;
  prod.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) prod.emplace_back(ma * mb, ca * cb);
  return Poly::from_terms(*out.chart_, std::move(prod));
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) return true;
  if (a.chart_ != b.chart_) return false;
  return a.terms_ == b.terms_;
}

Poly Poly::partial(std::size_t i) const {
  Poly out;
  out.chart_ = chart_;
  if (chart_ != nullptr && i >= chart_->dim()) throw DomainError("partial: index out of range");
  for (const auto& [m, c] : terms_) {
    if (m.exp[i] == 0) continue;
    Monomial d = m;
    d.exp[i] -= 1;
    d.degree -= 1;
    out.terms_.emplace_back(d, c * m.exp[i]);
  }
  // Lowering the same exponent in every surviving term preserves their order.
  return out;
}

Poly Poly::partial(const std::string& coord) const {
  if (chart_ == nullptr) return Poly();
  auto i = chart_->index_of(coord);
  if (!i) throw DomainError("unknown coordinate '" + coord + "'");
  return partial(*i);
}

Poly Poly::restrict_to_zero(std::span<const std::size_t> vars) const {
  Poly out;
  out.chart_ = chart_;
  for (const auto& t : terms_) {
    bool keep = true;
    for (auto v : vars) keep = keep && t.first.exp[v] == 0;
    if (keep) out.terms_.push_back(t);
  }
  return out;
}

bool Poly::independent_of(std::span<const std::size_t> vars) const {
  for (const auto& t : terms_)
    for (auto v : vars)
      if (t.first.exp[v] != 0) return false;
  return true;
}

Poly Poly::embed(const Chart& target, std::span<const std::size_t> index_map) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [m, c] : terms_) {
    Monomial e;
    e.degree = m.degree;
    for (std::size_t i = 0; i < index_map.size(); ++i) {
      if (m.exp[i] == 0) continue;
      if (index_map[i] >= target.dim()) throw DomainError("embed: target index out of range");
      e.exp[index_map[i]] = m.exp[i];
    }
    out.emplace_back(e, c);
  }
  return from_terms(target, std::move(out));
}

Poly Poly::compose(const Chart& target, std::span<const Poly> images) const {
  if (chart_ != nullptr && images.size() != chart_->dim())
    throw DomainError("compose: need one image per coordinate");
  // Cache powers per variable.
  std::vector<std::vector<Poly>> powers(images.size());
  auto power = [&](std::size_t v, unsigned e) -> const Poly& {
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(Poly::constant(target, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * images[v]);
    return cache[e];
  };
  Poly out(target);
  for (const auto& [m, c] : terms_) {
    Poly term = Poly::constant(target, c);
    for (std::size_t v = 0; v < images.size(); ++v)
      if (m.exp[v] != 0) term = term * power(v, m.exp[v]);
    out += term;
  }
  return out;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (m.degree == 0 || mag != 1) {
      os << mag.get_str();
      wrote = true;
    }
    for (std::size_t v = 0; v < kMaxChartDim; ++v) {
      if (m.exp[v] == 0) continue;
      if (wrote) os << " * ";
      os << (chart_ ? chart_->name(v) : "x" + std::to_string(v + 1));
      if (m.exp[v] > 1) os << "^" << unsigned(m.exp[v]);
      wrote = true;
    }
  }
  return os.str();
}

Poly fiber_radial_integral(const Poly& f, std::span<const std::size_t> fiber_vars, int k) {
  if (k < 1) throw DomainError("fiber_radial_integral: k must be >= 1");
  if (f.is_zero()) return f;
  std::vector<Poly::Term> out;
  out.reserve(f.size());
  for (const auto& [m, c] : f.terms()) {
    int d = 0;
    for (auto v : fiber_vars) d += m.exp[v];
    out.emplace_back(m, c / Rational(k + d));
  }
  return Poly::from_terms(*f.chart(), std::move(out));
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class PolyParser {
public:
  PolyParser(const Chart& chart, const std::string& text) : chart_(chart), s_(text) {}

  Poly parse() {
    Poly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at offset " + std::to_string(pos_) + " in \"" + s_ + "\"");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return s_.substr(start, pos_ - start);
  }

  Poly expr() {
    Poly acc(chart_);
    bool neg = false;
    if (accept('-'))
      neg = true;
    else
      accept('+');
    Poly t = term();
    acc += neg ? -t : t;
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        break;
      }
    }
    return acc;
  }

  Poly term() {
    Poly acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  Poly factor() {
    Poly base = atom();
    if (accept('^')) {
      unsigned long e = std::stoul(integer());
      Poly r = Poly::constant(chart_, 1);
      for (unsigned long i = 0; i < e; ++i) r = r * base;
      return r;
    }
    return base;
  }

  Poly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (c == '-') {
      ++pos_;
      return -atom();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = integer();
      std::string den = "1";
      std::size_t save = pos_;
      if (accept('/')) {
        skip();
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
          den = integer();
        else
          pos_ = save;
      }
      Rational r;
      try {
        r = Rational(num + "/" + den);
      } catch (const std::invalid_argument&) {
        fail("bad rational literal");
      }
      if (r.get_den() == 0) fail("zero denominator");
      r.canonicalize();
      return Poly::constant(chart_, r);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      auto idx = chart_.index_of(name);
      if (!idx) fail("unknown coordinate '" + name + "'");
      return Poly::variable(chart_, *idx);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const Chart& chart_;
  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(const Chart& chart, const std::string& text) { return PolyParser(chart, text).parse(); }

}  // namespace fpois
