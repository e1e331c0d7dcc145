#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fpois/chart.hpp"

namespace fpois {

/// Exact rational scalar. GMP keeps it in lowest terms with a positive
/// denominator.
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);
std::string to_string(const Rational& r);

/// Exponent vector of a monomial, stored inline.
struct Monomial {
  std::array<std::uint8_t, kMaxChartDim> exp{};
  std::uint16_t degree = 0;

  static Monomial unit() { return {}; }
  static Monomial variable(std::size_t i);

  Monomial operator*(const Monomial& other) const;
  std::uint8_t operator[](std::size_t i) const { return exp[i]; }

  /// Graded-lex: lower total degree first; ties broken so that a larger
  /// exponent on an earlier variable sorts later.
  friend bool operator<(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) = default;
};

/// Per-variable degree cap taken from the FPOIS_MAX_DEGREE environment
/// variable (default 64). Products exceeding it raise DomainError.
unsigned max_degree();

/// Sparse multivariate polynomial with rational coefficients on a chart.
///
/// A default-constructed Poly is an unbound zero: it carries no chart and
/// combines with a polynomial on any chart. Every other value is bound to
/// exactly one chart and never stores zero coefficients. Terms are kept in
/// ascending graded-lex order.
class Poly {
public:
  using Term = std::pair<Monomial, Rational>;

  Poly() = default;
  explicit Poly(const Chart& chart) : chart_(&chart) {}

  static Poly constant(const Chart& chart, const Rational& c);
  static Poly variable(const Chart& chart, std::size_t i);
  static Poly variable(const Chart& chart, const std::string& name);
  static Poly monomial(const Chart& chart, const Monomial& m, const Rational& c);
  /// Build from unsorted terms; duplicates are summed, zeros dropped.
  static Poly from_terms(const Chart& chart, std::vector<Term> terms);

  const Chart* chart() const { return chart_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  bool is_constant() const;
  Rational constant_term() const;
  Rational coefficient(const Monomial& m) const;
  int total_degree() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Rational& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b);

  /// Exact partial derivative along coordinate `i`.
  Poly partial(std::size_t i) const;
  Poly partial(const std::string& coord) const;

  /// Keep only the terms whose exponents vanish on every index in `vars`.
  Poly restrict_to_zero(std::span<const std::size_t> vars) const;
  /// True if no term involves any of the variables in `vars`.
  bool independent_of(std::span<const std::size_t> vars) const;

  /// Re-express on `target`: variable i of this chart becomes variable
  /// `index_map[i]` of the target.
  Poly embed(const Chart& target, std::span<const std::size_t> index_map) const;

  /// Substitute variable i by `images[i]` (all on `target`).
  Poly compose(const Chart& target, std::span<const Poly> images) const;

  std::string to_string() const;

private:
  void bind(const Poly& other);
  const Chart* chart_ = nullptr;
  std::vector<Term> terms_;
};

/// Shared chart of two operands; throws ChartMismatch if both are bound
/// to different charts. Returns nullptr if both are unbound.
const Chart* common_chart(const Chart* a, const Chart* b);

/// Scale each monomial by 1/(k + d), d = its degree in `fiber_vars`.
/// This is ∫₀¹ t^{k-1} f(q, t p) dt evaluated exactly.
Poly fiber_radial_integral(const Poly& f, std::span<const std::size_t> fiber_vars, int k);

/// Parse the canonical text form (also accepts parentheses and
/// arbitrary whitespace) against `chart`.
Poly parse_poly(const Chart& chart, const std::string& text);

}  // namespace fpois
