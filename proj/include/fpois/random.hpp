#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "fpois/structures.hpp"

namespace fpois {

/// Seeded source of small random algebraic inputs for property tests and
/// the fuzz driver. Identical seeds give identical sequences.
class Random {
public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}

  int uniform(int lo, int hi);
  bool coin() { return uniform(0, 1) == 1; }
  /// Nonzero rational num/den with |num| ≤ max_num, 1 ≤ den ≤ max_den.
  Rational rational(int max_num = 3, int max_den = 2);

  /// Polynomial in the variables `vars` (all coordinates when empty).
  Poly poly(const Chart& chart, int max_degree, int max_terms, const std::vector<std::size_t>& vars = {});
  MultiVector multivector(const Chart& chart, int degree, int max_degree, int max_terms);
  DiffForm form(const Chart& chart, int degree, int max_degree, int max_terms);

  /// Formal vector field with nonzero coefficients only in orders
  /// 1..order, each a random field.
  FormalVF formal_vf(const Chart& chart, int order, int max_degree, int max_terms);

  /// Constant bivector per positive order, conjugated by a random
  /// formal diffeomorphism: a Poisson structure with π₀ = 0.
  FormalPoisson formal_poisson(const Chart& chart, int order, int max_degree = 1);
  /// Closed 2-form series: constant plus exact part in each order from
  /// `first_order` on.
  FormalForm closed_two_form(const Chart& chart, int order, int first_order = 1, int max_degree = 2);

  std::mt19937_64& engine() { return engine_; }

private:
  std::mt19937_64 engine_;
};

}  // namespace fpois
