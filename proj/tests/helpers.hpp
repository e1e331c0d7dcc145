#pragma once

#include <string>
#include <vector>

#include "fpois/formal.hpp"

namespace testing_support {

using namespace fpois;

inline const Chart& base_chart(std::size_t n) { return Chart::numbered("q", n); }

inline Poly coord(const Chart& chart, const std::string& name) { return Poly::variable(chart, name); }
inline Poly constant(const Chart& chart, long n, long d = 1) { return Poly::constant(chart, make_rational(n, d)); }
inline Poly one(const Chart& chart) { return Poly::constant(chart, 1); }

inline MultiVector vec(const Chart& chart, std::vector<std::size_t> idx, const Poly& c) {
  return MultiVector::basis(chart, idx, c);
}
inline DiffForm form(const Chart& chart, std::vector<std::size_t> idx, const Poly& c) {
  return DiffForm::basis(chart, idx, c);
}

}  // namespace testing_support
