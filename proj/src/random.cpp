#include "fpois/random.hpp"

namespace fpois {

int Random::uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

Rational Random::rational(int max_num, int max_den) {
  int num = uniform(1, max_num);
  if (coin()) num = -num;
  return make_rational(num, uniform(1, max_den));
}

Poly Random::poly(const Chart& chart, int max_degree, int max_terms, const std::vector<std::size_t>& vars) {
  std::vector<std::size_t> pool = vars;
  if (pool.empty())
    for (std::size_t i = 0; i < chart.dim(); ++i) pool.push_back(i);
  std::vector<Poly::Term> terms;
  int count = uniform(1, max_terms);
  for (int t = 0; t < count; ++t) {
    Monomial m = Monomial::unit();
    int deg = uniform(0, max_degree);
    for (int d = 0; d < deg; ++d)
      m = m * Monomial::variable(pool[static_cast<std::size_t>(uniform(0, static_cast<int>(pool.size()) - 1))]);
    terms.emplace_back(m, rational());
  }
  return Poly::from_terms(chart, std::move(terms));
}

namespace {

std::vector<std::size_t> random_indices(Random& rng, std::size_t dim, int degree) {
  std::vector<std::size_t> all(dim);
  for (std::size_t i = 0; i < dim; ++i) all[i] = i;
  std::shuffle(all.begin(), all.end(), rng.engine());
  all.resize(static_cast<std::size_t>(degree));
  return all;
}

template <class T>
T random_tensor(Random& rng, const Chart& chart, int degree, int max_degree, int max_terms) {
  T out(chart, degree);
  if (degree > static_cast<int>(chart.dim())) return out;
  int count = rng.uniform(1, max_terms);
  for (int t = 0; t < count; ++t)
    out += T::basis(chart, random_indices(rng, chart.dim(), degree), rng.poly(chart, max_degree, 2));
  return out;
}

}  // namespace

MultiVector Random::multivector(const Chart& chart, int degree, int max_degree, int max_terms) {
  return random_tensor<MultiVector>(*this, chart, degree, max_degree, max_terms);
}

DiffForm Random::form(const Chart& chart, int degree, int max_degree, int max_terms) {
  return random_tensor<DiffForm>(*this, chart, degree, max_degree, max_terms);
}

FormalVF Random::formal_vf(const Chart& chart, int order, int max_degree, int max_terms) {
  FormalMultiVector f = zero_multivector(chart, order, 1);
  for (int k = 1; k <= order; ++k) f[k] = multivector(chart, 1, max_degree, max_terms);
  return FormalVF(std::move(f), &chart);
}

FormalPoisson Random::formal_poisson(const Chart& chart, int order, int max_degree) {
  FormalMultiVector pi = zero_multivector(chart, order, 2);
  for (int k = 1; k <= order; ++k) {
    if (chart.dim() < 2 || !coin()) continue;
    MultiVector c(chart, 2);
    for (int t = uniform(1, 2); t > 0; --t)
      c += MultiVector::basis(chart, random_indices(*this, chart.dim(), 2), Poly::constant(chart, rational()));
    pi[k] = c;
  }
  if (max_degree > 0) pi = exp_lie(formal_vf(chart, order, max_degree, 2), pi);
  return FormalPoisson(chart, std::move(pi));
}

FormalForm Random::closed_two_form(const Chart& chart, int order, int first_order, int max_degree) {
  FormalForm b = zero_form(chart, order, 2);
  if (chart.dim() < 2) return b;
  for (int k = first_order; k <= order; ++k) {
    DiffForm c = DiffForm::basis(chart, random_indices(*this, chart.dim(), 2), Poly::constant(chart, rational()));
    b[k] = c + exterior_d(form(chart, 1, max_degree, 2));
  }
  return b;
}

}  // namespace fpois
