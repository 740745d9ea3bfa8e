#include "random_ops.hpp"

#include "hwalg/matrix.hpp"

namespace hwtest {

using hwalg::Gaussian;
using hwalg::MatrixValue;
using hwalg::OperatorExpr;
using hwalg::Rational;
using hwalg::ScalarValue;

const std::vector<std::string>& coefficient_symbols() {
  static const std::vector<std::string> names{"hbar", "c", "v", "aNR", "q"};
  return names;
}

Rational random_rational(Rng& rng, int max_num, int max_den) {
  return Rational(rng.uniform(-max_num, max_num), rng.uniform(1, max_den));
}

Rational random_nonzero_rational(Rng& rng, int max_num, int max_den) {
  int n = 0;
  while (n == 0) n = rng.uniform(-max_num, max_num);
  return Rational(n, rng.uniform(1, max_den));
}

Gaussian random_gaussian(Rng& rng) {
  return rng.coin() ? Gaussian(random_rational(rng)) : Gaussian(random_rational(rng), random_rational(rng));
}

ScalarValue random_scalar(Rng& rng, int max_terms) {
  ScalarValue out;
  const int n = rng.uniform(1, max_terms);
  for (int k = 0; k < n; ++k) {
    ScalarValue term(random_gaussian(rng));
    const int symbols = rng.uniform(0, 2);
    for (int s = 0; s < symbols; ++s) {
      const int e = rng.uniform(-2, 2);
      if (e != 0) term *= ScalarValue::symbol(rng.pick(coefficient_symbols()), e);
    }
    out += term;
  }
  return out;
}

MatrixValue random_matrix(Rng& rng, int dim) {
  if (dim == 1) return MatrixValue::scalar(1, random_scalar(rng, 2));
  MatrixValue out(dim);
  const int n = rng.uniform(1, 2);
  for (int k = 0; k < n; ++k) {
    const int b = rng.uniform(0, hwalg::basis_size(dim) - 1);
    out += hwalg::basis_matrix(dim, b) * random_scalar(rng, 2);
  }
  return out;
}

RandomOperator random_operator(Rng& rng, int dim, int max_degree, int max_terms) {
  RandomOperator out;
  out.dim = dim;
  out.expr = OperatorExpr(dim);
  const int n = rng.uniform(1, max_terms);
  for (int k = 0; k < n; ++k) {
    LetterTerm term{random_matrix(rng, dim), {}};
    const int len = rng.uniform(0, max_degree);
    OperatorExpr product = OperatorExpr::matrix(term.matrix);
    for (int i = 0; i < len; ++i) {
      const auto l = static_cast<hwalg::Letter>(rng.uniform(0, 7));
      term.letters.push_back(l);
      product = product * OperatorExpr::letter(l, dim);
    }
    out.expr += product;
    out.terms.push_back(std::move(term));
  }
  return out;
}

hwalg::ScalarBindings random_point(Rng& rng) {
  hwalg::ScalarBindings b;
  for (const char* name : {"hbar", "c", "v", "m", "aNR", "aUR", "q", "Q", "lambda", "phi1", "phi2", "phi3"}) {
    b[name] = ScalarValue(random_nonzero_rational(rng, 7, 5));
  }
  return b;
}

}  // namespace hwtest
