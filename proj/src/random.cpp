#include "qlp/random.hpp"

namespace qlp {

Matrix gaussian_matrix(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      const double re = n(rng);
      const double im = n(rng);
      m(i, j) = Scalar(re, im);
    }
  return m;
}

AlgebraElement random_element(const BlockStructure& s, Rng& rng) {
  std::vector<Matrix> blocks;
  for (int n : s.dims()) blocks.push_back(gaussian_matrix(n, n, rng));
  return AlgebraElement(s, std::move(blocks));
}

AlgebraElement random_self_adjoint(const BlockStructure& s, Rng& rng) {
  const AlgebraElement g = random_element(s, rng);
  return 0.5 * (g + g.adjoint());
}

AlgebraElement random_positive(const BlockStructure& s, Rng& rng) {
  const AlgebraElement g = random_element(s, rng);
  AlgebraElement p = g.adjoint() * g;
  return (1.0 / trace(p).real()) * p;
}

Functional random_state(const BlockStructure& s, Rng& rng) {
  return Functional(random_positive(s, rng));
}

Functional random_faithful_state(const BlockStructure& s, Rng& rng, double floor) {
  const AlgebraElement p = random_positive(s, rng);
  return Functional((1.0 - floor) * p + Scalar(floor) * AlgebraElement::identity(s));
}

}  // namespace qlp
