#include "qlp/fourier.hpp"

#include <cmath>

namespace qlp {
namespace {

void require_compatible(const QuantumGroup& g, const FourierCoefficients& a) {
  const auto& irr = g.irreps();
  if (a.blocks.size() != irr.size())
    throw ShapeError("Fourier coefficients do not match the irreducible corepresentations");
  for (std::size_t k = 0; k < irr.size(); ++k)
    if (a.blocks[k].rows() != irr[k].dim || a.blocks[k].cols() != irr[k].dim)
      throw ShapeError("Fourier coefficient block has the wrong size");
}

void require_same(const QuantumGroup& g, const BlockStructure& s) {
  if (!(g.structure() == s)) throw ShapeError("argument does not live on this quantum group");
}

}  // namespace

std::vector<int> FourierCoefficients::alpha_dims() const {
  std::vector<int> d;
  for (const auto& b : blocks) d.push_back(static_cast<int>(b.rows()));
  return d;
}

double dual_l2_norm(const QuantumGroup& g, const FourierCoefficients& a) {
  require_compatible(g, a);
  double sum = 0.0;
  for (std::size_t k = 0; k < a.blocks.size(); ++k) {
    const auto& c = g.irreps()[k];
    sum += c.dim * (c.q_matrix * a.blocks[k].adjoint() * a.blocks[k]).trace().real();
  }
  return std::sqrt(std::max(sum, 0.0));
}

FourierCoefficients fourier_transform(const QuantumGroup& g, const Functional& phi) {
  require_same(g, phi.structure());
  FourierCoefficients out;
  for (const auto& c : g.irreps()) {
    Matrix m(c.dim, c.dim);
    for (int i = 0; i < c.dim; ++i)
      for (int j = 0; j < c.dim; ++j) m(i, j) = phi(c(j, i).adjoint());
    out.blocks.push_back(std::move(m));
  }
  return out;
}

FourierCoefficients fourier_transform(const QuantumGroup& g, const AlgebraElement& x) {
  return fourier_transform(g, haar_embedding(g, x));
}

AlgebraElement inverse_fourier(const QuantumGroup& g, const FourierCoefficients& a) {
  require_compatible(g, a);
  AlgebraElement x = AlgebraElement::zero(g.structure());
  for (std::size_t k = 0; k < a.blocks.size(); ++k) {
    const auto& c = g.irreps()[k];
    const Matrix aq = a.blocks[k] * c.q_matrix;
    // Tr(M e_ij) = M_ji.
    for (int i = 0; i < c.dim; ++i)
      for (int j = 0; j < c.dim; ++j)
        if (aq(j, i) != Scalar(0)) x += (static_cast<double>(c.dim) * aq(j, i)) * c(i, j);
  }
  return x;
}

Functional haar_embedding(const QuantumGroup& g, const AlgebraElement& x) {
  require_same(g, x.structure());
  // τ is the Haar state, so h(· x) has density x.
  return Functional(g.haar().density() * x);
}

Functional convolve(const QuantumGroup& g, const Functional& phi, const Functional& phi2) {
  require_same(g, phi.structure());
  require_same(g, phi2.structure());
  const Vector a = phi.values(), b = phi2.values();
  const int n = g.dimension();
  Vector ab(static_cast<Eigen::Index>(n) * n);
  for (int k = 0; k < n; ++k) ab.segment(static_cast<Eigen::Index>(k) * n, n) = a(k) * b;
  return Functional::from_values(g.structure(), g.delta().transpose() * ab);
}

Matrix right_convolution_matrix(const QuantumGroup& g, const Functional& phi) {
  require_same(g, phi.structure());
  const int n = g.dimension();
  const Vector v = phi.values();
  const Matrix& d = g.delta();
  Matrix t = Matrix::Zero(n, n);
  for (int l = 0; l < n; ++l)
    if (v(l) != Scalar(0)) t += v(l) * d.middleRows(static_cast<Eigen::Index>(l) * n, n);
  return t;
}

Matrix left_convolution_matrix(const QuantumGroup& g, const Functional& phi) {
  require_same(g, phi.structure());
  const int n = g.dimension();
  const Vector v = phi.values();
  const Matrix& d = g.delta();
  Matrix t(n, n);
  for (int k = 0; k < n; ++k)
    t.row(k) = v.transpose() * d.middleRows(static_cast<Eigen::Index>(k) * n, n);
  return t;
}

AlgebraElement convolve(const QuantumGroup& g, const Functional& phi, const AlgebraElement& x) {
  require_same(g, x.structure());
  return AlgebraElement::from_coordinates(g.structure(),
                                          left_convolution_matrix(g, phi) * x.coordinates());
}

AlgebraElement convolve(const QuantumGroup& g, const AlgebraElement& x, const Functional& phi) {
  require_same(g, x.structure());
  return AlgebraElement::from_coordinates(g.structure(),
                                          right_convolution_matrix(g, phi) * x.coordinates());
}

Functional convolution_power(const QuantumGroup& g, const Functional& phi, int n) {
  if (n < 0) throw DomainError("convolution_power: negative exponent");
  Functional out = g.counit();
  for (int k = 0; k < n; ++k) out = convolve(g, out, phi);
  return out;
}

Functional compose_antipode(const QuantumGroup& g, const Functional& phi) {
  require_same(g, phi.structure());
  return Functional::from_values(g.structure(), g.antipode().transpose() * phi.values());
}

AlgebraElement multiplier_apply(const QuantumGroup& g, const FourierCoefficients& a,
                                const AlgebraElement& x, MultiplierSide side) {
  require_compatible(g, a);
  FourierCoefficients xh = fourier_transform(g, x);
  for (std::size_t k = 0; k < xh.blocks.size(); ++k)
    xh.blocks[k] = side == MultiplierSide::left ? Matrix(xh.blocks[k] * a.blocks[k])
                                                : Matrix(a.blocks[k] * xh.blocks[k]);
  return inverse_fourier(g, xh);
}

}  // namespace qlp
