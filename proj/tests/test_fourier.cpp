#include "doctest.h"
#include "qlp/fourier.hpp"
#include "qlp/random.hpp"
#include "support.hpp"

using namespace qlp;
using qlp::test::omega;

namespace {

double diff(const FourierCoefficients& a, const FourierCoefficients& b) {
  double r = 0.0;
  for (std::size_t i = 0; i < a.blocks.size(); ++i) r = std::max(r, (a[i] - b[i]).cwiseAbs().maxCoeff());
  return r;
}

double diff(const Functional& a, const Functional& b) {
  return (a.values() - b.values()).cwiseAbs().maxCoeff();
}

// Values of a functional on δ_g for C(G).
Vector on_points(const QuantumGroup& g, const Functional& f) { return g.group_basis().transpose() * f.values(); }

}  // namespace

TEST_CASE("Fourier transform on C(Z_n) is the discrete Fourier transform") {
  for (int n : {3, 4, 5}) {
    const QuantumGroup g = build_function_algebra(cyclic_group(n), 0);
    Rng rng(n);
    const Functional phi = random_state(g.structure(), rng);
    const Vector v = on_points(g, phi);
    const FourierCoefficients f = fourier_transform(g, phi);
    for (int k = 0; k < n; ++k) {
      Vector chi(n);
      for (int j = 0; j < n; ++j) chi(j) = omega(n, j * k);
      const int a = qlp::test::find_character(g, chi);
      REQUIRE(a >= 0);
      Scalar expect = 0.0;
      for (int j = 0; j < n; ++j) expect += v(j) * omega(n, -j * k);
      CHECK(std::abs(f[a](0, 0) - expect) < 1e-12);
    }
  }
}

TEST_CASE("Fourier transform on C*(S3) evaluates at inverses") {
  const CayleyTable t = symmetric_group(3);
  const auto inv = group_inverses(t, 0);
  const QuantumGroup g = build_group_algebra(t, 0);
  const Vector vals = qlp::test::group_vector({1.0, 0.3, -0.2, 0.5, 0.1, 0.7});
  const Functional phi = g.functional_from_group_values(vals);
  const FourierCoefficients f = fourier_transform(g, phi);
  for (int gamma = 0; gamma < 6; ++gamma) {
    Vector e = Vector::Zero(6);
    e(gamma) = 1.0;
    const AlgebraElement lam = g.element_from_group_values(e);
    int found = -1;
    for (std::size_t a = 0; a < g.irreps().size(); ++a)
      if (max_abs_difference(g.irreps()[a](0, 0), lam) < 1e-9) found = static_cast<int>(a);
    REQUIRE(found >= 0);
    CHECK(std::abs(f[found](0, 0) - vals(inv[gamma])) < 1e-12);
  }
}

TEST_CASE("Fourier identities on every test quantum group") {
  for (const auto& g : qlp::test::small_groups()) {
    CAPTURE(g.name());
    Rng rng(13);
    // Counit and Haar.
    const FourierCoefficients e = fourier_transform(g, g.counit());
    const FourierCoefficients h = fourier_transform(g, g.haar());
    for (std::size_t a = 0; a < e.blocks.size(); ++a) {
      const int d = e[a].rows();
      CHECK((e[a] - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-10);
      CHECK((h[a] - (a == 0 ? Matrix(Matrix::Identity(d, d)) : Matrix(Matrix::Zero(d, d)))).cwiseAbs().maxCoeff() < 1e-10);
    }
    for (int i = 0; i < 10; ++i) {
      const AlgebraElement x = random_element(g.structure(), rng);
      const FourierCoefficients xh = fourier_transform(g, x);
      // Inversion and Plancherel.
      CHECK(max_abs_difference(inverse_fourier(g, xh), x) < 1e-10);
      CHECK(dual_l2_norm(g, xh) == doctest::Approx(lp_norm(x, 2.0)).epsilon(1e-10));
      // (φ ⋆ ψ)^ = ψ̂ φ̂.
      const Functional phi = random_state(g.structure(), rng), psi = random_state(g.structure(), rng);
      const FourierCoefficients fp = fourier_transform(g, phi), fs = fourier_transform(g, psi);
      FourierCoefficients prod;
      for (std::size_t a = 0; a < fp.blocks.size(); ++a) prod.blocks.push_back(fs[a] * fp[a]);
      CHECK(diff(fourier_transform(g, convolve(g, phi, psi)), prod) < 1e-10);
      // Counit is the unit of ⋆, h absorbs states.
      CHECK(diff(convolve(g, phi, g.counit()), phi) < 1e-10);
      CHECK(diff(convolve(g, g.counit(), phi), phi) < 1e-10);
      CHECK(diff(convolve(g, phi, g.haar()), g.haar()) < 1e-10);
      CHECK(diff(convolve(g, g.haar(), phi), g.haar()) < 1e-10);
      // Associativity of ⋆ and the matrix forms.
      const Functional chi = random_state(g.structure(), rng);
      CHECK(diff(convolve(g, convolve(g, phi, psi), chi), convolve(g, phi, convolve(g, psi, chi))) < 1e-10);
      CHECK((right_convolution_matrix(g, phi) * x.coordinates() - convolve(g, x, phi).coordinates()).cwiseAbs().maxCoeff() < 1e-10);
      CHECK((left_convolution_matrix(g, phi) * x.coordinates() - convolve(g, phi, x).coordinates()).cwiseAbs().maxCoeff() < 1e-10);
      // (x ⋆ φ) ⋆ ψ = x ⋆ (φ ⋆ ψ).
      CHECK(max_abs_difference(convolve(g, convolve(g, x, phi), psi), convolve(g, x, convolve(g, phi, psi))) < 1e-10);
      // Powers.
      CHECK(diff(convolution_power(g, phi, 0), g.counit()) < 1e-12);
      CHECK(diff(convolution_power(g, phi, 3), convolve(g, convolve(g, phi, phi), phi)) < 1e-10);
      // S is an involution.
      const Functional ps = compose_antipode(g, phi);
      CHECK(diff(compose_antipode(g, ps), phi) < 1e-10);
      // Multipliers by the identity are trivial.
      FourierCoefficients one;
      for (const auto& b : xh.blocks) one.blocks.push_back(Matrix::Identity(b.rows(), b.cols()));
      CHECK(max_abs_difference(multiplier_apply(g, one, x, MultiplierSide::left), x) < 1e-10);
      CHECK(max_abs_difference(multiplier_apply(g, one, x, MultiplierSide::right), x) < 1e-10);
      // Haar embedding.
      const AlgebraElement y = random_element(g.structure(), rng);
      CHECK(std::abs(haar_embedding(g, x)(y) - g.haar()(y * x)) < 1e-10);
    }
  }
}

TEST_CASE("convolutions on C(S3) against the group table") {
  const CayleyTable t = symmetric_group(3);
  const QuantumGroup g = build_function_algebra(t, 0);
  Rng rng(4);
  const Functional phi = random_state(g.structure(), rng), psi = random_state(g.structure(), rng);
  const Vector a = on_points(g, phi), b = on_points(g, psi);
  Vector expect = Vector::Zero(6);
  for (int s = 0; s < 6; ++s)
    for (int u = 0; u < 6; ++u) expect(t[s][u]) += a(s) * b(u);
  CHECK((on_points(g, convolve(g, phi, psi)) - expect).cwiseAbs().maxCoeff() < 1e-12);

  const AlgebraElement x = random_element(g.structure(), rng);
  const Vector xv = g.group_basis().transpose() * x.coordinates();
  Vector right = Vector::Zero(6), left = Vector::Zero(6);
  for (int s = 0; s < 6; ++s)
    for (int u = 0; u < 6; ++u) {
      // (x ⋆ φ)(u) = Σ_s φ(s) x(su); (φ ⋆ x)(s) = Σ_u x(su) φ(u).
      right(u) += a(s) * xv(t[s][u]);
      left(s) += xv(t[s][u]) * a(u);
    }
  CHECK((g.group_basis().transpose() * convolve(g, x, phi).coordinates() - right).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((g.group_basis().transpose() * convolve(g, phi, x).coordinates() - left).cwiseAbs().maxCoeff() < 1e-12);

  // φ ∘ S(δ_g) = φ(δ_{g⁻¹}).
  const auto inv = group_inverses(t, 0);
  const Vector sv = on_points(g, compose_antipode(g, phi));
  for (int s = 0; s < 6; ++s) CHECK(std::abs(sv(s) - a(inv[s])) < 1e-12);
}

TEST_CASE("multipliers on C(Z_n)") {
  const int n = 5;
  const QuantumGroup g = build_function_algebra(cyclic_group(n), 0);
  Rng rng(8);
  const AlgebraElement x = random_element(g.structure(), rng);
  const Vector xv = g.group_basis().transpose() * x.coordinates();
  FourierCoefficients a;
  std::vector<int> order(n);
  for (int k = 0; k < n; ++k) {
    Vector chi(n);
    for (int j = 0; j < n; ++j) chi(j) = omega(n, j * k);
    order[k] = qlp::test::find_character(g, chi);
    REQUIRE(order[k] >= 0);
  }
  a.blocks.assign(n, Matrix::Zero(1, 1));
  std::vector<Scalar> mult(n);
  for (int k = 0; k < n; ++k) {
    mult[k] = Scalar(0.3 * k - 0.4, 0.1 * k);
    a.blocks[order[k]](0, 0) = mult[k];
  }
  // y_j = Σ_k x̂(k) a_k ω^{jk} with x̂(k) = (1/n) Σ_j ω^{-jk} x_j.
  Vector expect = Vector::Zero(n);
  for (int k = 0; k < n; ++k) {
    Scalar xh = 0.0;
    for (int j = 0; j < n; ++j) xh += omega(n, -j * k) * xv(j) / double(n);
    for (int j = 0; j < n; ++j) expect(j) += xh * mult[k] * omega(n, j * k);
  }
  for (auto side : {MultiplierSide::left, MultiplierSide::right}) {
    const Vector got = g.group_basis().transpose() * multiplier_apply(g, a, x, side).coordinates();
    CHECK((got - expect).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("left and right multipliers differ on a noncommutative dual") {
  const QuantumGroup g = build_function_algebra(symmetric_group(3), 0);
  Rng rng(2);
  const AlgebraElement x = random_element(g.structure(), rng);
  FourierCoefficients a;
  for (const auto& u : g.irreps()) a.blocks.push_back(gaussian_matrix(u.dim, u.dim, rng));
  const AlgebraElement l = multiplier_apply(g, a, x, MultiplierSide::left);
  const AlgebraElement r = multiplier_apply(g, a, x, MultiplierSide::right);
  CHECK(max_abs_difference(l, r) > 1e-6);
  const FourierCoefficients lh = fourier_transform(g, l), xh = fourier_transform(g, x);
  for (std::size_t k = 0; k < a.blocks.size(); ++k) CHECK((lh[k] - xh[k] * a[k]).cwiseAbs().maxCoeff() < 1e-10);
}
