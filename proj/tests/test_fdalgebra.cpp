#include <cmath>

#include "doctest.h"
#include "qlp/fdalgebra.hpp"
#include "qlp/random.hpp"

using namespace qlp;

namespace {

// Oracle: τ(|x|^p) through the eigenvalues of x_i^* x_i.
double lp_oracle(const AlgebraElement& x, double p) {
  double s = 0.0;
  for (int b = 0; b < x.structure().block_count(); ++b) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(x.block(b).adjoint() * x.block(b));
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
      s += x.structure().weight(b) * std::pow(std::sqrt(std::max(0.0, es.eigenvalues()(i))), p);
  }
  return std::pow(s, 1.0 / p);
}

std::vector<BlockStructure> algebras() {
  return {BlockStructure::commutative(3), BlockStructure::full_matrix(2),
          BlockStructure({1, 1, 2}, {0.25, 0.25, 0.25}), BlockStructure({2, 3}, {0.2, 0.2})};
}

}  // namespace

TEST_CASE("block structures enforce the state normalization") {
  CHECK_THROWS_AS(BlockStructure({1, 2}, {0.5, 0.5}), DomainError);
  CHECK_THROWS_AS(BlockStructure({0}, {1.0}), ShapeError);
  CHECK_THROWS_AS(BlockStructure({1, 1}, {1.5, -0.5}), DomainError);
  const BlockStructure s({1, 2}, {0.2, 0.4});
  CHECK(s.dimension() == 5);
  CHECK(s.offset(1) == 1);
  CHECK(s.index(1, 1, 0) == 3);
  const auto loc = s.locate(4);
  CHECK(loc.block == 1);
  CHECK(loc.row == 1);
  CHECK(loc.col == 1);
}

TEST_CASE("L_p norms on the documented examples") {
  for (const auto& s : algebras())
    for (double p : {1.0, 1.5, 2.0, 3.0, kInfinity}) CHECK(lp_norm(AlgebraElement::identity(s), p) == doctest::Approx(1.0));

  const BlockStructure m2 = BlockStructure::full_matrix(2);
  const AlgebraElement e12 = AlgebraElement::matrix_unit(m2, m2.index(0, 0, 1));
  CHECK(lp_norm(e12, 1.0) == doctest::Approx(lp_oracle(e12, 1.0)).epsilon(1e-12));
  CHECK(lp_norm(e12, 1.0) == doctest::Approx(0.5));
  CHECK(lp_norm(e12, 2.0) == doctest::Approx(1.0 / std::sqrt(2.0)));

  const BlockStructure c3 = BlockStructure::commutative(3);
  Vector v(3);
  v << 1.0, -1.0, 0.0;
  const AlgebraElement x = AlgebraElement::from_coordinates(c3, v);
  double l1 = 0.0, l2 = 0.0;
  for (int i = 0; i < 3; ++i) {
    l1 += std::abs(v(i)) / 3.0;
    l2 += std::norm(v(i)) / 3.0;
  }
  CHECK(lp_norm(x, 1.0) == doctest::Approx(l1));
  CHECK(lp_norm(x, 2.0) == doctest::Approx(std::sqrt(l2)));
  CHECK(l1 == doctest::Approx(2.0 / 3.0));

  CHECK_THROWS_AS(lp_norm(x, 0.5), DomainError);
  CHECK_THROWS_AS(x + AlgebraElement::identity(m2), ShapeError);
}

TEST_CASE("L_p norms agree with the eigenvalue oracle") {
  Rng rng(11);
  for (const auto& s : algebras())
    for (int i = 0; i < 50; ++i) {
      const AlgebraElement x = random_element(s, rng);
      for (double p : {1.0, 1.3, 2.0, 4.0}) CHECK(lp_norm(x, p) == doctest::Approx(lp_oracle(x, p)).epsilon(1e-10));
      // ‖x‖₂² = Σ w_i ‖x_i‖_HS².
      double hs = 0.0;
      for (int b = 0; b < s.block_count(); ++b) hs += s.weight(b) * x.block(b).squaredNorm();
      CHECK(std::abs(std::pow(lp_norm(x, 2.0), 2) - hs) < 1e-10 * std::max(1.0, hs));
      CHECK(std::abs(std::pow(lp_norm(x, 2.0), 2) - trace(x.adjoint() * x).real()) < 1e-10 * std::max(1.0, hs));
    }
}

TEST_CASE("positivity with the minimum-eigenvalue witness") {
  const BlockStructure m2 = BlockStructure::full_matrix(2);
  const auto id = is_positive(AlgebraElement::identity(m2));
  CHECK(id.positive);
  CHECK(id.min_eigenvalue == doctest::Approx(1.0));
  CHECK_FALSE(is_positive(AlgebraElement::matrix_unit(m2, 1)).positive);
  CHECK_FALSE(is_positive(AlgebraElement::matrix_unit(m2, 1)).self_adjoint);
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = -0.5;
  const auto r = is_positive(AlgebraElement(m2, {d}));
  CHECK_FALSE(r.positive);
  CHECK(r.min_eigenvalue == doctest::Approx(-0.5));
}

TEST_CASE("Ricard-Xu defect") {
  Rng rng(5);
  for (const auto& s : algebras()) {
    const AlgebraElement x = random_element(s, rng);
    CHECK(std::abs(ricard_xu_defect(x, 2.0)) < 1e-10);
    // Trace-zero x: defect (2 − p)‖x‖_p².
    const AlgebraElement y = x - trace(x) * AlgebraElement::identity(s);
    for (double p : {1.1, 1.5, 1.9})
      CHECK(ricard_xu_defect(y, p) == doctest::Approx((2.0 - p) * std::pow(lp_norm(y, p), 2)).epsilon(1e-9));
  }
  const BlockStructure m2 = BlockStructure::full_matrix(2);
  for (int i = 0; i < 1000; ++i) CHECK(ricard_xu_defect(random_element(m2, rng), 1.5) >= -1e-9);
  CHECK_THROWS_AS(ricard_xu_defect(AlgebraElement::identity(m2), 1.0), DomainError);
  CHECK_THROWS_AS(ricard_xu_defect(AlgebraElement::identity(m2), 2.5), DomainError);
}

TEST_CASE("states and faithfulness") {
  const BlockStructure c2 = BlockStructure::commutative(2);
  const Functional tau = make_state(AlgebraElement::identity(c2));
  CHECK(tau.is_state());
  CHECK(tau.is_faithful_state());
  const Functional p = make_state(2.0 * AlgebraElement::matrix_unit(c2, 0));
  CHECK(p.is_state());
  CHECK_FALSE(p.is_faithful_state());
  Vector d(2);
  d << 3.0, -1.0;
  const Functional bad = make_state(AlgebraElement::from_coordinates(c2, d));
  CHECK(trace(bad.density()).real() == doctest::Approx(1.0));
  CHECK_FALSE(bad.is_state());
  const Functional scaled = make_state(3.0 * AlgebraElement::identity(c2), true);
  CHECK(scaled.is_faithful_state());
}

TEST_CASE("functional values round trip") {
  Rng rng(3);
  for (const auto& s : algebras()) {
    const Functional f = random_state(s, rng);
    const Functional g = Functional::from_values(s, f.values());
    CHECK(max_abs_difference(f.density(), g.density()) < 1e-12);
    const AlgebraElement y = random_element(s, rng);
    Scalar direct = 0.0;
    for (int k = 0; k < s.dimension(); ++k) direct += y.coordinates()(k) * f.values()(k);
    CHECK(std::abs(f(y) - direct) < 1e-12);
    CHECK(std::abs(f(y) - trace(y * f.density())) < 1e-12);
  }
}

TEST_CASE("tensor layout round trip and product") {
  const BlockStructure a({1, 2}, {0.2, 0.4});
  const BlockStructure b = BlockStructure::commutative(2);
  const TensorLayout layout(a, b);
  Rng rng(9);
  const Matrix c = gaussian_matrix(a.dimension() * b.dimension(), 1, rng);
  CHECK((layout.to_coefficients(layout.to_element(c.col(0))) - c.col(0)).norm() < 1e-12);
  // (e_k ⊗ f_l)(e_k' ⊗ f_l') = e_k e_k' ⊗ f_l f_l'.
  const int k = a.index(1, 0, 1), k2 = a.index(1, 1, 0);
  Vector x = Vector::Zero(a.dimension() * b.dimension()), y = x;
  x(k * b.dimension() + 1) = 1.0;
  y(k2 * b.dimension() + 1) = 1.0;
  const Vector prod = layout.to_coefficients(layout.to_element(x) * layout.to_element(y));
  CHECK(std::abs(prod(a.index(1, 0, 0) * b.dimension() + 1) - 1.0) < 1e-12);
  CHECK(prod.cwiseAbs().sum() == doctest::Approx(1.0));
}

TEST_CASE("norm inequalities") {
  Rng rng(21);
  for (const auto& s : algebras())
    for (int i = 0; i < 100; ++i) {
      const AlgebraElement x = random_element(s, rng);
      const AlgebraElement y = random_element(s, rng);
      // Monotonicity in p.
      const double ps[] = {1.0, 1.5, 2.0, 3.0, kInfinity};
      for (int j = 0; j + 1 < 5; ++j) CHECK(lp_norm(x, ps[j]) <= lp_norm(x, ps[j + 1]) + 1e-9);
      // Hölder with 1/p + 1/q = 1/r.
      CHECK(lp_norm(x * y, 1.0) <= lp_norm(x, 2.0) * lp_norm(y, 2.0) + 1e-9);
      CHECK(lp_norm(x * y, 2.0) <= lp_norm(x, 3.0) * lp_norm(y, 6.0) + 1e-9);
      CHECK(lp_norm(x * y, 1.5) <= lp_norm(x, 2.0) * lp_norm(y, 6.0) + 1e-9);
      // Trace duality.
      CHECK(std::abs(trace(x * y)) <= lp_norm(x, 1.5) * lp_norm(y, 3.0) + 1e-9);
      CHECK(std::abs(trace(x * y)) <= lp_norm(x, 1.0) * lp_norm(y, kInfinity) + 1e-9);
    }
}

TEST_CASE("Ricard-Xu inequality on random elements") {
  Rng rng(77);
  const std::vector<BlockStructure> ss = {BlockStructure::commutative(3), BlockStructure::full_matrix(2),
                                          BlockStructure({1, 1, 2}, {0.25, 0.25, 0.25})};
  for (const auto& s : ss)
    for (double p : {1.1, 1.5, 1.9, 2.0}) {
      double worst = kInfinity;
      for (int i = 0; i < 2000; ++i) worst = std::min(worst, ricard_xu_defect(random_element(s, rng), p));
      CHECK(worst >= -1e-9);
    }
}
