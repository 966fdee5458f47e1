#include <algorithm>
#include <set>

#include "doctest.h"
#include "qlp/improving.hpp"
#include "qlp/random.hpp"
#include "support.hpp"

using namespace qlp;
using qlp::test::group_vector;
using qlp::test::omega;

namespace {

// Oracle for C(Z_n): nontrivial DFT magnitudes |Σ_j φ_j ω^{-jk}|.
double dft_gap(const Vector& v) {
  const int n = static_cast<int>(v.size());
  double m = 0.0;
  for (int k = 1; k < n; ++k) {
    Scalar s = 0.0;
    for (int j = 0; j < n; ++j) s += v(j) * omega(n, -j * k);
    m = std::max(m, std::abs(s));
  }
  return m;
}

// Sup of ‖x‖₂/‖x‖_p over trace-zero x in ℓ^∞_n with uniform weights: attained
// on two-point supports, (n/2)^{1/p − 1/2}.
double cp_commutative(int n, double p) { return std::pow(n / 2.0, 1.0 / p - 0.5); }

// In M₂ with the normalized trace: attained on nilpotent rank-one x.
double cp_m2(double p) { return std::pow(2.0, 1.0 / p - 0.5); }

std::vector<int> closure(const CayleyTable& t, std::vector<int> gens) {
  std::set<int> s(gens.begin(), gens.end());
  s.insert(0);
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<int> cur(s.begin(), s.end());
    for (int a : cur)
      for (int b : cur) grew |= s.insert(t[a][b]).second;
  }
  return {s.begin(), s.end()};
}

CheckOptions quick(int samples = 300) {
  CheckOptions o;
  o.samples = samples;
  return o;
}

Functional uniform_on(const QuantumGroup& g, const std::vector<int>& support) {
  Vector v = Vector::Zero(g.dimension());
  for (int s : support) v(s) = 1.0 / support.size();
  return g.functional_from_group_values(v);
}

}  // namespace

TEST_CASE("best constants match the closed forms") {
  for (int n : {2, 3, 4, 6})
    for (double p : {1.0, 1.3, 1.7}) {
      CAPTURE(n);
      CAPTURE(p);
      CHECK(best_constant_cp(BlockStructure::commutative(n), p).value == doctest::Approx(cp_commutative(n, p)).epsilon(1e-6));
    }
  for (double p : {1.0, 1.5, 1.9})
    CHECK(best_constant_cp(BlockStructure::full_matrix(2), p).value == doctest::Approx(cp_m2(p)).epsilon(1e-6));
  CHECK(best_constant_cp(BlockStructure::full_matrix(2), 2.0).value == 1.0);
  CHECK(best_constant_cp(BlockStructure::commutative(1), 1.5).value == 1.0);

  const BestConstant bc = best_constant_cp(BlockStructure::commutative(5), 1.4);
  CHECK(std::abs(trace(bc.witness)) < 1e-9);
  CHECK(lp_norm(bc.witness, 2.0) == doctest::Approx(1.0));
  CHECK(lp_norm(bc.witness, 2.0) / lp_norm(bc.witness, 1.4) == doctest::Approx(bc.value).epsilon(1e-9));
  // A lower bound: never exceeds the true supremum.
  CHECK(bc.value <= cp_commutative(5, 1.4) + 1e-9);
}

TEST_CASE("witness exponents") {
  const BlockStructure s = BlockStructure::commutative(3);
  CHECK_FALSE(witness_p(s, 1.0).has_value());
  CHECK_FALSE(witness_p(s, 1.2).has_value());
  for (double lambda : {0.0, 0.3, 0.5, 0.9, 0.999}) {
    CAPTURE(lambda);
    const auto p = witness_p(s, lambda);
    REQUIRE(p.has_value());
    CHECK(*p > 1.0);
    CHECK(*p < 2.0);
    const double c = cp_commutative(3, *p);
    CHECK(*p - 1.0 > lambda * lambda * c * c);
    // Smallest up to the bisection resolution.
    const double q = *p - 2e-4;
    if (q > 1.0) CHECK(q - 1.0 <= lambda * lambda * std::pow(cp_commutative(3, q), 2) + 1e-3);
  }
}

TEST_CASE("spectral gap and Fourier contraction on cyclic groups") {
  Rng rng(17);
  for (int n : {3, 4, 5}) {
    const QuantumGroup g = build_function_algebra(cyclic_group(n), 0);
    for (int i = 0; i < 5; ++i) {
      const Functional phi = random_state(g.structure(), rng);
      const Vector v = g.group_basis().transpose() * phi.values();
      const double gap = dft_gap(v);
      CHECK(spectral_gap(g.structure(), right_convolution_matrix(g, phi)) == doctest::Approx(gap).epsilon(1e-10));
      CHECK(spectral_gap(g.structure(), left_convolution_matrix(g, phi)) == doctest::Approx(gap).epsilon(1e-10));
      const FourierContraction fc = fourier_contraction(g, phi);
      CHECK(fc.norms.front() == doctest::Approx(1.0));
      CHECK(fc.max_nontrivial == doctest::Approx(gap).epsilon(1e-10));
    }
  }
}

TEST_CASE("spectral gap equals the largest nontrivial Fourier norm") {
  Rng rng(3);
  for (const auto& g : qlp::test::small_groups()) {
    CAPTURE(g.name());
    for (int i = 0; i < 5; ++i) {
      const Functional phi = random_state(g.structure(), rng);
      CHECK(spectral_gap(g.structure(), right_convolution_matrix(g, phi)) ==
            doctest::Approx(fourier_contraction(g, phi).max_nontrivial).epsilon(1e-9));
    }
    CHECK(spectral_gap(g.structure(), right_convolution_matrix(g, g.haar())) < 1e-10);
    CHECK(spectral_gap(g.structure(), right_convolution_matrix(g, g.counit())) == doctest::Approx(1.0));
  }
}

TEST_CASE("map flags and the L2 adjoint") {
  const QuantumGroup g = build_function_algebra(symmetric_group(3), 0);
  Rng rng(5);
  const Functional phi = random_state(g.structure(), rng);
  const MapOnAlgebra t = make_map(g.structure(), right_convolution_matrix(g, phi), 1, 200);
  CHECK(t.unital);
  CHECK(t.trace_preserving);
  CHECK(t.two_positive);

  // Transpose on M₂ is positive but not 2-positive.
  const BlockStructure m2 = BlockStructure::full_matrix(2);
  Matrix tr = Matrix::Zero(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) tr(m2.index(0, b, a), m2.index(0, a, b)) = 1.0;
  const MapOnAlgebra tt = make_map(m2, tr, 1, 200);
  CHECK(tt.unital);
  CHECK(tt.trace_preserving);
  CHECK_FALSE(tt.two_positive);

  const BlockStructure s({1, 2}, {0.2, 0.4});
  const Matrix a = gaussian_matrix(5, 5, rng);
  const Matrix as = l2_adjoint(s, a);
  for (int i = 0; i < 5; ++i) {
    const AlgebraElement x = random_element(s, rng), y = random_element(s, rng);
    const AlgebraElement ax = AlgebraElement::from_coordinates(s, a * x.coordinates());
    const AlgebraElement asy = AlgebraElement::from_coordinates(s, as * y.coordinates());
    CHECK(std::abs(trace(ax.adjoint() * y) - trace(x.adjoint() * asy)) < 1e-10);
  }
}

TEST_CASE("the documented examples") {
  const QuantumGroup z3 = build_function_algebra(cyclic_group(3), 0);
  const ConditionsReport r = check_conditions(z3, z3.functional_from_group_values(group_vector({0.5, 0.0, 0.5})), quick(1000));
  CHECK(r.all_true());
  CHECK(r.consistent);
  CHECK(r.lambda == doctest::Approx(0.5));
  REQUIRE(r.right.witness_p.has_value());
  CHECK(r.right.violations == 0);
  CHECK(r.left.violations == 0);
  CHECK(r.fixed_space_dim == 1);

  const QuantumGroup z4 = build_function_algebra(cyclic_group(4), 0);
  const ConditionsReport f = check_conditions(z4, z4.functional_from_group_values(group_vector({0.5, 0.0, 0.5, 0.0})), quick());
  CHECK(f.all_false());
  CHECK(f.consistent);
  CHECK(f.fourier.max_nontrivial == doctest::Approx(1.0));
  // The offending irrep is the character k = 2.
  CHECK(f.fourier.argmax == qlp::test::find_character(z4, group_vector({1.0, -1.0, 1.0, -1.0})));
  CHECK(f.left.refuted);
  CHECK(f.right.refuted);
  CHECK(f.fixed_space_dim == 2);

  CHECK(check_conditions(z4, z4.haar(), quick()).all_true());
  CHECK(check_conditions(z4, z4.counit(), quick()).all_false());
  Vector bad(4);
  bad << 1.5, -0.5, 0.0, 0.0;
  CHECK_THROWS_AS(check_conditions(z4, z4.functional_from_group_values(bad), quick()), DomainError);
}

TEST_CASE("the five conditions agree on random states") {
  Rng rng(29);
  for (const auto& g : qlp::test::small_groups()) {
    CAPTURE(g.name());
    for (int i = 0; i < 3; ++i) {
      const Functional phi = random_state(g.structure(), rng);
      const ConditionsReport r = check_conditions(g, phi, quick(200));
      CHECK(r.consistent);
      CHECK((r.all_true() || r.all_false()));
      CHECK(r.gap_fourier_residual < 1e-8);
    }
  }
}

TEST_CASE("support criterion on function algebras") {
  const CayleyTable z4 = cyclic_group(4);
  CHECK(ritter_subgroup(z4, 0, {0, 2}) == std::vector<int>{0, 2});
  CHECK_FALSE(ritter_check(z4, 0, {0, 2}));
  CHECK_FALSE(ritter_check(z4, 0, {1, 3}));
  CHECK(ritter_check(z4, 0, {0, 1}));
  CHECK(ritter_check(z4, 0, {1, 2}));
  CHECK_FALSE(ritter_check(z4, 0, {3}));
  CHECK_THROWS_AS(ritter_check(z4, 0, {}), DomainError);
  CHECK_THROWS_AS(ritter_check(z4, 0, {0, 4}), DomainError);

  const CayleyTable s3 = symmetric_group(3);
  const auto inv = group_inverses(s3, 0);
  const QuantumGroup g = build_function_algebra(s3, 0);
  for (const std::vector<int>& supp : std::vector<std::vector<int>>{{0, 1}, {1, 2}, {0, 3}, {3, 4}, {0, 1, 2}, {1}}) {
    CAPTURE(supp.size());
    std::vector<int> gens;
    for (int a : supp)
      for (int b : supp) gens.push_back(s3[inv[a]][b]);
    const bool full = closure(s3, gens).size() == 6;
    CHECK(ritter_check(s3, 0, supp) == full);
    const ConditionsReport r = check_conditions(g, uniform_on(g, supp), quick(200));
    CHECK(r.consistent);
    CHECK(r.all_true() == full);
    CHECK(r.all_false() == !full);
  }
}

TEST_CASE("Schur multipliers on group algebras") {
  const CayleyTable s3 = symmetric_group(3);
  const QuantumGroup c = build_group_algebra(s3, 0);
  const SchurReport r = schur_check(c, group_vector({1.0, 0.3, 0.3, 0.2, 0.2, 0.3}), quick());
  CHECK(r.strict);
  CHECK(r.agrees);
  CHECK(r.max_modulus == doctest::Approx(0.3));
  CHECK(r.conditions.all_true());

  // φ = 1 on the subgroup {e, (12)} is positive definite but not strict.
  Vector sub = Vector::Zero(6);
  const auto h = generated_subgroup(s3, 0, {1});
  for (int x : h) sub(x) = 1.0;
  const SchurReport n = schur_check(c, sub, quick());
  CHECK_FALSE(n.strict);
  CHECK(n.agrees);
  CHECK(n.conditions.all_false());

  CHECK_THROWS_AS(schur_check(c, group_vector({0.5, 0.3, 0.3, 0.2, 0.2, 0.3}), quick()), DomainError);
  CHECK_THROWS_AS(schur_check(c, group_vector({1.0, 2.0, 0.0, 0.0, 0.0, 0.0}), quick()), DomainError);
  CHECK_THROWS_AS(schur_check(build_function_algebra(s3, 0), Vector::Ones(6), quick()), DomainError);
}
