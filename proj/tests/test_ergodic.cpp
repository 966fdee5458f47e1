#include <set>

#include "doctest.h"
#include "qlp/ergodic.hpp"
#include "qlp/random.hpp"
#include "support.hpp"

using namespace qlp;
using qlp::test::group_vector;

namespace {

std::vector<int> closure(const CayleyTable& t, const std::vector<int>& gens) {
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

Vector uniform(int n, const std::vector<int>& support) {
  Vector v = Vector::Zero(n);
  for (int s : support) v(s) = 1.0 / support.size();
  return v;
}

Vector on_points(const QuantumGroup& g, const Functional& f) { return g.group_basis().transpose() * f.values(); }

// Adjoint for ⟨x, y⟩ = τ(x^* y) = Σ_k w_k conj(x_k) y_k.
Matrix l2_adjoint_oracle(const BlockStructure& s, const Matrix& t) {
  const RealVector w = s.l2_weights();
  return w.cwiseInverse().cast<Scalar>().asDiagonal() * t.adjoint() * w.cast<Scalar>().asDiagonal();
}

}  // namespace

TEST_CASE("Cesaro limits on C(G) are Haar measures of generated subgroups") {
  const CayleyTable s3 = symmetric_group(3);
  const QuantumGroup g = build_function_algebra(s3, 0);
  for (const std::vector<int>& supp : std::vector<std::vector<int>>{{0}, {1}, {0, 1}, {3}, {1, 2}, {3, 4}, {0, 1, 2, 3, 4, 5}}) {
    const Functional psi = g.functional_from_group_values(uniform(6, supp));
    const CesaroResult r = cesaro_limit(g, psi);
    const std::vector<int> h = closure(s3, supp);
    CHECK((on_points(g, r.limit) - uniform(6, h)).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(r.is_haar == (h.size() == 6));
    CHECK(r.nondegenerate == r.is_haar);
    // Fixed functions of x ↦ ψ ⋆ x are constant on the cosets sH.
    CHECK(r.fixed_space_dim == static_cast<int>(6 / h.size()));
  }

  const QuantumGroup z4 = build_function_algebra(cyclic_group(4), 0);
  const CesaroResult r = cesaro_limit(z4, z4.functional_from_group_values(group_vector({0.5, 0.0, 0.5, 0.0})));
  CHECK((on_points(z4, r.limit) - group_vector({0.5, 0.0, 0.5, 0.0})).cwiseAbs().maxCoeff() < 1e-12);
  CHECK_FALSE(r.is_haar);
  CHECK(r.haar_distance == doctest::Approx(0.25));

  Vector bad(4);
  bad << 2.0, -1.0, 0.0, 0.0;
  CHECK_THROWS_AS(cesaro_limit(z4, z4.functional_from_group_values(bad)), DomainError);
}

TEST_CASE("spectral and summed Cesaro averages agree") {
  Rng rng(6);
  for (const auto& g : qlp::test::small_groups()) {
    CAPTURE(g.name());
    const Functional psi = random_state(g.structure(), rng);
    for (int k : {1, 3, 6}) {
      const Functional direct = cesaro_average(g, psi, 1 << k);
      const Functional dyadic = cesaro_average_dyadic(g, psi, k);
      CHECK((direct.values() - dyadic.values()).cwiseAbs().maxCoeff() < 1e-10);
    }
    const CesaroResult r = cesaro_limit(g, psi);
    CHECK((cesaro_average_dyadic(g, psi, 24).values() - r.limit.values()).cwiseAbs().maxCoeff() < 1e-7);
    // Random faithful states are ergodic.
    CHECK(r.is_haar);
    CHECK(r.fixed_space_dim == 1);

    // The projection is idempotent, L₂-orthogonal and fixes ker(P − I).
    const Matrix e = cesaro_projection(g, psi);
    CHECK((e * e - e).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((l2_adjoint_oracle(g.structure(), e) - e).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("star homomorphisms") {
  const QuantumGroup z4 = build_function_algebra(cyclic_group(4), 0);
  const StarHom pi = evaluation_hom(z4, {0, 2});
  CHECK_NOTHROW(validate_star_hom(z4.structure(), pi));
  CHECK(pi.target.dimension() == 2);
  StarHom bad = pi;
  bad.matrix(0, 1) = 1.0;
  CHECK_THROWS_AS(validate_star_hom(z4.structure(), bad), ValidationError);
  StarHom half = pi;
  half.matrix *= 0.5;
  CHECK_THROWS_AS(validate_star_hom(z4.structure(), half), ValidationError);
}

TEST_CASE("Hopf images of evaluation maps") {
  const CayleyTable s3 = symmetric_group(3);
  const QuantumGroup g = build_function_algebra(s3, 0);
  for (const std::vector<int>& pts : std::vector<std::vector<int>>{{0}, {0, 1}, {1, 2}, {0, 3}, {3}}) {
    const StarHom pi = evaluation_hom(g, pts);
    const Functional phi = trace_functional(pi.target);
    const HopfImageData d = hopf_image(g, pi, phi);
    const std::vector<int> h = closure(s3, pts);
    CAPTURE(h.size());
    REQUIRE(d.quotient != nullptr);
    CHECK(d.quotient->dimension() == static_cast<int>(h.size()));
    CHECK(d.quotient->validation().ok());
    CHECK(d.ideal.cols() == 6 - static_cast<int>(h.size()));
    for (std::size_t k = 1; k < d.kernel_dims.size(); ++k) CHECK(d.kernel_dims[k] <= d.kernel_dims[k - 1]);
    CHECK(d.eta_agreement < 1e-7);
    CHECK(d.idempotent_residual < 1e-9);
    CHECK(d.quotient_residual < 1e-9);
    // η is the Haar measure of the generated subgroup.
    CHECK((on_points(g, d.eta) - uniform(6, h)).cwiseAbs().maxCoeff() < 1e-9);
  }

  const QuantumGroup c = build_group_algebra(s3, 0);
  StarHom id{c.structure(), Matrix::Identity(6, 6)};
  const HopfImageData full = hopf_image(c, id, c.haar());
  CHECK(full.quotient->dimension() == 6);
  CHECK(full.ideal.cols() == 0);
  CHECK((full.eta.values() - c.haar().values()).cwiseAbs().maxCoeff() < 1e-9);
}
