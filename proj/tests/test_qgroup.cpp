#include <algorithm>
#include <set>

#include "doctest.h"
#include "qlp/qgroup.hpp"
#include "support.hpp"

using namespace qlp;
using qlp::test::omega;

namespace {

// Oracle: Δ(u_jk) − Σ_p u_jp ⊗ u_pk in the lexicographic layout.
double corep_residual(const QuantumGroup& g, const Corepresentation& u) {
  const int n = g.dimension();
  double r = 0.0;
  for (int j = 0; j < u.dim; ++j)
    for (int k = 0; k < u.dim; ++k) {
      Vector expect = Vector::Zero(n * n);
      for (int p = 0; p < u.dim; ++p) {
        const Vector a = u(j, p).coordinates(), b = u(p, k).coordinates();
        for (int x = 0; x < n; ++x)
          for (int y = 0; y < n; ++y) expect(x * n + y) += a(x) * b(y);
      }
      r = std::max(r, (g.apply_delta(u(j, k).coordinates()) - expect).cwiseAbs().maxCoeff());
    }
  return r;
}

// Oracle: h(u^α_ij (u^β_lm)^*) − δ_αβ δ_il δ_jm / n_α over all stored pairs.
double orthogonality_residual(const QuantumGroup& g) {
  double r = 0.0;
  const auto& irr = g.irreps();
  for (std::size_t a = 0; a < irr.size(); ++a)
    for (std::size_t b = 0; b < irr.size(); ++b)
      for (int i = 0; i < irr[a].dim; ++i)
        for (int j = 0; j < irr[a].dim; ++j)
          for (int l = 0; l < irr[b].dim; ++l)
            for (int m = 0; m < irr[b].dim; ++m) {
              const Scalar v = g.haar()(irr[a](i, j) * irr[b](l, m).adjoint());
              const double expect = (a == b && i == l && j == m) ? 1.0 / irr[a].dim : 0.0;
              r = std::max(r, std::abs(v - expect));
            }
  return r;
}

std::vector<int> irrep_dims(const QuantumGroup& g) {
  std::vector<int> d;
  for (const auto& u : g.irreps()) d.push_back(u.dim);
  return d;
}

// Δ(f)(s, t) = f(s t⁻¹) on C(G): a *-homomorphism that is not coassociative
// for nonabelian G.
Matrix quotient_delta(const CayleyTable& t) {
  const int n = static_cast<int>(t.size());
  const auto inv = group_inverses(t, 0);
  Matrix d = Matrix::Zero(n * n, n);
  for (int s = 0; s < n; ++s)
    for (int u = 0; u < n; ++u) d(s * n + u, t[s][inv[u]]) = 1.0;
  return d;
}

const ValidationCheck* find_check(const ValidationReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("group tables") {
  CHECK_NOTHROW(validate_group_table(symmetric_group(3), 0));
  CayleyTable bad = cyclic_group(3);
  std::swap(bad[1][1], bad[1][2]);
  CHECK_THROWS_AS(validate_group_table(bad, 0), ValidationError);
  // A Latin square with an identity that is not associative.
  const CayleyTable loop = {{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  try {
    validate_group_table(loop, 0);
    FAIL("non-associative table accepted");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("associativity fails at") != std::string::npos);
  }
  CHECK(generated_subgroup(cyclic_group(4), 0, {2}) == std::vector<int>{0, 2});
  CHECK(generated_subgroup(symmetric_group(3), 0, {1, 2}).size() == 6);
}

TEST_CASE("function algebras") {
  const QuantumGroup z3 = build_function_algebra(cyclic_group(3), 0, "C(Z3)");
  CHECK(z3.validation().ok());
  for (int j = 0; j < 3; ++j) CHECK(std::abs(z3.haar().values()(j) - 1.0 / 3.0) < 1e-12);
  CHECK(z3.is_commutative());
  CHECK(z3.is_cocommutative());
  // Characters χ_k(j) = ω^{jk}.
  CHECK(z3.irreps().size() == 3);
  for (int k = 0; k < 3; ++k) {
    Vector chi(3);
    for (int j = 0; j < 3; ++j) chi(j) = omega(3, j * k);
    CHECK(qlp::test::find_character(z3, chi) >= 0);
  }
  const QuantumGroup s3 = build_function_algebra(symmetric_group(3), 0, "C(S3)");
  CHECK(s3.validation().ok());
  CHECK(s3.dimension() == 6);
  CHECK_FALSE(s3.is_cocommutative());
  CHECK(irrep_dims(s3) == std::vector<int>{1, 1, 2});
}

TEST_CASE("group algebras") {
  const QuantumGroup z3 = build_group_algebra(cyclic_group(3), 0, "C*(Z3)");
  CHECK(z3.structure().dims() == std::vector<int>{1, 1, 1});
  CHECK(irrep_dims(z3) == std::vector<int>{1, 1, 1});

  const QuantumGroup s3 = build_group_algebra(symmetric_group(3), 0, "C*(S3)");
  CHECK(s3.validation().ok());
  CHECK(s3.structure().dims() == std::vector<int>{1, 1, 2});
  CHECK_FALSE(s3.is_commutative());
  CHECK(s3.is_cocommutative());
  // Corepresentations of C*(Γ) are the λ(γ), all one-dimensional.
  CHECK(irrep_dims(s3) == std::vector<int>(6, 1));
  // h(λ(γ)) = δ_{γ,e}.
  const Vector hv = s3.group_basis().transpose() * s3.haar().values();
  for (int g = 0; g < 6; ++g) CHECK(std::abs(hv(g) - (g == 0 ? 1.0 : 0.0)) < 1e-12);
  // Block weights from the regular representation: n_i / |Γ|.
  CHECK(s3.structure().weight(0) == doctest::Approx(1.0 / 6.0));
  CHECK(s3.structure().weight(2) == doctest::Approx(2.0 / 6.0));

  const QuantumGroup z2 = build_group_algebra(cyclic_group(2), 0, "C*(Z2)");
  const Vector h2 = z2.group_basis().transpose() * z2.haar().values();
  CHECK(std::abs(h2(0) - 1.0) < 1e-12);
  CHECK(std::abs(h2(1)) < 1e-12);
}

TEST_CASE("tensor products") {
  const QuantumGroup a = build_function_algebra(cyclic_group(2), 0, "C(Z2)");
  const QuantumGroup b = build_group_algebra(cyclic_group(2), 0, "C*(Z2)");
  const QuantumGroup t = tensor_product(a, b);
  CHECK(t.validation().ok());
  CHECK(t.dimension() == 4);
  // Haar = h₁ ⊗ h₂ on product basis elements.
  const TensorLayout layout(a.structure(), b.structure());
  REQUIRE(layout.product() == t.structure());
  for (int k = 0; k < a.dimension(); ++k)
    for (int l = 0; l < b.dimension(); ++l) {
      Vector c = Vector::Zero(4);
      c(k * b.dimension() + l) = 1.0;
      CHECK(std::abs(t.haar()(layout.to_element(c)) -
                     a.haar().values()(k) * b.haar().values()(l)) < 1e-12);
    }

  const QuantumGroup trivial = build_function_algebra(cyclic_group(1), 0, "trivial");
  CHECK(trivial.irreps().size() == 1);
  const QuantumGroup s3 = build_function_algebra(symmetric_group(3), 0);
  const QuantumGroup copy = tensor_product(s3, trivial);
  CHECK(copy.dimension() == 6);
  CHECK(irrep_dims(copy) == irrep_dims(s3));

  const QuantumGroup big = tensor_product(s3, build_group_algebra(symmetric_group(3), 0));
  CHECK(big.validation().ok());
  CHECK(big.dimension() == 36);
  CHECK_FALSE(big.is_commutative());
  CHECK_FALSE(big.is_cocommutative());
  int total = 0;
  for (int d : irrep_dims(big)) total += d * d;
  CHECK(total == 36);
}

TEST_CASE("validation reports") {
  const CayleyTable s3 = symmetric_group(3);
  const std::vector<int> dims(6, 1);
  const ValidationReport broken = validate_quantum_group(dims, quotient_delta(s3));
  CHECK_FALSE(broken.ok());
  REQUIRE(broken.first_failure() != nullptr);
  CHECK(broken.first_failure()->name == "coassociativity");
  CHECK(broken.first_failure()->residual > 1e-9);
  CHECK_THROWS_AS(QuantumGroup("broken", dims, std::nullopt, quotient_delta(s3)), ValidationError);

  // The opposite comultiplication flip∘Δ is again a valid quantum group.
  const QuantumGroup g = build_function_algebra(s3, 0);
  Matrix flipped = g.delta();
  for (int k = 0; k < 6; ++k)
    for (int l = 0; l < 6; ++l) flipped.row(k * 6 + l) = g.delta().row(l * 6 + k);
  CHECK(validate_quantum_group(dims, flipped).ok());

  // Δ(δ_g) = δ_g ⊗ δ_g loses the cancellation property.
  Matrix diag = Matrix::Zero(36, 6);
  for (int k = 0; k < 6; ++k) diag(k * 6 + k, k) = 1.0;
  const ValidationReport nc = validate_quantum_group(dims, diag);
  CHECK_FALSE(nc.ok());
  const ValidationCheck* canc = find_check(nc, "cancellation (1 x A)");
  REQUIRE(canc != nullptr);
  CHECK_FALSE(canc->passed);

  CHECK_FALSE(validate_quantum_group(dims, Matrix::Zero(35, 6)).ok());

  // Supplied weights must match the Haar state.
  CHECK_THROWS_AS(QuantumGroup("w", {1, 1}, std::vector<double>{0.7, 0.3}, build_function_algebra(cyclic_group(2), 0).delta()),
                  ValidationError);
  CHECK_NOTHROW(QuantumGroup("w", {1, 1}, std::vector<double>{0.5, 0.5}, build_function_algebra(cyclic_group(2), 0).delta()));
}

TEST_CASE("antipodes") {
  const CayleyTable s3 = symmetric_group(3);
  const auto inv = group_inverses(s3, 0);
  const QuantumGroup f = build_function_algebra(s3, 0);
  // S(δ_g) = δ_{g⁻¹}.
  for (int g = 0; g < 6; ++g)
    for (int k = 0; k < 6; ++k) CHECK(std::abs(f.antipode()(k, g) - (k == inv[g] ? 1.0 : 0.0)) < 1e-9);

  const QuantumGroup c = build_group_algebra(s3, 0);
  const Matrix& b = c.group_basis();
  for (int g = 0; g < 6; ++g) CHECK((c.antipode() * b.col(g) - b.col(inv[g])).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("Peter-Weyl invariants on every test quantum group") {
  for (const auto& g : qlp::test::small_groups()) {
    CAPTURE(g.name());
    CHECK(g.validation().ok());
    int total = 0;
    for (const auto& u : g.irreps()) {
      total += u.dim * u.dim;
      CHECK(corep_residual(g, u) < 1e-8);
      CHECK((u.q_matrix - Matrix::Identity(u.dim, u.dim)).cwiseAbs().maxCoeff() < 1e-12);
    }
    CHECK(total == g.dimension());
    CHECK(orthogonality_residual(g) < 1e-8);
    // The trivial corepresentation comes first.
    CHECK(g.irreps().front().dim == 1);
    CHECK(max_abs_difference(g.irreps().front()(0, 0), AlgebraElement::identity(g.structure())) < 1e-9);

    const int n = g.dimension();
    const Matrix& s = g.antipode();
    CHECK((s * s - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-8);
    CHECK((s.transpose() * g.haar().values() - g.haar().values()).cwiseAbs().maxCoeff() < 1e-8);
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        const AlgebraElement ek = AlgebraElement::matrix_unit(g.structure(), k);
        const AlgebraElement el = AlgebraElement::matrix_unit(g.structure(), l);
        CHECK(max_abs_difference(g.apply_antipode(ek * el), g.apply_antipode(el) * g.apply_antipode(ek)) < 1e-8);
      }
    CHECK(g.haar().is_faithful_state());
    // Haar invariance from both sides.
    for (int k = 0; k < n; ++k) {
      const Vector d = g.apply_delta(AlgebraElement::matrix_unit(g.structure(), k).coordinates());
      const Vector h = g.haar().values();
      Vector left = Vector::Zero(n), right = Vector::Zero(n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          left(b) += h(a) * d(a * n + b);
          right(a) += h(b) * d(a * n + b);
        }
      const Vector expect = h(k) * g.structure().unit();
      CHECK((left - expect).cwiseAbs().maxCoeff() < 1e-10);
      CHECK((right - expect).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("decompositions are deterministic for a fixed seed") {
  const QuantumGroup a = build_group_algebra(symmetric_group(3), 0);
  const QuantumGroup b = build_group_algebra(symmetric_group(3), 0);
  CHECK((a.delta() - b.delta()).cwiseAbs().maxCoeff() == 0.0);
  for (std::size_t i = 0; i < a.irreps().size(); ++i)
    CHECK(max_abs_difference(a.irreps()[i](0, 0), b.irreps()[i](0, 0)) == 0.0);
}
