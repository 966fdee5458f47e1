#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qlp/fdalgebra.hpp"
#include "qlp/groups.hpp"

namespace qlp {

/// Unitary corepresentation u = (u_ij) with Δ(u_jk) = Σ_p u_jp ⊗ u_pk.
struct Corepresentation {
  int dim = 0;
  /// Row-major entries u_ij.
  std::vector<AlgebraElement> entries;
  /// Q_α; the identity for every finite quantum group, kept so formulas can
  /// be written in their general form.
  Matrix q_matrix;

  const AlgebraElement& operator()(int i, int j) const { return entries[i * dim + j]; }
};

struct ValidationCheck {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool ok() const;
  /// First failing check, or nullptr.
  const ValidationCheck* first_failure() const;
};

enum class GroupKind { none, function_algebra, group_algebra };

/// Group underlying a classical construction.
struct GroupData {
  GroupKind kind = GroupKind::none;
  CayleyTable cayley;
  int identity = 0;
  /// Column g: coordinates of δ_g (function algebra) or λ(g) (group algebra).
  Matrix basis;
};

/// Default seed for the randomized block decompositions; results are
/// deterministic for a fixed seed.
constexpr std::uint64_t kDefaultDecompositionSeed = 0x5eed1234abcdULL;

/// Finite quantum group (A, Δ). Immutable; Haar state, counit, antipode and
/// the Peter–Weyl list are computed and verified at construction.
///
/// Δ is stored as a dim² × dim matrix: column m holds the coefficients of
/// Δ(e_m) in the basis e_k ⊗ e_l, at row k·dim + l.
///
/// The block weights of structure() are those of the Haar state, so the
/// reference trace τ of every L_p computation is h.
class QuantumGroup {
 public:
  /// Validates (A, Δ) and throws ValidationError with the first failing
  /// check. Supplied weights that disagree with the Haar state by more than
  /// 1e-8 are rejected; pass std::nullopt to take them from h.
  QuantumGroup(std::string name, std::vector<int> block_dims,
               std::optional<std::vector<double>> weights, Matrix delta,
               std::optional<GroupData> group = std::nullopt,
               std::uint64_t seed = kDefaultDecompositionSeed);

  const std::string& name() const { return name_; }
  const BlockStructure& structure() const { return structure_; }
  int dimension() const { return structure_.dimension(); }
  const Matrix& delta() const { return delta_; }

  /// Coefficients of Δ(x) in the layout of delta().
  Vector apply_delta(const Vector& x) const { return delta_ * x; }
  AlgebraElement apply_delta(const AlgebraElement& x) const;
  const TensorLayout& tensor_layout() const { return layout_; }

  const Functional& haar() const { return haar_; }
  const Functional& counit() const { return counit_; }
  const Matrix& antipode() const { return antipode_; }
  AlgebraElement apply_antipode(const AlgebraElement& x) const;
  const std::vector<Corepresentation>& irreps() const { return irreps_; }
  const ValidationReport& validation() const { return report_; }

  bool is_commutative() const { return structure_.is_commutative(); }
  bool is_cocommutative(double tol = 1e-9) const;

  // Group data for the two classical constructions.
  GroupKind group_kind() const { return group_.kind; }
  const CayleyTable& cayley() const { return group_.cayley; }
  int group_identity() const { return group_.identity; }
  const Matrix& group_basis() const { return group_.basis; }
  /// Functional with φ(δ_g) or φ(λ(g)) equal to values[g].
  Functional functional_from_group_values(const Vector& values) const;
  /// Σ_g c_g δ_g or Σ_g c_g λ(g).
  AlgebraElement element_from_group_values(const Vector& coefficients) const;

 private:
  std::string name_;
  BlockStructure structure_;
  Matrix delta_;
  TensorLayout layout_;
  Functional haar_;
  Functional counit_;
  Matrix antipode_;
  std::vector<Corepresentation> irreps_;
  ValidationReport report_;
  GroupData group_;
};

/// Checks *-homomorphism, coassociativity, both cancellation maps, Haar
/// existence/uniqueness, traciality and faithfulness of h, the counit, and
/// the antipode (S² = id, antimultiplicative, h∘S = h). Failures are reported,
/// never thrown; malformed shapes appear as a failed "shape" check.
ValidationReport validate_quantum_group(const std::vector<int>& block_dims,
                                        const Matrix& delta,
                                        std::uint64_t seed = kDefaultDecompositionSeed);

/// C(G): Δ(δ_g) = Σ_{st=g} δ_s ⊗ δ_t.
QuantumGroup build_function_algebra(const CayleyTable& cayley, int identity,
                                    std::string name = "C(G)");

/// C*(Γ), block-decomposed through its regular representation;
/// Δ(λ(γ)) = λ(γ) ⊗ λ(γ).
QuantumGroup build_group_algebra(const CayleyTable& cayley, int identity,
                                 std::string name = "C*(G)");

/// A₁ ⊗ A₂ with Δ = (ι ⊗ flip ⊗ ι)(Δ₁ ⊗ Δ₂).
QuantumGroup tensor_product(const QuantumGroup& g1, const QuantumGroup& g2);

/// The Haar state of (A, Δ) from the invariance equations. Throws
/// ValidationError("no Haar state" / "ambiguous Haar state").
Functional haar_state(const BlockStructure& s, const Matrix& delta);

/// Peter–Weyl decomposition through the dual algebra A* with the
/// convolution product. Corepresentations are unitary; the trivial one comes
/// first, then by dimension.
std::vector<Corepresentation> peter_weyl(const BlockStructure& s, const Matrix& delta,
                                         const Functional& haar, const Vector& counit,
                                         std::uint64_t seed = kDefaultDecompositionSeed);

/// Linear extension of u_ij ↦ u_ji^*.
Matrix antipode_matrix(const BlockStructure& s, const std::vector<Corepresentation>& irreps);

}  // namespace qlp
