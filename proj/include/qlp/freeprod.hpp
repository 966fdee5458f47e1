#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qlp/fdalgebra.hpp"
#include "qlp/qgroup.hpp"

namespace qlp {

/// (component, letter) pairs; adjacent components differ. The empty word is 𝟙.
using Word = std::vector<std::pair<int, int>>;

/// One factor (A_i, φ_i) with an orthonormal basis of Å_i = ker φ_i.
struct FreeComponent {
  BlockStructure structure;
  Functional state;
  /// Column k: coordinates of the letter e_k in the matrix-unit basis.
  Matrix letters;
  int letter_count() const { return static_cast<int>(letters.cols()); }
};

/// Builds a component. The state defaults to the trace of `s`; letters are
/// orthonormal in L₂(A, φ), phase-normalized, and when `map` is given they
/// are the singular vectors of the map's adjoint on Å (ordered by
/// decreasing singular value).
FreeComponent make_free_component(const BlockStructure& s, std::optional<Functional> state = std::nullopt,
                                  const Matrix* map = nullptr);

class FreeProductSpec {
 public:
  explicit FreeProductSpec(std::vector<FreeComponent> components);

  const std::vector<FreeComponent>& components() const { return components_; }
  const FreeComponent& component(int i) const { return components_[i]; }
  /// Number of components.
  int n() const { return static_cast<int>(components_.size()); }
  /// max_i dim Å_i.
  int m() const { return m_; }
  /// max_{k,i} ‖e_k^{(i)}‖_∞².
  double c() const { return c_; }

  /// φ_i(e_a e_b).
  Scalar merge_scalar(int i, int a, int b) const { return scalar_[i](a, b); }
  /// Coefficients of (e_a e_b)° in the letter basis.
  const Vector& merge_letters(int i, int a, int b) const;
  /// Column a: e_a^* in the letter basis.
  const Matrix& letter_adjoint(int i) const { return adjoint_[i]; }

  /// Every reduced word of length 1 ≤ r ≤ max_length.
  std::vector<Word> words(int max_length) const;

 private:
  std::vector<FreeComponent> components_;
  int m_ = 0;
  double c_ = 0.0;
  std::vector<Matrix> scalar_;
  std::vector<std::vector<Vector>> merge_;
  std::vector<Matrix> adjoint_;
};

/// Element of the algebraic free product: coefficients of reduced words.
struct FreeElement {
  std::map<Word, Scalar> terms;

  static FreeElement identity();
  static FreeElement word(const Word& w, Scalar coefficient = 1.0);

  Scalar coefficient(const Word& w) const;
  int length() const;
  /// Homogeneous part of length r.
  FreeElement homogeneous(int r) const;
  /// ℓ₂ norm of the coefficients.
  double coefficient_norm() const;
  /// Drops coefficients of modulus ≤ eps.
  FreeElement pruned(double eps = 0.0) const;

  FreeElement& operator+=(const FreeElement& o);
  friend FreeElement operator+(FreeElement a, const FreeElement& b) { return a += b; }
  friend FreeElement operator-(FreeElement a, const FreeElement& b);
  friend FreeElement operator*(Scalar s, FreeElement a);
};

/// Exact product through the letter-merge rule.
FreeElement free_multiply(const FreeProductSpec& spec, const FreeElement& u, const FreeElement& v);
FreeElement free_adjoint(const FreeProductSpec& spec, const FreeElement& u);
/// Coefficient of 𝟙.
Scalar free_trace(const FreeElement& u);
/// τ(u^* v) = Σ_w conj(u_w) v_w, as reduced words are orthonormal.
Scalar free_inner(const FreeElement& u, const FreeElement& v);
/// x ∈ A_i as φ_i(x)𝟙 + Σ_k φ_i(e_k^* x) e_k.
FreeElement free_embed(const FreeProductSpec& spec, int component, const AlgebraElement& x);

/// ‖u‖_q for q ∈ {2, 4, 6, 8}; DomainError otherwise.
double free_norm_even(const FreeProductSpec& spec, const FreeElement& u, int q);

/// Unital, state-preserving maps T_i on the components.
class FreeMap {
 public:
  /// Throws ValidationError unless T_i(1) = 1 and φ_i ∘ T_i = φ_i (1e-10).
  FreeMap(const FreeProductSpec& spec, std::vector<Matrix> maps);

  const std::vector<Matrix>& maps() const { return maps_; }
  /// T_i on Å_i in letter coordinates.
  const Matrix& letter_matrix(int i) const { return letter_[i]; }
  const std::vector<RealVector>& singular_values() const { return singular_; }
  double lambda() const { return lambda_; }

 private:
  std::vector<Matrix> maps_;
  std::vector<Matrix> letter_;
  std::vector<RealVector> singular_;
  double lambda_ = 0.0;
};

/// T(a₁⋯a_r) = T_{i₁}(a₁)⋯T_{i_r}(a_r), or the same with T_i^*.
FreeElement free_map_apply(const FreeProductSpec& spec, const FreeMap& f, const FreeElement& u,
                           bool adjoint = false);

/// Smallest even q in {4, …, 64} with λ(cnm)^{1/2 − 1/q} ≤ 1/(q − 1).
/// DomainError for λ ≥ 1.
std::optional<int> choose_q(double lambda, double c, int n, int m);

struct FreeVerification {
  int q = 0;
  int max_length = 0;
  int samples = 0;
  std::uint64_t seed = 0;
  double lambda = 0.0;
  /// max of ‖T^* x‖_q − ‖x‖₂.
  double max_slack = -kInfinity;
  /// max of ‖y_r‖_q − (cnm)^{r(1/2−1/q)}‖y_r‖₂.
  double max_claim_slack = -kInfinity;
  /// max of ‖T^* x_r‖₂ − λ^r‖x_r‖₂.
  double max_contraction_slack = -kInfinity;
  int violations = 0;
  std::optional<FreeElement> witness;
  std::string witness_check;
  bool passed() const { return violations == 0; }
};

/// Randomized verification of ‖T^* x‖_q ≤ ‖x‖₂ and the proof-chain
/// inequalities on elements of word length ≤ max_length. With q unset,
/// choose_q picks it. DomainError if λ ≥ 1 or no admissible q exists.
FreeVerification verify_free_improving(const FreeProductSpec& spec, const FreeMap& f,
                                       std::optional<int> q, int max_length, int samples,
                                       std::uint64_t seed);

/// Random element: Gaussian coefficients on 𝟙 and on reduced words of length
/// ≤ max_length (a random subset of about 64 words when there are more).
FreeElement random_free_element(const FreeProductSpec& spec, int max_length, std::uint64_t seed);

/// Letterwise T_i = x ↦ x ⋆ φ_i against (φ ⊗ ι)Δ on reduced words of length
/// ≤ 2 of the dual free product, Δ extended multiplicatively to words and φ
/// the free product state. Components carry the Haar states. Returns the
/// largest coefficient difference.
double free_convolution_residual(const QuantumGroup& g1, const Functional& phi1,
                                 const QuantumGroup& g2, const Functional& phi2);

}  // namespace qlp
