#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qlp/fourier.hpp"
#include "qlp/groups.hpp"

namespace qlp {

/// Linear map T: A → A in the matrix-unit basis, with its checked flags.
struct MapOnAlgebra {
  BlockStructure structure;
  Matrix matrix;
  bool unital = false;
  bool trace_preserving = false;
  /// Id_{M₂} ⊗ T preserved positivity on every sampled positive element.
  bool two_positive = false;
};

/// Wraps T and evaluates its flags; two-positivity is tested on
/// `positivity_samples` random positive elements of M₂(A).
MapOnAlgebra make_map(const BlockStructure& s, Matrix t, std::uint64_t seed = 1,
                      int positivity_samples = 1000);

/// Adjoint of T for the L₂(τ) inner product.
Matrix l2_adjoint(const BlockStructure& s, const Matrix& t);

/// Largest singular value of T restricted to {x : τ(x) = 0}, computed in an
/// L₂-orthonormal basis.
double spectral_gap(const BlockStructure& s, const Matrix& t);
double spectral_gap(const MapOnAlgebra& t);

struct BestConstantOptions {
  int restarts = 32;
  int max_iterations = 400;
  std::uint64_t seed = 7;
  bool use_cache = true;
};

struct BestConstant {
  double value = 1.0;
  /// Trace-zero maximizer, normalized in L₂.
  AlgebraElement witness;
};

/// c_p = sup ‖x‖₂ / ‖x‖_p over nonzero trace-zero x, 1 ≤ p ≤ 2, by projected
/// gradient descent of ‖x‖_p on the L₂ unit sphere of trace-zero elements
/// (random and structured starts, then a polish of the best run). The value
/// is a lower bound of the true supremum. Results are memoized per
/// (structure, p, options).
BestConstant best_constant_cp(const BlockStructure& s, double p, const BestConstantOptions& opt = {});

struct WitnessOptions {
  double margin = 1e-6;
  /// Width of the final bisection bracket.
  double resolution = 1e-4;
  BestConstantOptions cp;
};

/// A p in (1, 2) with (p − 1) > λ² c_p² + margin. Probes p = 2 − 0.1·2^{-j}
/// until one qualifies, then bisects downward and returns the smallest
/// qualifying p tested. std::nullopt when λ ≥ 1.
std::optional<double> witness_p(const BlockStructure& s, double lambda, const WitnessOptions& opt = {});

struct FourierContraction {
  /// ‖φ̂(α)‖ for every irrep, trivial one first.
  std::vector<double> norms;
  double max_nontrivial = 0.0;
  int argmax = -1;
};

FourierContraction fourier_contraction(const QuantumGroup& g, const Functional& phi);

struct CheckOptions {
  int samples = 10000;
  std::uint64_t seed = 1;
  /// Verification slack for ‖Tx‖₂ ≤ ‖x‖_p.
  double slack = 1e-8;
  /// Band for the strict inequality of the Fourier condition.
  double fourier_band = 1e-9;
  WitnessOptions witness;
};

/// Outcome of sampling ‖Tx‖₂ ≤ ‖x‖_p for one side.
struct SideVerification {
  double lambda = 0.0;
  std::optional<double> witness_p;
  double best_constant = 0.0;
  int samples = 0;
  /// max over samples of ‖Tx‖₂ − ‖x‖_p.
  double max_slack = -kInfinity;
  int violations = 0;
  /// For λ = 1: every tested p < 2 admits a violating x.
  bool refuted = false;
  double refutation_excess = 0.0;
  bool holds = false;
};

struct ConditionsReport {
  bool improving_left = false;              // (1) ‖φ ⋆ x‖₂ ≤ ‖x‖_p
  bool improving_right = false;             // (2) ‖x ⋆ φ‖₂ ≤ ‖x‖_p
  bool fourier_strict_contraction = false;  // (3) ‖φ̂(α)‖ < 1, α ≠ 1
  bool cesaro_to_haar = false;              // (4) Cesàro limit of ψ^{⋆k} is h
  bool nondegenerate = false;               // (5) ψ non-degenerate
  bool indeterminate = false;
  bool consistent = true;
  std::string disagreement;

  SideVerification left;
  SideVerification right;
  /// Spectral gap of T_φ: x ↦ x ⋆ φ.
  double lambda = 0.0;
  FourierContraction fourier;
  double gap_fourier_residual = 0.0;
  double cesaro_distance = 0.0;
  int fixed_space_dim = 0;
  /// Smallest eigenvalue of Σ_{n ≤ dim A + 1} of the densities of ψ^{⋆n},
  /// relative to the largest.
  double nondegeneracy_margin = 0.0;
  int samples = 0;
  std::uint64_t seed = 0;

  bool all_true() const;
  bool all_false() const;
};

/// The five-condition check for a state φ on a finite quantum group, with
/// ψ = (φ ∘ S) ⋆ φ. Throws DomainError if φ is not a state.
ConditionsReport check_conditions(const QuantumGroup& g, const Functional& phi,
                                  const CheckOptions& opt = {});

/// Subgroup generated by {i⁻¹j : i, j ∈ support}.
std::vector<int> ritter_subgroup(const CayleyTable& cayley, int identity, const std::vector<int>& support);
/// True iff that subgroup is the whole group. Throws DomainError on an empty
/// support.
bool ritter_check(const CayleyTable& cayley, int identity, const std::vector<int>& support);

struct SchurReport {
  /// |φ(γ)| < 1 for every γ ≠ e.
  bool strict = false;
  double max_modulus = 0.0;
  ConditionsReport conditions;
  bool agrees = false;
};

/// Schur multiplier criterion on C*(Γ). `cstar` must come from
/// build_group_algebra; φ is given on group elements, must be positive
/// definite with φ(e) = 1 (DomainError otherwise).
SchurReport schur_check(const QuantumGroup& cstar, const Vector& phi, const CheckOptions& opt = {});

}  // namespace qlp
