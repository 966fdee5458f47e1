#pragma once

#include <memory>
#include <vector>

#include "qlp/fourier.hpp"

namespace qlp {

struct CesaroResult {
  /// η = lim (1/n) Σ_{k≤n} ψ^{⋆k}.
  Functional limit;
  /// max_m |η(e_m) − h(e_m)|.
  double haar_distance = 0.0;
  bool is_haar = false;
  /// Equivalent to is_haar since h is faithful on a finite quantum group.
  bool nondegenerate = false;
  /// dim ker(P_ψ − I) with P_ψ: x ↦ ψ ⋆ x.
  int fixed_space_dim = 0;
};

/// Projection onto ker(P_ψ − I) along ran(P_ψ − I). P_ψ is an L₂(h)
/// contraction, so this is the L₂-orthogonal projection onto its fixed space.
Matrix cesaro_projection(const QuantumGroup& g, const Functional& psi);

/// Cesàro limit computed spectrally; `tol` bounds the comparison with h.
/// Throws DomainError if ψ is not a state.
CesaroResult cesaro_limit(const QuantumGroup& g, const Functional& psi, double tol = 1e-8);

/// (1/n) Σ_{k=1}^{n} ψ^{⋆k}, by direct summation.
Functional cesaro_average(const QuantumGroup& g, const Functional& psi, int n);

/// (1/n) Σ_{k=1}^{n} ψ^{⋆k} with n = 2^doublings, by repeated doubling of the
/// partial sums of P_ψ^k. The averaging error decays like 1/n, so this
/// reaches accuracies that a direct sum cannot; rounding grows roughly like
/// n·ε along other unimodular eigenvalues, so n ≈ 2^24 is the useful range.
Functional cesaro_average_dyadic(const QuantumGroup& g, const Functional& psi, int doublings = 24);

/// Unital *-homomorphism π: A → B, given by the images of the matrix units.
struct StarHom {
  BlockStructure target;
  /// Column m: coordinates in B of π(e_m).
  Matrix matrix;
};

/// Throws ValidationError unless π is unital, multiplicative and
/// *-preserving on basis products (tolerance `tol`).
void validate_star_hom(const BlockStructure& source, const StarHom& pi, double tol = 1e-9);

/// Evaluation of C(G) at a set of group elements, into ℂ^{|points|}.
StarHom evaluation_hom(const QuantumGroup& g, const std::vector<int>& points);

struct HopfImageData {
  StarHom pi;
  /// Orthonormal basis (columns) of I = ∩_k ker π_k.
  Matrix ideal;
  /// dim of ker π_1 ∩ … ∩ ker π_k for k = 1, 2, …; non-increasing.
  std::vector<int> kernel_dims;
  /// Smallest k after which the intersection no longer changes.
  int stabilization_index = 0;
  /// Blocks of A surviving in A / I.
  std::vector<int> kept_blocks;
  /// Quotient quantum group and the map q: A → A / I (dim C × dim A).
  std::shared_ptr<const QuantumGroup> quotient;
  Matrix quotient_map;
  double quotient_residual = 0.0;
  /// h_quotient ∘ q.
  Functional eta;
  /// Cesàro limit of (φ ∘ π)^{⋆k}.
  Functional eta_cesaro;
  double eta_agreement = 0.0;
  /// max |η⋆η − η|.
  double idempotent_residual = 0.0;
};

/// Hopf image of π. φ must be a faithful state on the target; the two
/// computations of η are compared and a ConsistencyError is raised if they
/// differ by more than `tol`.
HopfImageData hopf_image(const QuantumGroup& g, const StarHom& pi, const Functional& phi,
                         double tol = 1e-7);

}  // namespace qlp
