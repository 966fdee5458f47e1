#pragma once

#include <cstdint>
#include <vector>

#include "qlp/common.hpp"

namespace qlp {

/// A finite-dimensional *-algebra presented by structure constants.
///
/// `left[k]` is the matrix of y ↦ b_k y in the basis (b_0, …, b_{N−1}), so
/// left[k](m, l) is the coefficient of b_m in b_k b_l. `gram` is a positive
/// definite Gram matrix ⟨b_k, b_l⟩ for which left multiplication by a is
/// adjoint to left multiplication by a^*; the involution is recovered from it.
struct StructureConstants {
  std::vector<Matrix> left;
  Vector unit;
  Matrix gram;
};

/// Matrix units of a semisimple *-algebra.
struct WedderburnDecomposition {
  std::vector<int> dims;
  /// Column j holds the coordinates of the j-th matrix unit; units are
  /// ordered block by block and row-major inside each block.
  Matrix units;
  /// Largest residual of the relations e_ij e_kl = δ_jk e_il, Σ e_ii = 1,
  /// e_ij^* = e_ji.
  double residual = 0.0;
  int attempts = 0;
};

/// Numerical Artin–Wedderburn decomposition.
///
/// A random self-adjoint central element separates the simple summands; in
/// each summand a random self-adjoint element yields a rank-one projection p,
/// and an orthonormal basis of the left ideal A p gives the matrix units.
/// Degenerate spectra trigger a resample, up to `max_attempts` times; after
/// that a ConsistencyError carries the offending residuals.
///
/// Blocks are ordered by size, then by the coordinates of their central
/// projections (which do not depend on the random draws).
WedderburnDecomposition wedderburn_decompose(const StructureConstants& a,
                                             std::uint64_t seed,
                                             int max_attempts = 5);

}  // namespace qlp
