#pragma once

#include <cstdint>
#include <random>

#include "qlp/fdalgebra.hpp"

namespace qlp {

using Rng = std::mt19937_64;

/// Matrix with i.i.d. standard complex Gaussian entries.
Matrix gaussian_matrix(int rows, int cols, Rng& rng);

/// Element with i.i.d. standard complex Gaussian entries in every block.
AlgebraElement random_element(const BlockStructure& s, Rng& rng);

/// Random self-adjoint element (Hermitian part of a Gaussian element).
AlgebraElement random_self_adjoint(const BlockStructure& s, Rng& rng);

/// g^*g for Gaussian g, scaled to τ(·) = 1.
AlgebraElement random_positive(const BlockStructure& s, Rng& rng);

/// Random state; its density is g^*g, hence faithful almost surely.
Functional random_state(const BlockStructure& s, Rng& rng);

/// Random faithful state whose density has eigenvalues bounded below by
/// `floor` relative to the uniform density.
Functional random_faithful_state(const BlockStructure& s, Rng& rng,
                                 double floor = 0.05);

}  // namespace qlp
