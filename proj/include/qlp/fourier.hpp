#pragma once

#include <vector>

#include "qlp/qgroup.hpp"

namespace qlp {

/// One n_α × n_α matrix per irreducible corepresentation, in the order of
/// QuantumGroup::irreps().
struct FourierCoefficients {
  std::vector<Matrix> blocks;

  std::vector<int> alpha_dims() const;
  const Matrix& operator[](std::size_t alpha) const { return blocks[alpha]; }
};

/// ‖a‖ = (Σ_α d_α Tr(Q_α a_α^* a_α))^{1/2}.
double dual_l2_norm(const QuantumGroup& g, const FourierCoefficients& a);

/// φ̂(α) = (φ ⊗ ι)((u^α)^*), i.e. φ̂(α)_ij = φ((u^α_ji)^*).
FourierCoefficients fourier_transform(const QuantumGroup& g, const Functional& phi);

/// x̂ = transform of the functional h(· x).
FourierCoefficients fourier_transform(const QuantumGroup& g, const AlgebraElement& x);

/// x = Σ_α d_α (ι ⊗ Tr)[(1 ⊗ a_α Q_α) u^α].
AlgebraElement inverse_fourier(const QuantumGroup& g, const FourierCoefficients& a);

/// The functional h(· x).
Functional haar_embedding(const QuantumGroup& g, const AlgebraElement& x);

/// φ ⋆ φ' = (φ ⊗ φ')Δ.
Functional convolve(const QuantumGroup& g, const Functional& phi, const Functional& phi2);
/// φ ⋆ x = (ι ⊗ φ)Δ(x).
AlgebraElement convolve(const QuantumGroup& g, const Functional& phi, const AlgebraElement& x);
/// x ⋆ φ = (φ ⊗ ι)Δ(x).
AlgebraElement convolve(const QuantumGroup& g, const AlgebraElement& x, const Functional& phi);

/// φ^{⋆n}; n = 0 gives the counit.
Functional convolution_power(const QuantumGroup& g, const Functional& phi, int n);

/// φ ∘ S.
Functional compose_antipode(const QuantumGroup& g, const Functional& phi);

/// Matrix of T_φ: x ↦ x ⋆ φ.
Matrix right_convolution_matrix(const QuantumGroup& g, const Functional& phi);
/// Matrix of T'_φ: x ↦ φ ⋆ x.
Matrix left_convolution_matrix(const QuantumGroup& g, const Functional& phi);

enum class MultiplierSide { left, right };

/// Left: (m_a x)^(α) = x̂(α) a_α. Right: (m'_a x)^(α) = a_α x̂(α).
AlgebraElement multiplier_apply(const QuantumGroup& g, const FourierCoefficients& a,
                                const AlgebraElement& x, MultiplierSide side);

}  // namespace qlp
