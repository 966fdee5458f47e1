#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "qlp/qgroup.hpp"

namespace qlp::test {

inline const double kPi = std::acos(-1.0);

inline Scalar omega(int n, int k) { return std::polar(1.0, 2.0 * kPi * k / n); }

inline Vector group_vector(std::initializer_list<double> v) {
  Vector out(v.size());
  int i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

// Index of the corepresentation of C(G) whose only entry has the given values
// on δ_g, or -1.
inline int find_character(const QuantumGroup& g, const Vector& values, double tol = 1e-9) {
  for (std::size_t a = 0; a < g.irreps().size(); ++a) {
    const auto& u = g.irreps()[a];
    if (u.dim != 1) continue;
    const Vector c = g.group_basis().transpose() * u(0, 0).coordinates();
    // For C(G), group_basis columns are δ_g, so entry g of c is u(g).
    if ((c - values).cwiseAbs().maxCoeff() < tol) return static_cast<int>(a);
  }
  return -1;
}

inline std::vector<QuantumGroup> small_groups() {
  std::vector<QuantumGroup> gs;
  gs.push_back(build_function_algebra(cyclic_group(3), 0, "C(Z3)"));
  gs.push_back(build_function_algebra(cyclic_group(4), 0, "C(Z4)"));
  gs.push_back(build_function_algebra(symmetric_group(3), 0, "C(S3)"));
  gs.push_back(build_group_algebra(symmetric_group(3), 0, "C*(S3)"));
  gs.push_back(tensor_product(build_function_algebra(cyclic_group(2), 0, "C(Z2)"),
                              build_group_algebra(cyclic_group(2), 0, "C*(Z2)")));
  return gs;
}

}  // namespace qlp::test
