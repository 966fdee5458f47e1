#pragma once

#include <utility>
#include <vector>

#include "qlp/common.hpp"

// Small dense helpers used across modules. All thresholds are relative to
// the largest singular value (or 1, whichever is larger).
namespace qlp::linalg {

/// Orthonormal basis (columns) of the null space of `m`.
Matrix null_space(const Matrix& m, double rel_tol = 1e-10);

/// Orthonormal basis (columns) of the column space of `m`.
Matrix orthonormal_range(const Matrix& m, double rel_tol = 1e-10);

/// Numerical rank.
int rank(const Matrix& m, double rel_tol = 1e-10);

double operator_norm(const Matrix& m);
double min_singular_value(const Matrix& m);

/// h^t for Hermitian positive semidefinite h; eigenvalues within -1e-12 of
/// zero are clamped. Negative powers require h to be positive definite.
Matrix hermitian_power(const Matrix& h, double t);

/// Hermitian part (h + h^*)/2.
Matrix hermitian_part(const Matrix& h);

/// Groups the entries of an ascending sequence into maximal runs whose
/// consecutive gaps are <= `gap`. Returns [begin, end) index pairs.
std::vector<std::pair<int, int>> cluster_sorted(const RealVector& sorted,
                                                double gap);

}  // namespace qlp::linalg
