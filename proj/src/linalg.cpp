#include "qlp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace qlp {

Tolerances default_tolerances() {
  Tolerances t;
  if (const char* env = std::getenv("QLP_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && v > 0.0) {
      t.algebraic = v;
      t.spectral = v;
    }
  }
  return t;
}

}  // namespace qlp

namespace qlp::linalg {

namespace {

double threshold(const RealVector& sv, double rel_tol) {
  const double top = sv.size() > 0 ? sv(0) : 0.0;
  return rel_tol * std::max(1.0, top);
}

}  // namespace

Matrix null_space(const Matrix& m, double rel_tol) {
  const auto cols = m.cols();
  if (cols == 0) return Matrix(0, 0);
  if (m.rows() == 0) return Matrix::Identity(cols, cols);
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const RealVector& sv = svd.singularValues();
  const double thr = threshold(sv, rel_tol);
  int r = 0;
  while (r < sv.size() && sv(r) > thr) ++r;
  return svd.matrixV().rightCols(cols - r);
}

Matrix orthonormal_range(const Matrix& m, double rel_tol) {
  if (m.cols() == 0 || m.rows() == 0) return Matrix(m.rows(), 0);
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU);
  const RealVector& sv = svd.singularValues();
  const double thr = threshold(sv, rel_tol);
  int r = 0;
  while (r < sv.size() && sv(r) > thr) ++r;
  return svd.matrixU().leftCols(r);
}

int rank(const Matrix& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::BDCSVD<Matrix> svd(m);
  const RealVector& sv = svd.singularValues();
  const double thr = threshold(sv, rel_tol);
  int r = 0;
  while (r < sv.size() && sv(r) > thr) ++r;
  return r;
}

double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double min_singular_value(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const RealVector& sv = svd.singularValues();
  // Wide matrices have a nontrivial kernel.
  if (m.cols() > m.rows()) return 0.0;
  return sv(sv.size() - 1);
}

Matrix hermitian_power(const Matrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(h));
  RealVector ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < 0.0 && ev(i) > -1e-12) ev(i) = 0.0;
    if (ev(i) < 0.0) throw DomainError("hermitian_power: matrix is not positive semidefinite");
    if (t < 0.0 && ev(i) == 0.0) throw DomainError("hermitian_power: singular matrix with negative exponent");
    ev(i) = (ev(i) == 0.0) ? 0.0 : std::pow(ev(i), t);
  }
  const Matrix& v = es.eigenvectors();
  return v * ev.cast<Scalar>().asDiagonal() * v.adjoint();
}

Matrix hermitian_part(const Matrix& h) { return 0.5 * (h + h.adjoint()); }

std::vector<std::pair<int, int>> cluster_sorted(const RealVector& sorted,
                                                double gap) {
  std::vector<std::pair<int, int>> out;
  const int n = static_cast<int>(sorted.size());
  int begin = 0;
  for (int i = 1; i <= n; ++i) {
    if (i == n || sorted(i) - sorted(i - 1) > gap) {
      out.emplace_back(begin, i);
      begin = i;
    }
  }
  return out;
}

}  // namespace qlp::linalg
