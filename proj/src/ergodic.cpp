#include "qlp/ergodic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qlp/linalg.hpp"

namespace qlp {
namespace {

RealVector sqrt_weights(const BlockStructure& s) { return s.l2_weights().cwiseSqrt(); }

double max_abs(const Vector& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

Matrix cesaro_projection(const QuantumGroup& g, const Functional& psi) {
  const Matrix P = left_convolution_matrix(g, psi);
  const RealVector sw = sqrt_weights(g.structure());
  const Eigen::Index n = P.rows();
  const Matrix Pt = sw.cast<Scalar>().asDiagonal() * P * sw.cwiseInverse().cast<Scalar>().asDiagonal();
  const Matrix Q = linalg::null_space(Pt - Matrix::Identity(n, n), 1e-9);
  return sw.cwiseInverse().cast<Scalar>().asDiagonal() * (Q * Q.adjoint()) *
         sw.cast<Scalar>().asDiagonal();
}

CesaroResult cesaro_limit(const QuantumGroup& g, const Functional& psi, double tol) {
  if (!psi.is_state(1e-9)) throw DomainError("cesaro_limit: argument is not a state");
  const Matrix P = left_convolution_matrix(g, psi);
  const RealVector sw = sqrt_weights(g.structure());
  const Eigen::Index n = P.rows();
  const Matrix Pt = sw.cast<Scalar>().asDiagonal() * P * sw.cwiseInverse().cast<Scalar>().asDiagonal();
  const Matrix Q = linalg::null_space(Pt - Matrix::Identity(n, n), 1e-9);
  const Matrix E = sw.cwiseInverse().cast<Scalar>().asDiagonal() * (Q * Q.adjoint()) *
                   sw.cast<Scalar>().asDiagonal();
  CesaroResult r;
  // ψ^{⋆k}(x) = ε(P^k x), so η = ε ∘ E.
  r.limit = Functional::from_values(g.structure(), E.transpose() * g.counit().values());
  r.haar_distance = max_abs(r.limit.values() - g.haar().values());
  r.fixed_space_dim = static_cast<int>(Q.cols());
  r.is_haar = r.haar_distance <= tol;
  r.nondegenerate = r.is_haar;
  return r;
}

Functional cesaro_average(const QuantumGroup& g, const Functional& psi, int n) {
  if (n < 1) throw DomainError("cesaro_average: n must be positive");
  Vector sum = Vector::Zero(g.dimension());
  Functional power = psi;
  for (int k = 1; k <= n; ++k) {
    sum += power.values();
    if (k < n) power = convolve(g, power, psi);
  }
  return Functional::from_values(g.structure(), sum / static_cast<double>(n));
}

Functional cesaro_average_dyadic(const QuantumGroup& g, const Functional& psi, int doublings) {
  if (doublings < 0 || doublings > 60) throw DomainError("cesaro_average_dyadic: bad doubling count");
  const Matrix P = left_convolution_matrix(g, psi);
  // S = Σ_{k=1}^{m} P^k, Pm = P^m; S_{2m} = S_m + P^m S_m.
  // P^m fixes 1 exactly; restoring that after each squaring stops rounding
  // on the eigenvalue 1 from compounding.
  const Vector unit = g.structure().unit();
  const Vector tau = g.structure().trace_row();
  Matrix S = P;
  Matrix Pm = P;
  double m = 1.0;
  for (int d = 0; d < doublings; ++d) {
    S = S + Pm * S;
    Pm = (Pm * Pm).eval();
    Pm += (unit - Pm * unit) * tau.transpose();
    m *= 2.0;
  }
  return Functional::from_values(g.structure(), (S.transpose() * g.counit().values()) / m);
}

// --- *-homomorphisms -----------------------------------------------------------

void validate_star_hom(const BlockStructure& source, const StarHom& pi, double tol) {
  const int n = source.dimension();
  if (pi.matrix.rows() != pi.target.dimension() || pi.matrix.cols() != n)
    throw ShapeError("star hom: image matrix has the wrong shape");
  std::vector<AlgebraElement> img;
  for (int k = 0; k < n; ++k) img.push_back(AlgebraElement::from_coordinates(pi.target, pi.matrix.col(k)));
  const double unit = max_abs(pi.matrix * source.unit() - pi.target.unit());
  if (unit > tol) throw ValidationError("star hom: not unital, residual " + std::to_string(unit));
  const AlgebraElement zero = AlgebraElement::zero(pi.target);
  for (int k = 0; k < n; ++k) {
    const auto a = source.locate(k);
    const int kt = source.index(a.block, a.col, a.row);
    const double adj = max_abs_difference(img[kt], img[k].adjoint());
    if (adj > tol) throw ValidationError("star hom: not *-preserving at basis element " + std::to_string(k));
    for (int l = 0; l < n; ++l) {
      const auto b = source.locate(l);
      const bool nz = a.block == b.block && a.col == b.row;
      const AlgebraElement& expect = nz ? img[source.index(a.block, a.row, b.col)] : zero;
      if (max_abs_difference(img[k] * img[l], expect) > tol) {
        std::ostringstream msg;
        msg << "star hom: not multiplicative at (" << k << "," << l << ")";
        throw ValidationError(msg.str());
      }
    }
  }
}

StarHom evaluation_hom(const QuantumGroup& g, const std::vector<int>& points) {
  if (g.group_kind() != GroupKind::function_algebra)
    throw DomainError("evaluation_hom: requires a function algebra C(G)");
  const int m = static_cast<int>(points.size());
  if (m == 0) throw DomainError("evaluation_hom: no points");
  StarHom pi{BlockStructure::commutative(m), Matrix::Zero(m, g.dimension())};
  // δ_g has coordinate vector e_g in C(G).
  for (int j = 0; j < m; ++j) pi.matrix(j, points[j]) = 1.0;
  return pi;
}

// --- Hopf image ------------------------------------------------------------------

HopfImageData hopf_image(const QuantumGroup& g, const StarHom& pi, const Functional& phi,
                         double tol) {
  const BlockStructure& s = g.structure();
  const int n = s.dimension();
  validate_star_hom(s, pi);
  if (!(phi.structure() == pi.target)) throw ShapeError("hopf_image: state lives on the wrong algebra");
  if (!phi.is_faithful_state(1e-10)) throw DomainError("hopf_image: state on the target is not faithful");

  HopfImageData out;
  out.pi = pi;
  // V_1 = {f ∘ π} ⊂ A*, V_{k+1} = V_k ⋆ V_1; ker π_1 ∩ … ∩ ker π_k is the
  // annihilator of V_1 + … + V_k.
  const Matrix& D = g.delta();
  auto conv = [&](const Vector& a, const Vector& b) {
    Vector ab(static_cast<Eigen::Index>(n) * n);
    for (int k = 0; k < n; ++k) ab.segment(static_cast<Eigen::Index>(k) * n, n) = a(k) * b;
    return Vector(D.transpose() * ab);
  };
  const Matrix V1 = linalg::orthonormal_range(pi.matrix.transpose(), 1e-10);
  Matrix Vk = V1;
  Matrix W = V1;
  out.kernel_dims.push_back(n - static_cast<int>(W.cols()));
  for (int k = 2; k <= n + 1; ++k) {
    Matrix next(n, Vk.cols() * V1.cols());
    for (Eigen::Index a = 0; a < Vk.cols(); ++a)
      for (Eigen::Index b = 0; b < V1.cols(); ++b) next.col(a * V1.cols() + b) = conv(Vk.col(a), V1.col(b));
    Vk = linalg::orthonormal_range(next, 1e-10);
    Matrix joined(n, W.cols() + Vk.cols());
    joined << W, Vk;
    const Matrix W2 = linalg::orthonormal_range(joined, 1e-10);
    const bool stable = W2.cols() == W.cols();
    W = W2;
    out.kernel_dims.push_back(n - static_cast<int>(W.cols()));
    if (stable) break;
  }
  // Stabilization index: first k whose intersection equals the final one.
  out.stabilization_index = static_cast<int>(out.kernel_dims.size());
  for (std::size_t k = 0; k < out.kernel_dims.size(); ++k)
    if (out.kernel_dims[k] == out.kernel_dims.back()) {
      out.stabilization_index = static_cast<int>(k) + 1;
      break;
    }
  // x ∈ I ⇔ f(x) = Σ_m f_m x_m = 0 for every f ∈ W.
  out.ideal = linalg::null_space(W.transpose(), 1e-10);
  const int ideal_dim = static_cast<int>(out.ideal.cols());

  // A two-sided ideal of ⊕ M_{n_i} is a sum of blocks.
  int dropped = 0;
  for (int b = 0; b < s.block_count(); ++b) {
    const int sz = s.dim(b) * s.dim(b);
    const double leak = W.middleRows(s.offset(b), sz).cwiseAbs().maxCoeff();
    if (leak <= 1e-9) {
      dropped += sz;
    } else {
      out.kept_blocks.push_back(b);
    }
  }
  if (dropped != ideal_dim)
    throw ConsistencyError("hopf_image: kernel is not a sum of blocks (not an ideal)");

  std::vector<int> qdims;
  std::vector<int> kept_index;
  for (int b : out.kept_blocks) {
    qdims.push_back(s.dim(b));
    for (int e = 0; e < s.dim(b) * s.dim(b); ++e) kept_index.push_back(s.offset(b) + e);
  }
  const int m = static_cast<int>(kept_index.size());
  out.quotient_map = Matrix::Zero(m, n);
  for (int j = 0; j < m; ++j) out.quotient_map(j, kept_index[j]) = 1.0;
  // Δ_π = (q ⊗ q) Δ ι with ι the block inclusion.
  Matrix qdelta(static_cast<Eigen::Index>(m) * m, m);
  for (int c = 0; c < m; ++c)
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        qdelta(static_cast<Eigen::Index>(a) * m + b, c) =
            D(static_cast<Eigen::Index>(kept_index[a]) * n + kept_index[b], kept_index[c]);
  // Δ_π ∘ q = (q ⊗ q) ∘ Δ on every basis element of A.
  double res = 0.0;
  for (int col = 0; col < n; ++col) {
    Vector lhs = Vector::Zero(static_cast<Eigen::Index>(m) * m);
    const auto it = std::find(kept_index.begin(), kept_index.end(), col);
    if (it != kept_index.end()) lhs = qdelta.col(it - kept_index.begin());
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        res = std::max(res, std::abs(lhs(static_cast<Eigen::Index>(a) * m + b) -
                                     D(static_cast<Eigen::Index>(kept_index[a]) * n + kept_index[b], col)));
  }
  out.quotient_residual = res;
  if (res > 1e-9) throw ConsistencyError("hopf_image: ideal is not a Hopf ideal, residual " + std::to_string(res));
  auto quotient = std::make_shared<QuantumGroup>(g.name() + "/I", qdims, std::nullopt, std::move(qdelta));
  out.quotient = quotient;

  // η₁ = h_quotient ∘ q, η₂ = Cesàro limit of (φ ∘ π)^{⋆k}.
  out.eta = Functional::from_values(s, out.quotient_map.transpose() * quotient->haar().values());
  const Functional phi_pi = Functional::from_values(s, pi.matrix.transpose() * phi.values());
  out.eta_cesaro = cesaro_limit(g, phi_pi).limit;
  out.eta_agreement = max_abs(out.eta.values() - out.eta_cesaro.values());
  out.idempotent_residual = max_abs(convolve(g, out.eta, out.eta).values() - out.eta.values());
  if (out.eta_agreement > tol) {
    std::ostringstream msg;
    msg << "hopf_image: quotient Haar state and Cesaro limit differ by " << out.eta_agreement;
    throw ConsistencyError(msg.str());
  }
  return out;
}

}  // namespace qlp
