#include "qlp/wedderburn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <limits>
#include <optional>
#include <sstream>

#include "qlp/linalg.hpp"
#include "qlp/random.hpp"

namespace qlp {
namespace {

constexpr double kClusterGap = 1e-6;

struct Frame {
  // ⟨x, y⟩ = (F x)^H (F y).
  Matrix f;
  Matrix f_inv;
};

Frame make_frame(const Matrix& gram) {
  Eigen::LLT<Matrix> llt(linalg::hermitian_part(gram));
  if (llt.info() != Eigen::Success)
    throw DomainError("wedderburn: Gram matrix is not positive definite");
  Frame fr;
  fr.f = llt.matrixU();
  const int n = static_cast<int>(gram.rows());
  fr.f_inv = fr.f.triangularView<Eigen::Upper>().solve(Matrix::Identity(n, n));
  return fr;
}

class Algebra {
 public:
  explicit Algebra(const StructureConstants& a)
      : left_(a.left), unit_(a.unit), gram_(a.gram), frame_(make_frame(a.gram)) {
    n_ = static_cast<int>(left_.size());
    gram_inv_ = gram_.inverse();
  }

  int dim() const { return n_; }
  const Vector& unit() const { return unit_; }
  const Frame& frame() const { return frame_; }

  Matrix left(const Vector& x) const {
    Matrix m = Matrix::Zero(n_, n_);
    for (int k = 0; k < n_; ++k)
      if (x(k) != Scalar(0)) m += x(k) * left_[k];
    return m;
  }
  Matrix right(const Vector& x) const {
    // (y b_k)'s coefficients: column l of R(x) is b_l x = L(b_l) x.
    Matrix m(n_, n_);
    for (int l = 0; l < n_; ++l) m.col(l) = left_[l] * x;
    return m;
  }
  Vector mul(const Vector& x, const Vector& y) const { return left(x) * y; }
  Vector dagger(const Vector& x) const {
    return gram_inv_ * (left(x).adjoint() * (gram_ * unit_));
  }
  Scalar inner(const Vector& x, const Vector& y) const { return x.dot(gram_ * y); }

  /// Self-adjoint operator L(x) in the orthonormal frame, Hermitian part taken.
  Matrix frame_left(const Vector& x) const {
    return linalg::hermitian_part(frame_.f * left(x) * frame_.f_inv);
  }

  Matrix center() const {
    Matrix stacked(static_cast<Eigen::Index>(n_) * n_, n_);
    for (int k = 0; k < n_; ++k) {
      Vector ek = Vector::Zero(n_);
      ek(k) = 1.0;
      Matrix diff = left_[k] - right(ek);
      stacked.col(k) = Eigen::Map<Vector>(diff.data(), diff.size());
    }
    return linalg::null_space(stacked, 1e-9);
  }

 private:
  std::vector<Matrix> left_;
  Vector unit_;
  Matrix gram_;
  Matrix gram_inv_;
  Frame frame_;
  int n_ = 0;
};

// Eigenvectors (in the frame) of a Hermitian matrix grouped by eigenvalue.
struct Clusters {
  Matrix vectors;
  std::vector<std::pair<int, int>> ranges;
};

Clusters cluster_hermitian(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  RealVector ev = es.eigenvalues();
  const double scale = std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
  return {es.eigenvectors(), linalg::cluster_sorted(ev / scale, kClusterGap)};
}

struct Block {
  int n = 0;
  Vector central;
  std::vector<Vector> units;  // row-major
};

std::optional<std::vector<Block>> attempt(const Algebra& alg, const Matrix& center, Rng& rng,
                                          std::string& why) {
  const int c = static_cast<int>(center.cols());
  const Frame& fr = alg.frame();
  const Vector coeff = gaussian_matrix(c, 1, rng);
  const Vector z = center * coeff;
  const Vector s = z + alg.dagger(z);
  const Clusters cl = cluster_hermitian(alg.frame_left(s));
  if (static_cast<int>(cl.ranges.size()) != c) {
    why = "central element has a degenerate spectrum";
    return std::nullopt;
  }
  const Vector one_f = fr.f * alg.unit();
  std::vector<Block> blocks;
  for (const auto& [b, e] : cl.ranges) {
    const int size = e - b;
    const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(size))));
    if (n * n != size) {
      why = "summand dimension is not a perfect square";
      return std::nullopt;
    }
    const Matrix vj = cl.vectors.middleCols(b, size);
    Block blk;
    blk.n = n;
    blk.central = fr.f_inv * (vj * (vj.adjoint() * one_f));
    // Rank-one projection from a generic self-adjoint element of the summand.
    const Vector a = gaussian_matrix(alg.dim(), 1, rng);
    Vector sa = alg.mul(blk.central, alg.mul(a + alg.dagger(a), blk.central));
    const Matrix restricted = linalg::hermitian_part(vj.adjoint() * alg.frame_left(sa) * vj);
    const Clusters inner = cluster_hermitian(restricted);
    if (static_cast<int>(inner.ranges.size()) != n ||
        std::any_of(inner.ranges.begin(), inner.ranges.end(),
                    [n](const auto& r) { return r.second - r.first != n; })) {
      why = "element inside a summand has a degenerate spectrum";
      return std::nullopt;
    }
    const Matrix w = vj * inner.vectors.leftCols(n);
    const Vector p = fr.f_inv * (w * (w.adjoint() * one_f));
    // Left ideal A p, with p first and the rest orthonormal to it.
    const Matrix ideal = linalg::orthonormal_range(fr.f * alg.right(p) * fr.f_inv * vj, 1e-8);
    if (ideal.cols() != n) {
      why = "left ideal has the wrong dimension";
      return std::nullopt;
    }
    const Vector pf = (fr.f * p).normalized();
    const Matrix rest = ideal - pf * (pf.adjoint() * ideal);
    const Matrix others = linalg::orthonormal_range(rest, 1e-8);
    if (others.cols() != n - 1) {
      why = "left ideal basis is degenerate";
      return std::nullopt;
    }
    std::vector<Vector> col(n);
    col[0] = p;
    const Scalar pp = alg.inner(p, p);
    for (int i = 1; i < n; ++i) {
      Vector v = fr.f_inv * others.col(i - 1);
      // Scale so that v^* v = p.
      const Vector vv = alg.mul(alg.dagger(v), v);
      const double lam = (alg.inner(p, vv) / pp).real();
      if (!(lam > 0.0)) {
        why = "left ideal element has nonpositive norm";
        return std::nullopt;
      }
      col[i] = v / std::sqrt(lam);
    }
    blk.units.resize(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) blk.units[i * n + j] = alg.mul(col[i], alg.dagger(col[j]));
    blocks.push_back(std::move(blk));
  }
  return blocks;
}

bool key_less(const Block& a, const Block& b) {
  if (a.n != b.n) return a.n < b.n;
  for (Eigen::Index k = 0; k < a.central.size(); ++k) {
    const Scalar x = a.central(k), y = b.central(k);
    if (std::abs(x.real() - y.real()) > 1e-9) return x.real() > y.real();
    if (std::abs(x.imag() - y.imag()) > 1e-9) return x.imag() > y.imag();
  }
  return false;
}

double residual(const Algebra& alg, const std::vector<Block>& blocks) {
  double r = 0.0;
  Vector sum = Vector::Zero(alg.dim());
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    const auto& blk = blocks[bi];
    const int n = blk.n;
    for (int i = 0; i < n; ++i) {
      sum += blk.units[i * n + i];
      for (int j = 0; j < n; ++j) {
        r = std::max(r, (alg.dagger(blk.units[i * n + j]) - blk.units[j * n + i]).cwiseAbs().maxCoeff());
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            Vector expect = (j == k) ? blk.units[i * n + l] : Vector::Zero(alg.dim());
            r = std::max(r, (alg.mul(blk.units[i * n + j], blk.units[k * n + l]) - expect)
                                .cwiseAbs()
                                .maxCoeff());
          }
      }
    }
    // Units of distinct blocks annihilate each other; checking the central
    // projections suffices.
    for (std::size_t bj = bi + 1; bj < blocks.size(); ++bj)
      r = std::max(r, alg.mul(blk.central, blocks[bj].central).cwiseAbs().maxCoeff());
  }
  r = std::max(r, (sum - alg.unit()).cwiseAbs().maxCoeff());
  return r;
}

}  // namespace

WedderburnDecomposition wedderburn_decompose(const StructureConstants& a, std::uint64_t seed,
                                             int max_attempts) {
  const int n = static_cast<int>(a.left.size());
  if (n == 0 || a.unit.size() != n || a.gram.rows() != n || a.gram.cols() != n)
    throw ShapeError("wedderburn: inconsistent structure constants");
  const Algebra alg(a);
  const Matrix center = alg.center();
  std::string why = "no attempt made";
  double best = std::numeric_limits<double>::infinity();
  for (int t = 0; t < max_attempts; ++t) {
    Rng rng(seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(t));
    auto blocks = attempt(alg, center, rng, why);
    if (!blocks) continue;
    const double res = residual(alg, *blocks);
    best = std::min(best, res);
    if (res > 1e-7) {
      std::ostringstream msg;
      msg << "matrix-unit relations fail, residual " << res;
      why = msg.str();
      continue;
    }
    std::stable_sort(blocks->begin(), blocks->end(), key_less);
    WedderburnDecomposition out;
    out.units = Matrix(n, n);
    int col = 0;
    for (const auto& blk : *blocks) {
      out.dims.push_back(blk.n);
      for (const auto& u : blk.units) out.units.col(col++) = u;
    }
    if (col != n) {
      why = "matrix units do not span the algebra";
      continue;
    }
    out.residual = res;
    out.attempts = t + 1;
    return out;
  }
  std::ostringstream msg;
  msg << "wedderburn: block detection failed after " << max_attempts
      << " attempts (" << why << ")";
  if (best < std::numeric_limits<double>::infinity()) msg << ", best residual " << best;
  throw ConsistencyError(msg.str());
}

}  // namespace qlp
