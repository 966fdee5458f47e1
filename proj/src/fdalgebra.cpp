#include "qlp/fdalgebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qlp {

BlockStructure::BlockStructure(std::vector<int> dims, std::vector<double> weights)
    : dims_(std::move(dims)), weights_(std::move(weights)) {
  if (dims_.empty()) throw ShapeError("BlockStructure: no blocks");
  if (dims_.size() != weights_.size())
    throw ShapeError("BlockStructure: blocks and weights differ in length");
  double total = 0.0;
  offsets_.reserve(dims_.size());
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (dims_[i] < 1) throw ShapeError("BlockStructure: block dimension < 1");
    if (!(weights_[i] > 0.0)) throw DomainError("BlockStructure: weight must be positive");
    offsets_.push_back(dimension_);
    dimension_ += dims_[i] * dims_[i];
    total += weights_[i] * dims_[i];
  }
  if (std::abs(total - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg << "BlockStructure: trace is not a state, sum w_i n_i = " << total;
    throw DomainError(msg.str());
  }
}

BlockStructure BlockStructure::commutative(int n) {
  return BlockStructure(std::vector<int>(n, 1), std::vector<double>(n, 1.0 / n));
}

BlockStructure BlockStructure::full_matrix(int n) {
  return BlockStructure({n}, {1.0 / n});
}

BlockStructure::Position BlockStructure::locate(int k) const {
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), k);
  const int b = static_cast<int>(it - offsets_.begin()) - 1;
  const int local = k - offsets_[b];
  return {b, local / dims_[b], local % dims_[b]};
}

Vector BlockStructure::unit() const {
  Vector v = Vector::Zero(dimension_);
  for (int b = 0; b < block_count(); ++b)
    for (int a = 0; a < dims_[b]; ++a) v(index(b, a, a)) = 1.0;
  return v;
}

Vector BlockStructure::trace_row() const {
  Vector v = Vector::Zero(dimension_);
  for (int b = 0; b < block_count(); ++b)
    for (int a = 0; a < dims_[b]; ++a) v(index(b, a, a)) = weights_[b];
  return v;
}

RealVector BlockStructure::l2_weights() const {
  RealVector v(dimension_);
  for (int b = 0; b < block_count(); ++b)
    v.segment(offsets_[b], dims_[b] * dims_[b]).setConstant(weights_[b]);
  return v;
}

bool BlockStructure::is_commutative() const {
  return std::all_of(dims_.begin(), dims_.end(), [](int n) { return n == 1; });
}

bool operator==(const BlockStructure& a, const BlockStructure& b) {
  if (a.dims_ != b.dims_) return false;
  for (std::size_t i = 0; i < a.weights_.size(); ++i)
    if (std::abs(a.weights_[i] - b.weights_[i]) > 1e-12) return false;
  return true;
}

BlockStructure tensor_structure(const BlockStructure& a, const BlockStructure& b) {
  std::vector<int> dims;
  std::vector<double> weights;
  for (int i = 0; i < a.block_count(); ++i)
    for (int j = 0; j < b.block_count(); ++j) {
      dims.push_back(a.dim(i) * b.dim(j));
      weights.push_back(a.weight(i) * b.weight(j));
    }
  // Re-normalize rounding so the product structure passes its own check.
  double total = 0.0;
  for (std::size_t k = 0; k < dims.size(); ++k) total += dims[k] * weights[k];
  for (double& w : weights) w /= total;
  return BlockStructure(std::move(dims), std::move(weights));
}

int tensor_index(const BlockStructure& a, const BlockStructure& b, int k, int l) {
  const auto p = a.locate(k);
  const auto q = b.locate(l);
  const int block = p.block * b.block_count() + q.block;
  const int m = b.dim(q.block);
  const int size = a.dim(p.block) * m;
  int offset = 0;
  for (int i = 0; i < a.block_count(); ++i)
    for (int j = 0; j < b.block_count(); ++j) {
      if (i * b.block_count() + j == block) goto found;
      offset += a.dim(i) * b.dim(j) * a.dim(i) * b.dim(j);
    }
found:
  return offset + (p.row * m + q.row) * size + (p.col * m + q.col);
}

// --- AlgebraElement --------------------------------------------------------

AlgebraElement::AlgebraElement(BlockStructure structure, std::vector<Matrix> blocks)
    : structure_(std::move(structure)), blocks_(std::move(blocks)) {
  if (static_cast<int>(blocks_.size()) != structure_.block_count())
    throw ShapeError("AlgebraElement: wrong number of blocks");
  for (int i = 0; i < structure_.block_count(); ++i) {
    const int n = structure_.dim(i);
    if (blocks_[i].rows() != n || blocks_[i].cols() != n)
      throw ShapeError("AlgebraElement: block shape does not match structure");
  }
}

AlgebraElement AlgebraElement::zero(const BlockStructure& s) {
  std::vector<Matrix> blocks;
  for (int n : s.dims()) blocks.push_back(Matrix::Zero(n, n));
  return AlgebraElement(s, std::move(blocks));
}

AlgebraElement AlgebraElement::identity(const BlockStructure& s) {
  std::vector<Matrix> blocks;
  for (int n : s.dims()) blocks.push_back(Matrix::Identity(n, n));
  return AlgebraElement(s, std::move(blocks));
}

AlgebraElement AlgebraElement::matrix_unit(const BlockStructure& s, int k) {
  AlgebraElement e = zero(s);
  const auto p = s.locate(k);
  e.blocks_[p.block](p.row, p.col) = 1.0;
  return e;
}

AlgebraElement AlgebraElement::from_coordinates(const BlockStructure& s,
                                                const Vector& coords) {
  if (coords.size() != s.dimension())
    throw ShapeError("AlgebraElement: coordinate vector has wrong length");
  std::vector<Matrix> blocks;
  for (int b = 0; b < s.block_count(); ++b) {
    const int n = s.dim(b);
    Matrix m(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) m(r, c) = coords(s.index(b, r, c));
    blocks.push_back(std::move(m));
  }
  return AlgebraElement(s, std::move(blocks));
}

Vector AlgebraElement::coordinates() const {
  Vector v(structure_.dimension());
  for (int b = 0; b < structure_.block_count(); ++b) {
    const int n = structure_.dim(b);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) v(structure_.index(b, r, c)) = blocks_[b](r, c);
  }
  return v;
}

AlgebraElement AlgebraElement::adjoint() const {
  AlgebraElement out = *this;
  for (auto& m : out.blocks_) m = m.adjoint().eval();
  return out;
}

namespace {
void require_same(const BlockStructure& a, const BlockStructure& b) {
  if (!(a == b)) throw ShapeError("AlgebraElement: mismatched block structures");
}
}  // namespace

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& other) {
  require_same(structure_, other.structure_);
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] += other.blocks_[i];
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& other) {
  require_same(structure_, other.structure_);
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] -= other.blocks_[i];
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(Scalar c) {
  for (auto& m : blocks_) m *= c;
  return *this;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  require_same(a.structure_, b.structure_);
  AlgebraElement out = a;
  for (std::size_t i = 0; i < out.blocks_.size(); ++i)
    out.blocks_[i] = a.blocks_[i] * b.blocks_[i];
  return out;
}

Scalar trace(const AlgebraElement& x) {
  Scalar t = 0.0;
  const auto& s = x.structure();
  for (int b = 0; b < s.block_count(); ++b) t += s.weight(b) * x.block(b).trace();
  return t;
}

double max_abs_difference(const AlgebraElement& a, const AlgebraElement& b) {
  require_same(a.structure(), b.structure());
  double d = 0.0;
  for (int i = 0; i < a.structure().block_count(); ++i)
    if (a.block(i).size() > 0)
      d = std::max(d, (a.block(i) - b.block(i)).cwiseAbs().maxCoeff());
  return d;
}

AlgebraElement abs(const AlgebraElement& x) {
  std::vector<Matrix> blocks;
  for (const auto& m : x.blocks()) {
    Eigen::SelfAdjointEigenSolver<Matrix> es((m.adjoint() * m).eval());
    RealVector ev = es.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i)
      ev(i) = (ev(i) < 0.0 && ev(i) >= -1e-12) ? 0.0 : std::sqrt(std::max(ev(i), 0.0));
    const Matrix& v = es.eigenvectors();
    blocks.push_back(v * ev.cast<Scalar>().asDiagonal() * v.adjoint());
  }
  return AlgebraElement(x.structure(), std::move(blocks));
}

double lp_norm(const AlgebraElement& x, double p) {
  if (std::isnan(p) || p < 1.0) throw DomainError("lp_norm: p must be >= 1");
  const auto& s = x.structure();
  if (std::isinf(p)) {
    double top = 0.0;
    for (const auto& m : x.blocks()) {
      Eigen::JacobiSVD<Matrix> svd(m);
      top = std::max(top, svd.singularValues()(0));
    }
    return top;
  }
  // Singular values of x_i are the eigenvalues of |x_i|.
  double sum = 0.0;
  double top = 0.0;
  std::vector<RealVector> svs;
  svs.reserve(x.blocks().size());
  for (const auto& m : x.blocks()) {
    if (m.rows() == 1) {
      svs.push_back(RealVector::Constant(1, std::abs(m(0, 0))));
    } else {
      Eigen::JacobiSVD<Matrix> svd(m);
      svs.push_back(svd.singularValues());
    }
    top = std::max(top, svs.back().maxCoeff());
  }
  if (top == 0.0) return 0.0;
  // Scale by the largest singular value to avoid overflow for large p.
  for (int b = 0; b < s.block_count(); ++b)
    for (Eigen::Index k = 0; k < svs[b].size(); ++k)
      sum += s.weight(b) * std::pow(svs[b](k) / top, p);
  return top * std::pow(sum, 1.0 / p);
}

PositivityReport is_positive(const AlgebraElement& x, double tol) {
  PositivityReport r;
  double asym = 0.0;
  double min_ev = kInfinity;
  double scale = 1.0;
  for (const auto& m : x.blocks()) {
    asym = std::max(asym, (m - m.adjoint()).cwiseAbs().maxCoeff());
    scale = std::max(scale, m.cwiseAbs().maxCoeff());
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
    min_ev = std::min(min_ev, es.eigenvalues()(0));
  }
  r.self_adjoint = asym <= tol * scale;
  r.min_eigenvalue = min_ev;
  r.positive = r.self_adjoint && min_ev >= -tol;
  return r;
}

double ricard_xu_defect(const AlgebraElement& x, double p) {
  if (!(p > 1.0 && p <= 2.0)) throw DomainError("ricard_xu_defect: p must lie in (1, 2]");
  const Scalar t = trace(x);
  const AlgebraElement ex = t * AlgebraElement::identity(x.structure());
  const double nx = lp_norm(x, p);
  const double ne = std::abs(t);  // ‖c·1‖_p = |c| for a state τ
  const double nr = lp_norm(x - ex, p);
  return nx * nx - ne * ne - (p - 1.0) * nr * nr;
}

// --- TensorLayout ---------------------------------------------------------

TensorLayout::TensorLayout(const BlockStructure& a, const BlockStructure& b)
    : product_(tensor_structure(a, b)) {
  index_.resize(static_cast<std::size_t>(a.dimension()) * b.dimension());
  for (int k = 0; k < a.dimension(); ++k)
    for (int l = 0; l < b.dimension(); ++l) index_[k * b.dimension() + l] = tensor_index(a, b, k, l);
}

AlgebraElement TensorLayout::to_element(const Vector& coefficients) const {
  if (coefficients.size() != static_cast<Eigen::Index>(index_.size()))
    throw ShapeError("TensorLayout: coefficient vector has wrong length");
  Vector coords(product_.dimension());
  for (std::size_t i = 0; i < index_.size(); ++i) coords(index_[i]) = coefficients(i);
  return AlgebraElement::from_coordinates(product_, coords);
}

Vector TensorLayout::to_coefficients(const AlgebraElement& x) const {
  const Vector coords = x.coordinates();
  Vector out(static_cast<Eigen::Index>(index_.size()));
  for (std::size_t i = 0; i < index_.size(); ++i) out(i) = coords(index_[i]);
  return out;
}

// --- Functional ------------------------------------------------------------

Functional Functional::from_values(const BlockStructure& s, const Vector& values) {
  if (values.size() != s.dimension())
    throw ShapeError("Functional: value vector has wrong length");
  // φ(e^i_ab) = τ(e^i_ab d) = w_i d_ba.
  std::vector<Matrix> blocks;
  for (int b = 0; b < s.block_count(); ++b) {
    const int n = s.dim(b);
    Matrix d(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) d(c, r) = values(s.index(b, r, c)) / s.weight(b);
    blocks.push_back(std::move(d));
  }
  return Functional(AlgebraElement(s, std::move(blocks)));
}

Vector Functional::values() const {
  const auto& s = structure();
  Vector v(s.dimension());
  for (int b = 0; b < s.block_count(); ++b) {
    const int n = s.dim(b);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        v(s.index(b, r, c)) = s.weight(b) * density_.block(b)(c, r);
  }
  return v;
}

Scalar Functional::operator()(const AlgebraElement& y) const { return trace(y * density_); }

bool Functional::is_state(double tol) const {
  const auto pos = is_positive(density_, tol);
  return pos.positive && std::abs(trace(density_) - 1.0) <= tol;
}

bool Functional::is_faithful_state(double tol) const {
  const auto pos = is_positive(density_, tol);
  return pos.positive && pos.min_eigenvalue > tol && std::abs(trace(density_) - 1.0) <= tol;
}

Functional& Functional::operator+=(const Functional& o) {
  density_ += o.density_;
  return *this;
}

Functional& Functional::operator*=(Scalar c) {
  density_ *= c;
  return *this;
}

Functional make_state(const AlgebraElement& d, bool normalize) {
  if (!normalize) return Functional(d);
  const Scalar t = trace(d);
  if (std::abs(t) == 0.0) throw DomainError("make_state: density has zero trace");
  return Functional((1.0 / t) * d);
}

Functional trace_functional(const BlockStructure& s) {
  return Functional(AlgebraElement::identity(s));
}

}  // namespace qlp
