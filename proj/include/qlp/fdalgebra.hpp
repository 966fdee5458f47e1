#pragma once

#include <limits>
#include <vector>

#include "qlp/common.hpp"

namespace qlp {

/// Shape and reference trace of a finite-dimensional C*-algebra
/// A = M_{n_1} ⊕ ... ⊕ M_{n_m}.
///
/// The reference state is τ(x) = Σ_i w_i Tr(x_i), so w_i is the trace of a
/// minimal diagonal projection in block i. The construction enforces
/// Σ_i w_i n_i = 1.
///
/// Coordinates: the basis of A is the family of matrix units e^i_{ab},
/// ordered block by block and row-major inside each block. Linear maps on A
/// and functionals are stored as matrices/vectors in this basis.
class BlockStructure {
 public:
  BlockStructure() = default;
  BlockStructure(std::vector<int> dims, std::vector<double> weights);

  /// ℂ^n with the uniform probability as trace.
  static BlockStructure commutative(int n);
  /// M_n with the normalized trace.
  static BlockStructure full_matrix(int n);

  const std::vector<int>& dims() const { return dims_; }
  const std::vector<double>& weights() const { return weights_; }
  int block_count() const { return static_cast<int>(dims_.size()); }
  int dim(int block) const { return dims_[block]; }
  double weight(int block) const { return weights_[block]; }
  /// dim(A) = Σ n_i².
  int dimension() const { return dimension_; }
  /// Index of e^block_{0,0}.
  int offset(int block) const { return offsets_[block]; }
  int index(int block, int row, int col) const {
    return offsets_[block] + row * dims_[block] + col;
  }

  struct Position {
    int block, row, col;
  };
  Position locate(int k) const;

  /// Coordinates of the unit.
  Vector unit() const;
  /// τ(e_k) for every basis element.
  Vector trace_row() const;
  /// Per-coordinate weights w_i; the map x ↦ sqrt(w)·x is an isometry from
  /// L₂(A, τ) onto ℂ^{dim A}.
  RealVector l2_weights() const;
  bool is_commutative() const;

  friend bool operator==(const BlockStructure& a, const BlockStructure& b);

 private:
  std::vector<int> dims_;
  std::vector<double> weights_;
  std::vector<int> offsets_;
  int dimension_ = 0;
};

/// Structure of A₁ ⊗ A₂: blocks (i, j) in lexicographic order, each of size
/// n_i m_j with weight w_i v_j.
BlockStructure tensor_structure(const BlockStructure& a,
                                const BlockStructure& b);

/// Index in tensor_structure(a, b) of the basis element e_k ⊗ f_l.
int tensor_index(const BlockStructure& a, const BlockStructure& b, int k,
                 int l);

/// Element x = x₁ ⊕ ... ⊕ x_m of a BlockStructure. Value type; all
/// operations return new elements.
class AlgebraElement {
 public:
  AlgebraElement() = default;
  AlgebraElement(BlockStructure structure, std::vector<Matrix> blocks);

  static AlgebraElement zero(const BlockStructure& s);
  static AlgebraElement identity(const BlockStructure& s);
  static AlgebraElement matrix_unit(const BlockStructure& s, int k);
  static AlgebraElement from_coordinates(const BlockStructure& s,
                                         const Vector& coords);

  const BlockStructure& structure() const { return structure_; }
  const std::vector<Matrix>& blocks() const { return blocks_; }
  const Matrix& block(int i) const { return blocks_[i]; }
  Vector coordinates() const;

  AlgebraElement adjoint() const;

  AlgebraElement& operator+=(const AlgebraElement& other);
  AlgebraElement& operator-=(const AlgebraElement& other);
  AlgebraElement& operator*=(Scalar c);

  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) {
    return a += b;
  }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) {
    return a -= b;
  }
  friend AlgebraElement operator*(Scalar c, AlgebraElement a) { return a *= c; }
  friend AlgebraElement operator*(AlgebraElement a, Scalar c) { return a *= c; }
  friend AlgebraElement operator*(const AlgebraElement& a,
                                  const AlgebraElement& b);

 private:
  BlockStructure structure_;
  std::vector<Matrix> blocks_;
};

/// Translates between the lexicographic coefficient layout of A₁ ⊗ A₂
/// (index k·dim A₂ + l for e_k ⊗ f_l) and elements of tensor_structure(a, b).
class TensorLayout {
 public:
  TensorLayout() = default;
  TensorLayout(const BlockStructure& a, const BlockStructure& b);

  const BlockStructure& product() const { return product_; }
  AlgebraElement to_element(const Vector& coefficients) const;
  Vector to_coefficients(const AlgebraElement& x) const;

 private:
  BlockStructure product_;
  std::vector<int> index_;
};

/// τ(x).
Scalar trace(const AlgebraElement& x);

/// Largest entrywise block difference; throws ShapeError on mismatch.
double max_abs_difference(const AlgebraElement& a, const AlgebraElement& b);

/// |x| = (x^*x)^{1/2}, via a Hermitian eigendecomposition of x^*x.
AlgebraElement abs(const AlgebraElement& x);

constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Noncommutative L_p norm (τ(|x|^p))^{1/p}; p = kInfinity gives the operator
/// norm. Throws DomainError for p < 1.
double lp_norm(const AlgebraElement& x, double p);

struct PositivityReport {
  bool positive = false;
  bool self_adjoint = false;
  /// Smallest eigenvalue over all blocks of the Hermitian part of x.
  double min_eigenvalue = 0.0;
};

PositivityReport is_positive(const AlgebraElement& x, double tol = 1e-10);

/// ‖x‖_p² − ‖Ex‖_p² − (p−1)‖x−Ex‖_p² with E the τ-preserving conditional
/// expectation onto scalars. Nonnegative for 1 < p ≤ 2.
double ricard_xu_defect(const AlgebraElement& x, double p);

/// Linear functional φ(y) = τ(y d), represented by its density d.
class Functional {
 public:
  Functional() = default;
  explicit Functional(AlgebraElement density) : density_(std::move(density)) {}

  /// Build from the values φ(e_k) on the matrix-unit basis.
  static Functional from_values(const BlockStructure& s, const Vector& values);

  const AlgebraElement& density() const { return density_; }
  const BlockStructure& structure() const { return density_.structure(); }
  /// φ(e_k) for every basis element.
  Vector values() const;
  Scalar operator()(const AlgebraElement& y) const;

  /// d ⪰ 0 and τ(d) = 1.
  bool is_state(double tol = 1e-10) const;
  /// d ≻ 0 (min eigenvalue > tol) and τ(d) = 1.
  bool is_faithful_state(double tol = 1e-10) const;

  Functional& operator+=(const Functional& o);
  Functional& operator*=(Scalar c);
  friend Functional operator+(Functional a, const Functional& b) { return a += b; }
  friend Functional operator-(Functional a, const Functional& b) {
    return a += (-1.0) * b;
  }
  friend Functional operator*(Scalar c, Functional a) { return a *= c; }

 private:
  AlgebraElement density_;
};

/// Wraps d as the functional τ(· d). Rescales so that τ(d) = 1 only when
/// `normalize` is set; non-state densities are accepted and can be queried
/// through is_state().
Functional make_state(const AlgebraElement& d, bool normalize = false);

/// The reference trace τ as a functional.
Functional trace_functional(const BlockStructure& s);

}  // namespace qlp
