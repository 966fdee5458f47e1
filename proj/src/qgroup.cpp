#include "qlp/qgroup.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qlp/linalg.hpp"
#include "qlp/wedderburn.hpp"

namespace qlp {

bool ValidationReport::ok() const { return first_failure() == nullptr; }

const ValidationCheck* ValidationReport::first_failure() const {
  for (const auto& c : checks)
    if (!c.passed) return &c;
  return nullptr;
}

namespace {

constexpr double kHomTol = 1e-9;
constexpr double kSpectralTol = 1e-8;

struct Analysis {
  ValidationReport report;
  BlockStructure structure;
  Functional haar;
  Vector counit;
  std::vector<Corepresentation> irreps;
  Matrix antipode;
};

void add(ValidationReport& r, std::string name, bool passed, double residual,
         std::string detail = {}) {
  r.checks.push_back({std::move(name), passed, residual, std::move(detail)});
}

// Coordinates of e_k e_l, as (index, nonzero).
int basis_product(const BlockStructure& s, int k, int l) {
  const auto a = s.locate(k);
  const auto b = s.locate(l);
  if (a.block != b.block || a.col != b.row) return -1;
  return s.index(a.block, a.row, b.col);
}

int basis_adjoint(const BlockStructure& s, int k) {
  const auto a = s.locate(k);
  return s.index(a.block, a.col, a.row);
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index k = 0; k < a.size(); ++k) out.segment(k * b.size(), b.size()) = a(k) * b;
  return out;
}

double star_hom_residual(const BlockStructure& s, const Matrix& delta, std::string& where) {
  const int n = s.dimension();
  const TensorLayout layout(s, s);
  const double scale = std::max(1.0, delta.cwiseAbs().maxCoeff());
  std::vector<AlgebraElement> images;
  images.reserve(n);
  for (int k = 0; k < n; ++k) images.push_back(layout.to_element(delta.col(k)));
  double worst = 0.0;
  auto note = [&](double r, const std::string& w) {
    if (r > worst) {
      worst = r;
      where = w;
    }
  };
  const Vector unit = s.unit();
  note((delta * unit - kron(unit, unit)).cwiseAbs().maxCoeff(), "unit");
  const AlgebraElement zero = AlgebraElement::zero(layout.product());
  for (int k = 0; k < n; ++k) {
    note(max_abs_difference(images[basis_adjoint(s, k)], images[k].adjoint()) / scale,
         "adjoint at " + std::to_string(k));
    for (int l = 0; l < n; ++l) {
      const int m = basis_product(s, k, l);
      const AlgebraElement& expect = m < 0 ? zero : images[m];
      note(max_abs_difference(images[k] * images[l], expect) / (scale * scale),
           "product at (" + std::to_string(k) + "," + std::to_string(l) + ")");
    }
  }
  return worst;
}

double coassociativity_residual(const Matrix& delta) {
  const Eigen::Index n = delta.cols();
  double worst = 0.0;
  for (Eigen::Index m = 0; m < n; ++m) {
    // C(k, l) = coefficient of e_k ⊗ e_l in Δ(e_m).
    Matrix c(n, n);
    for (Eigen::Index k = 0; k < n; ++k) c.row(k) = delta.col(m).segment(k * n, n).transpose();
    const Matrix left = delta * c;                // rows a·n + b, cols c
    const Matrix right = c * delta.transpose();  // rows a, cols b·n + c
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index b = 0; b < n; ++b)
        for (Eigen::Index cc = 0; cc < n; ++cc)
          worst = std::max(worst, std::abs(left(a * n + b, cc) - right(a, b * n + cc)));
  }
  return worst;
}

// Condition number proxy (σ_min/σ_max over blocks) of a ⊗ b ↦ Δ(a)(1 ⊗ b)
// (right_leg = false) or a ⊗ b ↦ Δ(a)(b ⊗ 1) (right_leg = true).
double cancellation_conditioning(const BlockStructure& s, const Matrix& delta, bool right_leg) {
  const int n = s.dimension();
  double worst = kInfinity;
  for (int i = 0; i < s.block_count(); ++i) {
    const int ni = s.dim(i);
    Matrix m(n * ni, n * ni);
    for (int l = 0; l < n; ++l)
      for (int k = 0; k < n; ++k)
        for (int r = 0; r < ni; ++r)
          for (int c = 0; c < ni; ++c) {
            const int e = s.index(i, r, c);
            m(l * ni + r, k * ni + c) = right_leg ? delta(e * n + l, k) : delta(l * n + e, k);
          }
    Eigen::JacobiSVD<Matrix> svd(m);
    const RealVector& sv = svd.singularValues();
    const double top = sv(0);
    worst = std::min(worst, top > 0.0 ? sv(sv.size() - 1) / top : 0.0);
  }
  return worst;
}

struct HaarSolve {
  int nullity = 0;
  Vector values;
};

HaarSolve solve_haar(const BlockStructure& s, const Matrix& delta) {
  const int n = s.dimension();
  const Vector u = s.unit();
  Matrix sys = Matrix::Zero(2 * static_cast<Eigen::Index>(n) * n, n);
  for (int m = 0; m < n; ++m)
    for (int j = 0; j < n; ++j) {
      const Eigen::Index r1 = static_cast<Eigen::Index>(m) * n + j;
      const Eigen::Index r2 = r1 + static_cast<Eigen::Index>(n) * n;
      for (int k = 0; k < n; ++k) {
        sys(r1, k) += delta(k * n + j, m);  // (h ⊗ ι)Δ(e_m), coefficient of e_j
        sys(r2, k) += delta(j * n + k, m);  // (ι ⊗ h)Δ(e_m), coefficient of e_j
      }
      sys(r1, m) -= u(j);
      sys(r2, m) -= u(j);
    }
  const Matrix ns = linalg::null_space(sys, 1e-9);
  HaarSolve out;
  out.nullity = static_cast<int>(ns.cols());
  if (out.nullity == 1) {
    const Scalar norm = u.dot(ns.col(0));  // conj(u) = u
    if (std::abs(norm) < 1e-12) {
      out.nullity = 0;
    } else {
      out.values = ns.col(0) / norm;
    }
  }
  return out;
}

Vector solve_counit(const Matrix& delta, double& residual) {
  const Eigen::Index n = delta.cols();
  // (ε ⊗ ι)Δ = id and (ι ⊗ ε)Δ = id stacked.
  Matrix sys = Matrix::Zero(2 * n * n, n);
  Vector rhs = Vector::Zero(2 * n * n);
  for (Eigen::Index l = 0; l < n; ++l)
    for (Eigen::Index m = 0; m < n; ++m) {
      for (Eigen::Index k = 0; k < n; ++k) {
        sys(l * n + m, k) = delta(k * n + l, m);
        sys(n * n + l * n + m, k) = delta(l * n + k, m);
      }
      if (l == m) rhs(l * n + m) = rhs(n * n + l * n + m) = 1.0;
    }
  const Vector eps = sys.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rhs);
  residual = (sys * eps - rhs).cwiseAbs().maxCoeff();
  return eps;
}

struct AntipodeResiduals {
  double square = 0.0, anti = 0.0, haar = 0.0, star = 0.0;
};

AntipodeResiduals antipode_residuals(const BlockStructure& s, const Matrix& S, const Vector& h) {
  const int n = s.dimension();
  AntipodeResiduals r;
  r.square = (S * S - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
  r.haar = (S.transpose() * h - h).cwiseAbs().maxCoeff();
  std::vector<AlgebraElement> img;
  img.reserve(n);
  for (int k = 0; k < n; ++k) img.push_back(AlgebraElement::from_coordinates(s, S.col(k)));
  const AlgebraElement zero = AlgebraElement::zero(s);
  for (int k = 0; k < n; ++k) {
    r.star = std::max(r.star, max_abs_difference(img[basis_adjoint(s, k)], img[k].adjoint()));
    for (int l = 0; l < n; ++l) {
      const int m = basis_product(s, k, l);
      r.anti = std::max(r.anti, max_abs_difference(m < 0 ? zero : img[m], img[l] * img[k]));
    }
  }
  return r;
}

std::string fmt(double v) {
  std::ostringstream o;
  o << v;
  return o.str();
}

Analysis analyze(const std::vector<int>& dims, const Matrix& delta, std::uint64_t seed) {
  Analysis a;
  auto& rep = a.report;
  int n = 0;
  bool shape_ok = !dims.empty();
  for (int d : dims) {
    shape_ok = shape_ok && d >= 1;
    n += d * d;
  }
  shape_ok = shape_ok && delta.cols() == n && delta.rows() == static_cast<Eigen::Index>(n) * n;
  add(rep, "shape", shape_ok, 0.0,
      shape_ok ? "" : "delta must be a dim^2 x dim matrix for the declared blocks");
  if (!shape_ok) return a;
  if (!delta.allFinite()) {
    add(rep, "finite", false, kInfinity, "delta has non-finite entries");
    return a;
  }

  double total = 0.0;
  for (int d : dims) total += d;
  const BlockStructure provisional(dims, std::vector<double>(dims.size(), 1.0 / total));

  std::string where;
  const double hom = star_hom_residual(provisional, delta, where);
  add(rep, "*-homomorphism", hom <= kHomTol, hom, hom <= kHomTol ? "" : "worst at " + where);
  const double coassoc = coassociativity_residual(delta);
  add(rep, "coassociativity", coassoc <= kHomTol, coassoc,
      coassoc <= kHomTol ? "" : "coassociativity residual " + fmt(coassoc));
  const double cl = cancellation_conditioning(provisional, delta, false);
  add(rep, "cancellation (1 x A)", cl > 1e-10, cl,
      cl > 1e-10 ? "" : "a (x) b -> delta(a)(1 (x) b) is singular");
  const double cr = cancellation_conditioning(provisional, delta, true);
  add(rep, "cancellation (A x 1)", cr > 1e-10, cr,
      cr > 1e-10 ? "" : "a (x) b -> delta(a)(b (x) 1) is singular");

  const HaarSolve hs = solve_haar(provisional, delta);
  if (hs.nullity != 1) {
    add(rep, "haar", false, static_cast<double>(hs.nullity),
        hs.nullity == 0 ? "no Haar state" : "ambiguous Haar state (solution dimension " +
                                                std::to_string(hs.nullity) + ")");
    return a;
  }
  add(rep, "haar", true, 0.0);
  // Tracial: h(e^i_ab) = c_i δ_ab with c_i > 0.
  std::vector<double> weights(dims.size());
  double trace_res = 0.0;
  double min_weight = kInfinity;
  for (int i = 0; i < provisional.block_count(); ++i) {
    const Scalar c = hs.values(provisional.index(i, 0, 0));
    for (int r = 0; r < dims[i]; ++r)
      for (int col = 0; col < dims[i]; ++col) {
        const Scalar expect = r == col ? c : Scalar(0);
        trace_res = std::max(trace_res, std::abs(hs.values(provisional.index(i, r, col)) - expect));
      }
    trace_res = std::max(trace_res, std::abs(c.imag()));
    weights[i] = c.real();
    min_weight = std::min(min_weight, c.real());
  }
  add(rep, "haar tracial", trace_res <= kHomTol, trace_res);
  add(rep, "haar faithful", min_weight > kHomTol, min_weight,
      min_weight > kHomTol ? "" : "Haar density is not positive definite");
  if (trace_res > kHomTol || !(min_weight > kHomTol)) return a;
  double wsum = 0.0;
  for (std::size_t i = 0; i < dims.size(); ++i) wsum += weights[i] * dims[i];
  for (double& w : weights) w /= wsum;
  a.structure = BlockStructure(dims, weights);
  a.haar = trace_functional(a.structure);

  double eres = 0.0;
  a.counit = solve_counit(delta, eres);
  add(rep, "counit", eres <= kHomTol, eres);
  if (eres > kHomTol) return a;

  try {
    a.irreps = peter_weyl(a.structure, delta, a.haar, a.counit, seed);
    add(rep, "peter-weyl", true, 0.0, std::to_string(a.irreps.size()) + " irreducible corepresentations");
  } catch (const std::exception& e) {
    add(rep, "peter-weyl", false, kInfinity, e.what());
    return a;
  }
  a.antipode = antipode_matrix(a.structure, a.irreps);
  const auto ar = antipode_residuals(a.structure, a.antipode, a.haar.values());
  add(rep, "antipode S^2 = id", ar.square <= kSpectralTol, ar.square);
  add(rep, "antipode antimultiplicative", ar.anti <= kSpectralTol, ar.anti);
  add(rep, "antipode *-preserving", ar.star <= kSpectralTol, ar.star);
  add(rep, "h o S = h", ar.haar <= kSpectralTol, ar.haar);
  return a;
}

// Phase in [0, 2π), or −1 for numerically zero entries.
double phase_key(Scalar c) {
  if (std::abs(c) < 1e-9) return -1.0;
  double t = std::arg(c);
  if (t < -1e-12) t += 2.0 * std::numbers::pi;
  return std::max(t, 0.0);
}

bool irrep_less(const Corepresentation& a, const Corepresentation& b) {
  if (a.dim != b.dim) return a.dim < b.dim;
  const Vector x = a.entries[0].coordinates();
  const Vector y = b.entries[0].coordinates();
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    const double p = phase_key(x(k)), q = phase_key(y(k));
    if (std::abs(p - q) > 1e-9) return p < q;
  }
  return false;
}

}  // namespace

// --- Peter–Weyl --------------------------------------------------------------

std::vector<Corepresentation> peter_weyl(const BlockStructure& s, const Matrix& delta,
                                         const Functional& haar, const Vector& counit,
                                         std::uint64_t seed) {
  const int n = s.dimension();
  const Vector hv = haar.values();
  // H(k, m) = h(e_k e_m); G(k, m) = h(e_k^* e_m).
  Matrix H = Matrix::Zero(n, n);
  Matrix G = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k)
    for (int m = 0; m < n; ++m) {
      const int p = basis_product(s, k, m);
      if (p >= 0) H(k, m) = hv(p);
      const int q = basis_product(s, basis_adjoint(s, k), m);
      if (q >= 0) G(k, m) = hv(q);
    }
  // φ ↦ the x with φ = h(· x) identifies A* with L₂(A, h).
  const Matrix Hinv = H.fullPivLu().inverse();
  StructureConstants dual;
  dual.gram = Hinv.adjoint() * G * Hinv;
  dual.unit = counit;
  dual.left.resize(n);
  for (int k = 0; k < n; ++k) {
    Matrix L(n, n);
    for (int m = 0; m < n; ++m)
      for (int l = 0; l < n; ++l) L(m, l) = delta(k * n + l, m);
    dual.left[k] = std::move(L);
  }
  const WedderburnDecomposition wd = wedderburn_decompose(dual, seed);
  // The basis of A dual to the matrix units of A*: E_i(a_j) = δ_ij.
  const Matrix W = wd.units.transpose().fullPivLu().inverse();

  std::vector<Corepresentation> out;
  int offset = 0;
  for (int d : wd.dims) {
    std::vector<AlgebraElement> u;
    for (int e = 0; e < d * d; ++e) u.push_back(AlgebraElement::from_coordinates(s, W.col(offset + e)));
    offset += d * d;
    // P = (h ⊗ ι)(u u^*) satisfies u P u^* = P; conjugating by P^{-1/2}
    // makes u unitary.
    Matrix P(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Scalar acc = 0.0;
        for (int p = 0; p < d; ++p) acc += haar(u[i * d + p] * u[j * d + p].adjoint());
        P(i, j) = acc;
      }
    const Matrix t = linalg::hermitian_power(P, -0.5);
    const Matrix t_inv = linalg::hermitian_power(P, 0.5);
    Corepresentation c;
    c.dim = d;
    c.q_matrix = Matrix::Identity(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        AlgebraElement v = AlgebraElement::zero(s);
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l) {
            const Scalar coef = t(i, k) * t_inv(l, j);
            if (std::abs(coef) > 0.0) v += coef * u[k * d + l];
          }
        c.entries.push_back(std::move(v));
      }
    out.push_back(std::move(c));
  }

  // Trivial corepresentation first.
  const AlgebraElement one = AlgebraElement::identity(s);
  auto trivial = std::find_if(out.begin(), out.end(), [&](const Corepresentation& c) {
    return c.dim == 1 && max_abs_difference(c.entries[0], one) < 1e-6;
  });
  if (trivial == out.end()) throw ConsistencyError("peter_weyl: trivial corepresentation not found");
  std::iter_swap(out.begin(), trivial);
  std::stable_sort(out.begin() + 1, out.end(), irrep_less);

  // Verification.
  int count = 0;
  for (const auto& c : out) count += c.dim * c.dim;
  if (count != n) throw ConsistencyError("peter_weyl: sum of n_alpha^2 differs from dim A");
  double corep = 0.0, unitary = 0.0;
  Matrix V(n, n);
  std::vector<int> owner;
  int col = 0;
  for (std::size_t a = 0; a < out.size(); ++a) {
    const auto& c = out[a];
    const int d = c.dim;
    if ((c.q_matrix - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > 0.0)
      throw ConsistencyError("peter_weyl: Q_alpha differs from the identity");
    std::vector<Vector> coords;
    for (const auto& e : c.entries) coords.push_back(e.coordinates());
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Vector expect = Vector::Zero(static_cast<Eigen::Index>(n) * n);
        for (int p = 0; p < d; ++p) expect += kron(coords[i * d + p], coords[p * d + j]);
        corep = std::max(corep, (delta * coords[i * d + j] - expect).cwiseAbs().maxCoeff());
        AlgebraElement uu = AlgebraElement::zero(s), uu2 = AlgebraElement::zero(s);
        for (int p = 0; p < d; ++p) {
          uu += c(i, p) * c(j, p).adjoint();
          uu2 += c(p, i).adjoint() * c(p, j);
        }
        const AlgebraElement id = i == j ? one : AlgebraElement::zero(s);
        unitary = std::max({unitary, max_abs_difference(uu, id), max_abs_difference(uu2, id)});
        V.col(col++) = coords[i * d + j];
        owner.push_back(static_cast<int>(a));
      }
  }
  // h(u_ij (u_lm)^*) = δ δ_il δ_jm / d_α, with K(k, m) = h(e_k e_m^*).
  Matrix K = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k)
    for (int m = 0; m < n; ++m) {
      const int p = basis_product(s, k, basis_adjoint(s, m));
      if (p >= 0) K(k, m) = hv(p);
    }
  const Matrix orth = V.transpose() * K * V.conjugate();
  double ortho = 0.0;
  for (int r = 0; r < n; ++r)
    for (int q = 0; q < n; ++q) {
      const double expect = r == q ? 1.0 / out[owner[r]].dim : 0.0;
      ortho = std::max(ortho, std::abs(orth(r, q) - expect));
    }
  if (corep > kSpectralTol || unitary > kSpectralTol || ortho > kSpectralTol) {
    std::ostringstream msg;
    msg << "peter_weyl: verification failed (corepresentation " << corep << ", unitarity "
        << unitary << ", orthogonality " << ortho << ")";
    throw ConsistencyError(msg.str());
  }
  return out;
}

Matrix antipode_matrix(const BlockStructure& s, const std::vector<Corepresentation>& irreps) {
  const int n = s.dimension();
  Matrix V(n, n), Vs(n, n);
  int col = 0;
  for (const auto& c : irreps)
    for (int i = 0; i < c.dim; ++i)
      for (int j = 0; j < c.dim; ++j) {
        V.col(col) = c(i, j).coordinates();
        Vs.col(col) = c(j, i).adjoint().coordinates();
        ++col;
      }
  if (col != n) throw ShapeError("antipode_matrix: corepresentations do not span A");
  return Vs * V.fullPivLu().inverse();
}

Functional haar_state(const BlockStructure& s, const Matrix& delta) {
  const int n = s.dimension();
  if (delta.cols() != n || delta.rows() != static_cast<Eigen::Index>(n) * n)
    throw ShapeError("haar_state: delta has the wrong shape");
  const HaarSolve hs = solve_haar(s, delta);
  if (hs.nullity == 0) throw ValidationError("no Haar state");
  if (hs.nullity > 1) throw ValidationError("ambiguous Haar state");
  return Functional::from_values(s, hs.values);
}

ValidationReport validate_quantum_group(const std::vector<int>& block_dims, const Matrix& delta,
                                        std::uint64_t seed) {
  return analyze(block_dims, delta, seed).report;
}

// --- QuantumGroup ------------------------------------------------------------

QuantumGroup::QuantumGroup(std::string name, std::vector<int> block_dims,
                           std::optional<std::vector<double>> weights, Matrix delta,
                           std::optional<GroupData> group, std::uint64_t seed)
    : name_(std::move(name)), delta_(std::move(delta)) {
  Analysis a = analyze(block_dims, delta_, seed);
  if (const ValidationCheck* f = a.report.first_failure()) {
    std::ostringstream msg;
    msg << name_ << ": " << f->name << " check failed";
    if (!f->detail.empty()) msg << " (" << f->detail << ")";
    msg << ", residual " << f->residual;
    throw ValidationError(msg.str());
  }
  if (weights) {
    if (weights->size() != block_dims.size())
      throw ShapeError(name_ + ": weights and blocks differ in length");
    for (std::size_t i = 0; i < weights->size(); ++i)
      if (std::abs((*weights)[i] - a.structure.weight(static_cast<int>(i))) > 1e-8) {
        std::ostringstream msg;
        msg << name_ << ": supplied weight " << (*weights)[i] << " for block " << i
            << " disagrees with the Haar state (" << a.structure.weight(static_cast<int>(i)) << ")";
        throw ValidationError(msg.str());
      }
  }
  structure_ = a.structure;
  layout_ = TensorLayout(structure_, structure_);
  haar_ = a.haar;
  counit_ = Functional::from_values(structure_, a.counit);
  antipode_ = std::move(a.antipode);
  irreps_ = std::move(a.irreps);
  report_ = std::move(a.report);
  if (group) {
    validate_group_table(group->cayley, group->identity);
    if (group->basis.rows() != dimension() ||
        group->basis.cols() != static_cast<Eigen::Index>(group->cayley.size()))
      throw ShapeError(name_ + ": group basis has the wrong shape");
    group_ = std::move(*group);
  }
}

AlgebraElement QuantumGroup::apply_delta(const AlgebraElement& x) const {
  return layout_.to_element(delta_ * x.coordinates());
}

AlgebraElement QuantumGroup::apply_antipode(const AlgebraElement& x) const {
  return AlgebraElement::from_coordinates(structure_, antipode_ * x.coordinates());
}

bool QuantumGroup::is_cocommutative(double tol) const {
  const int n = dimension();
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k)
      for (int l = k + 1; l < n; ++l)
        if (std::abs(delta_(k * n + l, m) - delta_(l * n + k, m)) > tol) return false;
  return true;
}

Functional QuantumGroup::functional_from_group_values(const Vector& values) const {
  if (group_.kind == GroupKind::none) throw DomainError(name_ + ": no underlying group");
  if (values.size() != group_.basis.cols())
    throw ShapeError(name_ + ": expected one value per group element");
  // φ(b_g) = Σ_k B(k, g) φ(e_k).
  const Vector v = group_.basis.transpose().fullPivLu().solve(values);
  return Functional::from_values(structure_, v);
}

AlgebraElement QuantumGroup::element_from_group_values(const Vector& coefficients) const {
  if (group_.kind == GroupKind::none) throw DomainError(name_ + ": no underlying group");
  if (coefficients.size() != group_.basis.cols())
    throw ShapeError(name_ + ": expected one coefficient per group element");
  return AlgebraElement::from_coordinates(structure_, group_.basis * coefficients);
}

// --- constructions -------------------------------------------------------------

QuantumGroup build_function_algebra(const CayleyTable& cayley, int identity, std::string name) {
  validate_group_table(cayley, identity);
  const int n = static_cast<int>(cayley.size());
  Matrix delta = Matrix::Zero(static_cast<Eigen::Index>(n) * n, n);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) delta(s * n + t, cayley[s][t]) = 1.0;
  GroupData g{GroupKind::function_algebra, cayley, identity, Matrix::Identity(n, n)};
  return QuantumGroup(std::move(name), std::vector<int>(n, 1),
                      std::vector<double>(n, 1.0 / n), std::move(delta), std::move(g));
}

QuantumGroup build_group_algebra(const CayleyTable& cayley, int identity, std::string name) {
  validate_group_table(cayley, identity);
  const int n = static_cast<int>(cayley.size());
  StructureConstants a;
  a.left.resize(n);
  for (int g = 0; g < n; ++g) {
    Matrix L = Matrix::Zero(n, n);
    for (int l = 0; l < n; ++l) L(cayley[g][l], l) = 1.0;
    a.left[g] = std::move(L);
  }
  a.unit = Vector::Zero(n);
  a.unit(identity) = 1.0;
  a.gram = Matrix::Identity(n, n);
  const WedderburnDecomposition wd = wedderburn_decompose(a, kDefaultDecompositionSeed);
  const Matrix& U = wd.units;                    // λ-coordinates of matrix units
  const Matrix B = U.fullPivLu().inverse();      // block coordinates of λ(g)
  Matrix delta = Matrix::Zero(static_cast<Eigen::Index>(n) * n, n);
  for (int g = 0; g < n; ++g) {
    const Vector b = B.col(g);
    const Vector bb = kron(b, b);
    for (int j = 0; j < n; ++j)
      if (std::abs(U(g, j)) > 0.0) delta.col(j) += U(g, j) * bb;
  }
  std::vector<double> weights;
  int offset = 0;
  for (int d : wd.dims) {
    weights.push_back(U(identity, offset).real());
    offset += d * d;
  }
  GroupData gd{GroupKind::group_algebra, cayley, identity, B};
  return QuantumGroup(std::move(name), wd.dims, std::move(weights), std::move(delta),
                      std::move(gd));
}

QuantumGroup tensor_product(const QuantumGroup& g1, const QuantumGroup& g2) {
  const auto& s1 = g1.structure();
  const auto& s2 = g2.structure();
  const int n1 = s1.dimension(), n2 = s2.dimension();
  const TensorLayout layout(s1, s2);
  const BlockStructure& s = layout.product();
  const int n = s.dimension();
  std::vector<int> t(static_cast<std::size_t>(n1) * n2);
  for (int k = 0; k < n1; ++k)
    for (int l = 0; l < n2; ++l) t[k * n2 + l] = tensor_index(s1, s2, k, l);
  const Matrix& d1 = g1.delta();
  const Matrix& d2 = g2.delta();
  Matrix delta = Matrix::Zero(static_cast<Eigen::Index>(n) * n, n);
  for (int k1 = 0; k1 < n1; ++k1)
    for (int k2 = 0; k2 < n2; ++k2) {
      const int col = t[k1 * n2 + k2];
      for (int a = 0; a < n1; ++a)
        for (int b = 0; b < n1; ++b) {
          const Scalar x = d1(a * n1 + b, k1);
          if (x == Scalar(0)) continue;
          for (int c = 0; c < n2; ++c)
            for (int d = 0; d < n2; ++d) {
              const Scalar y = d2(c * n2 + d, k2);
              if (y == Scalar(0)) continue;
              delta(static_cast<Eigen::Index>(t[a * n2 + c]) * n + t[b * n2 + d], col) += x * y;
            }
        }
    }
  return QuantumGroup(g1.name() + " x " + g2.name(), s.dims(), s.weights(), std::move(delta));
}

}  // namespace qlp
