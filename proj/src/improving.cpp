#include "qlp/improving.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

#include "qlp/ergodic.hpp"
#include "qlp/linalg.hpp"
#include "qlp/random.hpp"

namespace qlp {
namespace {

Eigen::DiagonalMatrix<Scalar, Eigen::Dynamic> diag(const RealVector& v) {
  return v.cast<Scalar>().asDiagonal();
}

// T in L₂-orthonormal coordinates, and the unit vector there.
Matrix orthonormal_matrix(const BlockStructure& s, const Matrix& t) {
  const RealVector sw = s.l2_weights().cwiseSqrt();
  return diag(sw) * t * diag(sw.cwiseInverse());
}

Vector orthonormal_unit(const BlockStructure& s) {
  const RealVector sw = s.l2_weights().cwiseSqrt();
  return sw.cast<Scalar>().cwiseProduct(s.unit());
}

AlgebraElement from_orthonormal(const BlockStructure& s, const Vector& y) {
  const RealVector sw = s.l2_weights().cwiseSqrt();
  return AlgebraElement::from_coordinates(s, sw.cwiseInverse().cast<Scalar>().cwiseProduct(y));
}

double l2(const AlgebraElement& x) { return lp_norm(x, 2.0); }

// --- c_p optimization ---------------------------------------------------------

class NormObjective {
 public:
  NormObjective(const BlockStructure& s, double p)
      : s_(s), p_(p), sw_(s.l2_weights().cwiseSqrt()), u_(orthonormal_unit(s)) {}

  // ‖x‖_p^p with x the element of orthonormal coordinates y; gradient with
  // respect to the real inner product Re⟨·,·⟩ on y.
  double value(const Vector& y, Vector* grad) const {
    const AlgebraElement x = from_orthonormal(s_, y);
    double f = 0.0;
    if (grad) grad->resize(y.size());
    for (int b = 0; b < s_.block_count(); ++b) {
      const Matrix& m = x.block(b);
      const double w = s_.weight(b);
      const int n = s_.dim(b);
      if (n == 1) {
        const Scalar z = m(0, 0);
        const double a = std::abs(z);
        f += w * std::pow(a, p_);
        if (grad) {
          const int k = s_.offset(b);
          (*grad)(k) = a > 1e-300 ? Scalar(p_ * w * std::pow(a, p_ - 1.0)) * (z / a) / sw_(k) : Scalar(0);
        }
        continue;
      }
      Eigen::JacobiSVD<Matrix> svd(m, grad ? (Eigen::ComputeFullU | Eigen::ComputeFullV) : 0);
      const RealVector& sv = svd.singularValues();
      RealVector dsv(sv.size());
      for (Eigen::Index i = 0; i < sv.size(); ++i) {
        f += w * std::pow(sv(i), p_);
        dsv(i) = sv(i) > 1e-300 ? p_ * w * std::pow(sv(i), p_ - 1.0) : 0.0;
      }
      if (grad) {
        const Matrix gm = svd.matrixU() * dsv.cast<Scalar>().asDiagonal() * svd.matrixV().adjoint();
        for (int r = 0; r < n; ++r)
          for (int c = 0; c < n; ++c) {
            const int k = s_.index(b, r, c);
            (*grad)(k) = gm(r, c) / sw_(k);
          }
      }
    }
    return f;
  }

  Vector project(const Vector& y) const {
    Vector z = y - u_ * u_.dot(y);
    const double nz = z.norm();
    return nz > 0.0 ? Vector(z / nz) : z;
  }

  // Minimizes ‖x‖_p over the trace-zero L₂ sphere from y0.
  Vector descend(Vector y, int iterations, double& f) const {
    y = project(y);
    Vector g;
    f = value(y, &g);
    double step = 0.5;
    for (int it = 0; it < iterations; ++it) {
      Vector rg = g - u_ * u_.dot(g);
      rg -= y * std::real(y.dot(rg));
      const double gn = rg.norm();
      if (gn < 1e-14) break;
      bool moved = false;
      for (int ls = 0; ls < 40; ++ls) {
        const Vector cand = project(y - (step / gn) * rg);
        Vector cg;
        const double cf = value(cand, &cg);
        if (cf < f - 1e-4 * step * gn) {
          const double gain = f - cf;
          y = cand;
          f = cf;
          g = cg;
          step = std::min(step * 2.0, 1.0);
          moved = true;
          if (gain < 1e-15 * std::max(1.0, f)) it = iterations;
          break;
        }
        step *= 0.5;
        if (step < 1e-14) break;
      }
      if (!moved) break;
    }
    return y;
  }

  double ratio(double f) const { return std::pow(f, -1.0 / p_); }

 private:
  const BlockStructure& s_;
  double p_;
  RealVector sw_;
  Vector u_;
};

std::vector<Vector> structured_starts(const BlockStructure& s) {
  std::vector<Vector> out;
  const int n = s.dimension();
  const Vector tr = s.trace_row();
  std::vector<int> diag;
  for (int b = 0; b < s.block_count(); ++b)
    for (int a = 0; a < s.dim(b); ++a) diag.push_back(s.index(b, a, a));
  // Off-diagonal matrix units.
  for (int b = 0; b < s.block_count(); ++b)
    for (int r = 0; r < s.dim(b); ++r)
      for (int c = 0; c < s.dim(b); ++c)
        if (r != c && out.size() < 48) {
          Vector x = Vector::Zero(n);
          x(s.index(b, r, c)) = 1.0;
          out.push_back(x);
        }
  // Differences of normalized minimal projections, and p − τ(p)1.
  for (std::size_t i = 0; i < diag.size() && out.size() < 96; ++i) {
    Vector x = -tr(diag[i]) * s.unit();
    x(diag[i]) += 1.0;
    out.push_back(x);
    for (std::size_t j = i + 1; j < diag.size() && out.size() < 96; ++j) {
      Vector y = Vector::Zero(n);
      y(diag[i]) = 1.0 / tr(diag[i]);
      y(diag[j]) = -1.0 / tr(diag[j]);
      out.push_back(y);
    }
  }
  return out;
}

struct CacheKey {
  std::vector<int> dims;
  std::vector<double> weights;
  double p;
  int restarts, iterations;
  std::uint64_t seed;
  bool operator<(const CacheKey& o) const {
    return std::tie(dims, weights, p, restarts, iterations, seed) <
           std::tie(o.dims, o.weights, o.p, o.restarts, o.iterations, o.seed);
  }
};

std::mutex cache_mutex;
std::map<CacheKey, BestConstant>& cache() {
  static std::map<CacheKey, BestConstant> c;
  return c;
}

BestConstant compute_best_constant(const BlockStructure& s, double p, const BestConstantOptions& opt) {
  const int n = s.dimension();
  BestConstant best;
  if (n == 1) {
    best.value = 1.0;
    best.witness = AlgebraElement::zero(s);
    return best;
  }
  if (p == 2.0) {
    // Every trace-zero element attains equality.
    Vector y = Vector::Zero(n);
    const auto starts = structured_starts(s);
    best.value = 1.0;
    const NormObjective obj(s, p);
    best.witness = from_orthonormal(s, obj.project(starts.front()));
    return best;
  }
  const NormObjective obj(s, p);
  Rng rng(opt.seed);
  const RealVector sw = s.l2_weights().cwiseSqrt();
  double best_f = kInfinity;
  Vector best_y;
  auto run = [&](const Vector& x0, int iters) {
    const Vector y0 = sw.cast<Scalar>().cwiseProduct(x0);
    if (obj.project(y0).norm() < 0.5) return;
    double f = 0.0;
    const Vector y = obj.descend(y0, iters, f);
    if (f < best_f) {
      best_f = f;
      best_y = y;
    }
  };
  for (const auto& x0 : structured_starts(s)) run(x0, opt.max_iterations / 4);
  for (int r = 0; r < opt.restarts; ++r) run(gaussian_matrix(n, 1, rng), opt.max_iterations);
  // Polish.
  double f = best_f;
  best_y = obj.descend(best_y, 4 * opt.max_iterations, f);
  best_f = std::min(best_f, f);
  best.value = std::max(1.0, obj.ratio(best_f));
  best.witness = from_orthonormal(s, best_y);
  return best;
}

}  // namespace

// --- maps ------------------------------------------------------------------------

MapOnAlgebra make_map(const BlockStructure& s, Matrix t, std::uint64_t seed, int positivity_samples) {
  const int n = s.dimension();
  if (t.rows() != n || t.cols() != n) throw ShapeError("make_map: matrix has the wrong shape");
  MapOnAlgebra m{s, std::move(t)};
  const Vector one = s.unit();
  m.unital = (m.matrix * one - one).cwiseAbs().maxCoeff() <= 1e-10;
  const Vector tr = s.trace_row();
  m.trace_preserving = (m.matrix.transpose() * tr - tr).cwiseAbs().maxCoeff() <= 1e-10;
  Rng rng(seed);
  m.two_positive = true;
  for (int it = 0; it < positivity_samples && m.two_positive; ++it) {
    // Random positive X ∈ M₂(A), per block a 2n_i × 2n_i matrix G^*G.
    std::vector<Matrix> xb;
    for (int d : s.dims()) {
      const Matrix g = gaussian_matrix(2 * d, 2 * d, rng);
      xb.push_back(g.adjoint() * g);
    }
    std::vector<Matrix> yb(xb.size());
    for (std::size_t b = 0; b < xb.size(); ++b) yb[b] = Matrix::Zero(xb[b].rows(), xb[b].cols());
    for (int a = 0; a < 2; ++a)
      for (int c = 0; c < 2; ++c) {
        std::vector<Matrix> entry;
        for (int b = 0; b < s.block_count(); ++b) {
          const int d = s.dim(b);
          entry.push_back(xb[b].block(a * d, c * d, d, d));
        }
        const Vector img = m.matrix * AlgebraElement(s, entry).coordinates();
        const AlgebraElement te = AlgebraElement::from_coordinates(s, img);
        for (int b = 0; b < s.block_count(); ++b) {
          const int d = s.dim(b);
          yb[b].block(a * d, c * d, d, d) = te.block(b);
        }
      }
    for (std::size_t b = 0; b < yb.size(); ++b) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(linalg::hermitian_part(yb[b]), Eigen::EigenvaluesOnly);
      const double scale = std::max(1.0, xb[b].cwiseAbs().maxCoeff());
      if (es.eigenvalues()(0) < -1e-9 * scale) m.two_positive = false;
    }
  }
  return m;
}

Matrix l2_adjoint(const BlockStructure& s, const Matrix& t) {
  const RealVector w = s.l2_weights();
  return diag(w.cwiseInverse()) * t.adjoint() * diag(w);
}

double spectral_gap(const BlockStructure& s, const Matrix& t) {
  const int n = s.dimension();
  if (t.rows() != n || t.cols() != n) throw ShapeError("spectral_gap: matrix has the wrong shape");
  const Vector u = orthonormal_unit(s);
  const Matrix proj = Matrix::Identity(n, n) - u * u.adjoint();
  return linalg::operator_norm(orthonormal_matrix(s, t) * proj);
}

double spectral_gap(const MapOnAlgebra& t) { return spectral_gap(t.structure, t.matrix); }

BestConstant best_constant_cp(const BlockStructure& s, double p, const BestConstantOptions& opt) {
  if (!(p >= 1.0 && p <= 2.0)) throw DomainError("best_constant_cp: p must lie in [1, 2]");
  if (!opt.use_cache) return compute_best_constant(s, p, opt);
  CacheKey key{s.dims(), s.weights(), p, opt.restarts, opt.max_iterations, opt.seed};
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache().find(key);
    if (it != cache().end()) return it->second;
  }
  BestConstant b = compute_best_constant(s, p, opt);
  std::lock_guard<std::mutex> lock(cache_mutex);
  cache().emplace(std::move(key), b);
  return b;
}

std::optional<double> witness_p(const BlockStructure& s, double lambda, const WitnessOptions& opt) {
  if (!(lambda >= 0.0)) throw DomainError("witness_p: lambda must be nonnegative");
  if (lambda >= 1.0) return std::nullopt;
  auto good = [&](double p) {
    const double c = best_constant_cp(s, p, opt.cp).value;
    return (p - 1.0) > lambda * lambda * c * c + opt.margin;
  };
  double lo = 1.0;
  double hi = -1.0;
  for (int j = 0; j <= 45; ++j) {
    const double p = 2.0 - 0.1 * std::ldexp(1.0, -j);
    if (good(p)) {
      hi = p;
      break;
    }
    lo = p;
  }
  if (hi < 0.0) return std::nullopt;
  while (hi - lo > opt.resolution) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= 1.0) break;
    if (good(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

FourierContraction fourier_contraction(const QuantumGroup& g, const Functional& phi) {
  const FourierCoefficients fc = fourier_transform(g, phi);
  FourierContraction out;
  for (std::size_t a = 0; a < fc.blocks.size(); ++a) {
    const double nrm = linalg::operator_norm(fc.blocks[a]);
    out.norms.push_back(nrm);
    if (a > 0 && nrm > out.max_nontrivial) {
      out.max_nontrivial = nrm;
      out.argmax = static_cast<int>(a);
    }
  }
  if (out.argmax < 0 && fc.blocks.size() > 1) out.argmax = 1;
  return out;
}

// --- five conditions ---------------------------------------------------------

namespace {

// Orthonormal basis (algebra coordinates, as columns) of the self-adjoint
// trace-zero directions y with ‖Ty‖₂ = ‖y‖₂.
std::vector<AlgebraElement> extremal_directions(const BlockStructure& s, const Matrix& t, Rng& rng) {
  const int n = s.dimension();
  const Vector u = orthonormal_unit(s);
  const Matrix proj = Matrix::Identity(n, n) - u * u.adjoint();
  Eigen::JacobiSVD<Matrix> svd(orthonormal_matrix(s, t) * proj, Eigen::ComputeFullV);
  const RealVector& sv = svd.singularValues();
  std::vector<AlgebraElement> out;
  const double top = sv.size() ? sv(0) : 0.0;
  Vector combo = Vector::Zero(n);
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) < top - 1e-9) break;
    const AlgebraElement y = from_orthonormal(s, svd.matrixV().col(i));
    const AlgebraElement re = 0.5 * (y + y.adjoint());
    const AlgebraElement im = Scalar(0, -0.5) * (y - y.adjoint());
    for (const auto& c : {re, im})
      if (l2(c) > 1e-6) out.push_back((1.0 / l2(c)) * c);
  }
  (void)rng;
  return out;
}

void verify_side(const BlockStructure& s, const Matrix& t, SideVerification& side,
                 const CheckOptions& opt, Rng& rng) {
  const double p = *side.witness_p;
  const Matrix& m = t;
  auto probe = [&](const AlgebraElement& x) {
    const double lhs = l2(AlgebraElement::from_coordinates(s, m * x.coordinates()));
    const double rhs = lp_norm(x, p);
    const double slack = lhs - rhs;
    side.max_slack = std::max(side.max_slack, slack);
    if (slack > opt.slack) ++side.violations;
    ++side.samples;
  };
  for (int i = 0; i < opt.samples; ++i) probe(random_positive(s, rng));
  for (int i = 0; i < opt.samples; ++i) probe(random_element(s, rng));
  // Near-extremal directions: 1 + εy for the c_p maximizer and the
  // directions where T is closest to isometric.
  const AlgebraElement one = AlgebraElement::identity(s);
  std::vector<AlgebraElement> dirs;
  const BestConstant bc = best_constant_cp(s, p, opt.witness.cp);
  if (l2(bc.witness) > 0.0) dirs.push_back(bc.witness);
  const Vector u = orthonormal_unit(s);
  Eigen::JacobiSVD<Matrix> svd(orthonormal_matrix(s, t) *
                                   (Matrix::Identity(s.dimension(), s.dimension()) - u * u.adjoint()),
                               Eigen::ComputeFullV);
  if (svd.singularValues().size() && svd.singularValues()(0) > 0.0)
    dirs.push_back(from_orthonormal(s, svd.matrixV().col(0)));
  for (const auto& d : dirs) {
    probe(d);
    for (double eps : {2.0, 1.0, 0.5, 0.2, 0.1, 0.05, 0.01}) {
      probe(one + eps * d);
      probe(one + eps * (0.5 * (d + d.adjoint())));
    }
  }
  side.holds = side.violations == 0;
}

void refute_side(const BlockStructure& s, const Matrix& t, SideVerification& side, Rng& rng) {
  const auto dirs = extremal_directions(s, t, rng);
  const AlgebraElement one = AlgebraElement::identity(s);
  side.refuted = !dirs.empty();
  side.refutation_excess = kInfinity;
  for (double p : {1.5, 1.9, 1.99}) {
    double best = -kInfinity;
    for (const auto& y : dirs)
      for (double eps : {1.0, 0.5, 0.2, 0.1, 0.05, 0.01}) {
        for (const AlgebraElement& x : {one + eps * y, y}) {
          const double lhs = l2(AlgebraElement::from_coordinates(s, t * x.coordinates()));
          best = std::max(best, lhs - lp_norm(x, p));
        }
      }
    side.refutation_excess = std::min(side.refutation_excess, best);
    if (!(best > 1e-12)) side.refuted = false;
  }
  if (dirs.empty()) side.refutation_excess = 0.0;
  side.holds = false;
}

void evaluate_side(const BlockStructure& s, const Matrix& t, SideVerification& side,
                   const CheckOptions& opt, Rng& rng) {
  side.lambda = spectral_gap(s, t);
  if (side.lambda < 1.0 - 1e-10) {
    side.witness_p = witness_p(s, side.lambda, opt.witness);
    if (side.witness_p) {
      side.best_constant = best_constant_cp(s, *side.witness_p, opt.witness.cp).value;
      verify_side(s, t, side, opt, rng);
      return;
    }
  }
  refute_side(s, t, side, rng);
}

}  // namespace

bool ConditionsReport::all_true() const {
  return improving_left && improving_right && fourier_strict_contraction && cesaro_to_haar &&
         nondegenerate;
}

bool ConditionsReport::all_false() const {
  return !improving_left && !improving_right && !fourier_strict_contraction && !cesaro_to_haar &&
         !nondegenerate;
}

ConditionsReport check_conditions(const QuantumGroup& g, const Functional& phi, const CheckOptions& opt) {
  if (!phi.is_state(1e-9)) throw DomainError("check_conditions: functional is not a state");
  const BlockStructure& s = g.structure();
  ConditionsReport r;
  r.samples = opt.samples;
  r.seed = opt.seed;
  Rng rng(opt.seed);

  // (3)
  r.fourier = fourier_contraction(g, phi);
  r.fourier_strict_contraction = r.fourier.max_nontrivial < 1.0 - opt.fourier_band;
  r.indeterminate = std::abs(r.fourier.max_nontrivial - 1.0) <= 1e-6 &&
                    std::abs(r.fourier.max_nontrivial - 1.0) > opt.fourier_band;

  // (1) and (2)
  const Matrix tl = left_convolution_matrix(g, phi);
  const Matrix tr = right_convolution_matrix(g, phi);
  evaluate_side(s, tl, r.left, opt, rng);
  evaluate_side(s, tr, r.right, opt, rng);
  r.improving_left = r.left.holds;
  r.improving_right = r.right.holds;
  r.lambda = r.right.lambda;
  r.gap_fourier_residual = std::max(std::abs(r.right.lambda - r.fourier.max_nontrivial),
                                    std::abs(r.left.lambda - r.fourier.max_nontrivial));

  // (4) and (5) for ψ = (φ ∘ S) ⋆ φ.
  const Functional psi = convolve(g, compose_antipode(g, phi), phi);
  const CesaroResult ces = cesaro_limit(g, psi);
  r.cesaro_to_haar = ces.is_haar;
  r.cesaro_distance = ces.haar_distance;
  r.fixed_space_dim = ces.fixed_space_dim;
  AlgebraElement acc = AlgebraElement::zero(s);
  Functional power = psi;
  for (int k = 1; k <= g.dimension() + 1; ++k) {
    acc += power.density();
    power = convolve(g, power, psi);
  }
  double lo = kInfinity, hi = 0.0;
  for (const auto& b : acc.blocks()) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(linalg::hermitian_part(b), Eigen::EigenvaluesOnly);
    lo = std::min(lo, es.eigenvalues()(0));
    hi = std::max(hi, es.eigenvalues()(es.eigenvalues().size() - 1));
  }
  r.nondegeneracy_margin = hi > 0.0 ? lo / hi : 0.0;
  r.nondegenerate = r.nondegeneracy_margin > 1e-9;

  // Agreement.
  std::ostringstream why;
  if (!(r.all_true() || r.all_false())) {
    why << "conditions disagree: (1)=" << r.improving_left << " (2)=" << r.improving_right
        << " (3)=" << r.fourier_strict_contraction << " (4)=" << r.cesaro_to_haar
        << " (5)=" << r.nondegenerate << "; ";
  }
  if (r.gap_fourier_residual > 1e-8)
    why << "spectral gap differs from max Fourier norm by " << r.gap_fourier_residual << "; ";
  if (r.left.violations + r.right.violations > 0)
    why << "sampling found " << r.left.violations + r.right.violations << " violations; ";
  if (r.left.lambda >= 1.0 - 1e-10 && !r.left.refuted) why << "(1) not refuted at lambda = 1; ";
  if (r.right.lambda >= 1.0 - 1e-10 && !r.right.refuted) why << "(2) not refuted at lambda = 1; ";
  r.disagreement = why.str();
  r.consistent = r.disagreement.empty() || r.indeterminate;
  return r;
}

// --- group corollaries --------------------------------------------------------

std::vector<int> ritter_subgroup(const CayleyTable& cayley, int identity, const std::vector<int>& support) {
  if (support.empty()) throw DomainError("ritter_check: empty support");
  validate_group_table(cayley, identity);
  for (int i : support)
    if (i < 0 || i >= static_cast<int>(cayley.size()))
      throw DomainError("ritter_check: support element " + std::to_string(i) + " is not a group element");
  const auto inv = group_inverses(cayley, identity);
  std::vector<int> gens;
  for (int i : support)
    for (int j : support) gens.push_back(cayley[inv[i]][j]);
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return generated_subgroup(cayley, identity, gens);
}

bool ritter_check(const CayleyTable& cayley, int identity, const std::vector<int>& support) {
  return ritter_subgroup(cayley, identity, support).size() == cayley.size();
}

SchurReport schur_check(const QuantumGroup& cstar, const Vector& phi, const CheckOptions& opt) {
  if (cstar.group_kind() != GroupKind::group_algebra)
    throw DomainError("schur_check: requires a group algebra C*(G)");
  const int e = cstar.group_identity();
  if (phi.size() != static_cast<Eigen::Index>(cstar.cayley().size()))
    throw ShapeError("schur_check: one value per group element expected");
  if (std::abs(phi(e) - 1.0) > 1e-10) throw DomainError("schur_check: phi(e) must be 1");
  const Functional state = cstar.functional_from_group_values(phi);
  if (!state.is_state(1e-9)) throw DomainError("schur_check: phi is not positive definite");
  SchurReport r;
  for (Eigen::Index g = 0; g < phi.size(); ++g)
    if (g != e) r.max_modulus = std::max(r.max_modulus, std::abs(phi(g)));
  r.strict = r.max_modulus < 1.0 - opt.fourier_band;
  r.conditions = check_conditions(cstar, state, opt);
  r.agrees = r.conditions.consistent &&
             (r.strict ? r.conditions.all_true() : r.conditions.all_false());
  return r;
}

}  // namespace qlp
