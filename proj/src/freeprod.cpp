#include "qlp/freeprod.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "qlp/fourier.hpp"
#include "qlp/linalg.hpp"
#include "qlp/random.hpp"

namespace qlp {
namespace {

// Structure constants are exact rationals for the classical examples; snap
// the rounding noise so that zero terms are not carried through products.
Scalar snap(Scalar z) {
  const double re = std::abs(z.real()) < 1e-14 ? 0.0 : z.real();
  const double im = std::abs(z.imag()) < 1e-14 ? 0.0 : z.imag();
  return {re, im};
}

Matrix state_gram(const BlockStructure& s, const Functional& phi) {
  const int n = s.dimension();
  Matrix g(n, n);
  for (int k = 0; k < n; ++k) {
    const AlgebraElement ek = AlgebraElement::matrix_unit(s, k).adjoint();
    for (int l = 0; l < n; ++l) g(k, l) = phi(ek * AlgebraElement::matrix_unit(s, l));
  }
  return g;
}

void phase_normalize(Matrix& letters) {
  for (Eigen::Index c = 0; c < letters.cols(); ++c) {
    const double top = letters.col(c).cwiseAbs().maxCoeff();
    for (Eigen::Index r = 0; r < letters.rows(); ++r) {
      const Scalar z = letters(r, c);
      if (std::abs(z) > 1e-8 * top) {
        letters.col(c) *= std::conj(z) / std::abs(z);
        break;
      }
    }
  }
  letters = letters.unaryExpr([](Scalar z) { return snap(z); });
}

// Letter-coordinate functional: (L^* G) y gives φ(e_k^* y) for every letter.
Matrix coefficient_map(const FreeComponent& c) {
  return c.letters.adjoint() * state_gram(c.structure, c.state);
}

void accumulate(const FreeProductSpec& spec, const Word& u, std::size_t ulen, const Word& v,
                std::size_t vstart, Scalar coef, std::map<Word, Scalar>& out) {
  if (coef == Scalar(0)) return;
  if (ulen == 0 || vstart == v.size() || u[ulen - 1].first != v[vstart].first) {
    Word w(u.begin(), u.begin() + ulen);
    w.insert(w.end(), v.begin() + vstart, v.end());
    out[std::move(w)] += coef;
    return;
  }
  const int i = u[ulen - 1].first;
  const int a = u[ulen - 1].second;
  const int b = v[vstart].second;
  accumulate(spec, u, ulen - 1, v, vstart + 1, coef * spec.merge_scalar(i, a, b), out);
  const Vector& merged = spec.merge_letters(i, a, b);
  for (Eigen::Index k = 0; k < merged.size(); ++k) {
    if (merged(k) == Scalar(0)) continue;
    Word w(u.begin(), u.begin() + ulen - 1);
    w.emplace_back(i, static_cast<int>(k));
    w.insert(w.end(), v.begin() + vstart + 1, v.end());
    out[std::move(w)] += coef * merged(k);
  }
}

// Letterwise expansion of w under per-letter coefficient matrices.
void expand_letters(const Word& w, Scalar coef, const std::vector<const Matrix*>& per_component,
                    bool reverse, std::map<Word, Scalar>& out) {
  std::vector<std::pair<Word, Scalar>> cur{{Word{}, coef}};
  const int len = static_cast<int>(w.size());
  for (int j = 0; j < len; ++j) {
    const auto& [i, a] = reverse ? w[len - 1 - j] : w[j];
    const Matrix& m = *per_component[i];
    std::vector<std::pair<Word, Scalar>> next;
    for (const auto& [word, c] : cur)
      for (Eigen::Index k = 0; k < m.rows(); ++k) {
        const Scalar z = m(k, a);
        if (z == Scalar(0)) continue;
        Word nw = word;
        nw.emplace_back(i, static_cast<int>(k));
        next.emplace_back(std::move(nw), c * z);
      }
    cur = std::move(next);
  }
  for (auto& [word, c] : cur) out[std::move(word)] += c;
}

}  // namespace

FreeComponent make_free_component(const BlockStructure& s, std::optional<Functional> state,
                                  const Matrix* map) {
  FreeComponent c{s, state ? *state : trace_functional(s), Matrix()};
  if (!(c.state.structure() == s)) throw ShapeError("free component: state over a different algebra");
  if (!c.state.is_faithful_state(1e-10)) throw ValidationError("free component: state is not faithful");
  const int n = s.dimension();
  const Matrix g = state_gram(s, c.state);
  const Matrix row = c.state.values().transpose();
  const Matrix kernel = linalg::null_space(row);
  const Matrix m = kernel.adjoint() * g * kernel;
  Matrix letters = kernel * linalg::hermitian_power(linalg::hermitian_part(m), -0.5);
  if (map) {
    if (map->rows() != n || map->cols() != n) throw ShapeError("free component: map has the wrong shape");
    const Matrix t = letters.adjoint() * g * (*map) * letters;
    Eigen::JacobiSVD<Matrix> svd(t, Eigen::ComputeFullU);
    letters = letters * svd.matrixU();
  }
  phase_normalize(letters);
  c.letters = letters;
  return c;
}

FreeProductSpec::FreeProductSpec(std::vector<FreeComponent> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw DomainError("free product: no components");
  for (const auto& comp : components_) {
    const BlockStructure& s = comp.structure;
    const int letters = comp.letter_count();
    m_ = std::max(m_, letters);
    const Matrix coef = coefficient_map(comp);
    // Orthonormality in L₂(φ) and centering.
    const Matrix gram = coef * comp.letters;
    if ((gram - Matrix::Identity(letters, letters)).cwiseAbs().maxCoeff() > 1e-10)
      throw ValidationError("free component: letters are not orthonormal");
    std::vector<AlgebraElement> e;
    for (int k = 0; k < letters; ++k) {
      e.push_back(AlgebraElement::from_coordinates(s, comp.letters.col(k)));
      if (std::abs(comp.state(e.back())) > 1e-10) throw ValidationError("free component: letter not centered");
      c_ = std::max(c_, std::pow(lp_norm(e.back(), kInfinity), 2));
    }
    Matrix scalar(letters, letters);
    std::vector<Vector> merge(static_cast<std::size_t>(letters) * letters);
    Matrix adj(letters, letters);
    for (int a = 0; a < letters; ++a) {
      adj.col(a) = (coef * e[a].adjoint().coordinates()).unaryExpr([](Scalar z) { return snap(z); });
      for (int b = 0; b < letters; ++b) {
        const AlgebraElement p = e[a] * e[b];
        scalar(a, b) = snap(comp.state(p));
        merge[a * letters + b] = (coef * p.coordinates()).unaryExpr([](Scalar z) { return snap(z); });
      }
    }
    scalar_.push_back(scalar);
    merge_.push_back(std::move(merge));
    adjoint_.push_back(adj);
  }
}

const Vector& FreeProductSpec::merge_letters(int i, int a, int b) const {
  return merge_[i][a * components_[i].letter_count() + b];
}

std::vector<Word> FreeProductSpec::words(int max_length) const {
  std::vector<Word> out;
  std::vector<Word> frontier{Word{}};
  for (int r = 1; r <= max_length; ++r) {
    std::vector<Word> next;
    for (const auto& w : frontier)
      for (int i = 0; i < n(); ++i) {
        if (!w.empty() && w.back().first == i) continue;
        for (int k = 0; k < components_[i].letter_count(); ++k) {
          Word nw = w;
          nw.emplace_back(i, k);
          next.push_back(std::move(nw));
        }
      }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

// --- FreeElement ----------------------------------------------------------------

FreeElement FreeElement::identity() { return word(Word{}); }

FreeElement FreeElement::word(const Word& w, Scalar coefficient) {
  FreeElement e;
  e.terms[w] = coefficient;
  return e;
}

Scalar FreeElement::coefficient(const Word& w) const {
  auto it = terms.find(w);
  return it == terms.end() ? Scalar(0) : it->second;
}

int FreeElement::length() const {
  int len = 0;
  for (const auto& [w, c] : terms)
    if (c != Scalar(0)) len = std::max(len, static_cast<int>(w.size()));
  return len;
}

FreeElement FreeElement::homogeneous(int r) const {
  FreeElement out;
  for (const auto& [w, c] : terms)
    if (static_cast<int>(w.size()) == r) out.terms[w] = c;
  return out;
}

double FreeElement::coefficient_norm() const {
  double s = 0.0;
  for (const auto& [w, c] : terms) s += std::norm(c);
  return std::sqrt(s);
}

FreeElement FreeElement::pruned(double eps) const {
  FreeElement out;
  for (const auto& [w, c] : terms)
    if (std::abs(c) > eps) out.terms[w] = c;
  return out;
}

FreeElement& FreeElement::operator+=(const FreeElement& o) {
  for (const auto& [w, c] : o.terms) terms[w] += c;
  return *this;
}

FreeElement operator-(FreeElement a, const FreeElement& b) {
  for (const auto& [w, c] : b.terms) a.terms[w] -= c;
  return a;
}

FreeElement operator*(Scalar s, FreeElement a) {
  for (auto& [w, c] : a.terms) c *= s;
  return a;
}

FreeElement free_multiply(const FreeProductSpec& spec, const FreeElement& u, const FreeElement& v) {
  FreeElement out;
  for (const auto& [wu, cu] : u.terms) {
    if (cu == Scalar(0)) continue;
    for (const auto& [wv, cv] : v.terms) {
      if (cv == Scalar(0)) continue;
      accumulate(spec, wu, wu.size(), wv, 0, cu * cv, out.terms);
    }
  }
  return out;
}

FreeElement free_adjoint(const FreeProductSpec& spec, const FreeElement& u) {
  std::vector<const Matrix*> adj;
  for (int i = 0; i < spec.n(); ++i) adj.push_back(&spec.letter_adjoint(i));
  FreeElement out;
  for (const auto& [w, c] : u.terms) expand_letters(w, std::conj(c), adj, true, out.terms);
  return out;
}

Scalar free_trace(const FreeElement& u) { return u.coefficient(Word{}); }

Scalar free_inner(const FreeElement& u, const FreeElement& v) {
  Scalar s = 0.0;
  for (const auto& [w, c] : u.terms) s += std::conj(c) * v.coefficient(w);
  return s;
}

FreeElement free_embed(const FreeProductSpec& spec, int component, const AlgebraElement& x) {
  const FreeComponent& comp = spec.component(component);
  if (!(x.structure() == comp.structure)) throw ShapeError("free_embed: element of another algebra");
  FreeElement out;
  out.terms[Word{}] = snap(comp.state(x));
  const Vector coef = coefficient_map(comp) * x.coordinates();
  for (Eigen::Index k = 0; k < coef.size(); ++k)
    if (snap(coef(k)) != Scalar(0)) out.terms[Word{{component, static_cast<int>(k)}}] = coef(k);
  return out;
}

double free_norm_even(const FreeProductSpec& spec, const FreeElement& u, int q) {
  if (q != 2 && q != 4 && q != 6 && q != 8)
    throw DomainError("free_norm_even: q must be one of 2, 4, 6, 8");
  if (q == 2) return std::sqrt(std::max(0.0, free_inner(u, u).real()));
  const FreeElement v = free_multiply(spec, free_adjoint(spec, u), u);
  double moment = 0.0;
  if (q == 4) {
    moment = free_inner(v, v).real();
  } else {
    const FreeElement v2 = free_multiply(spec, v, v);
    moment = q == 6 ? free_inner(v, v2).real() : free_inner(v2, v2).real();
  }
  return std::pow(std::max(0.0, moment), 1.0 / q);
}

// --- FreeMap ----------------------------------------------------------------------

FreeMap::FreeMap(const FreeProductSpec& spec, std::vector<Matrix> maps) : maps_(std::move(maps)) {
  if (static_cast<int>(maps_.size()) != spec.n())
    throw ShapeError("FreeMap: one map per component expected");
  for (int i = 0; i < spec.n(); ++i) {
    const FreeComponent& comp = spec.component(i);
    const BlockStructure& s = comp.structure;
    const Matrix& t = maps_[i];
    if (t.rows() != s.dimension() || t.cols() != s.dimension())
      throw ShapeError("FreeMap: map " + std::to_string(i) + " has the wrong shape");
    const Vector one = s.unit();
    if ((t * one - one).cwiseAbs().maxCoeff() > 1e-10)
      throw ValidationError("FreeMap: map " + std::to_string(i) + " is not unital");
    const Vector values = comp.state.values();
    if ((t.transpose() * values - values).cwiseAbs().maxCoeff() > 1e-10)
      throw ValidationError("FreeMap: map " + std::to_string(i) + " does not preserve the state");
    Matrix lm = (coefficient_map(comp) * t * comp.letters).unaryExpr([](Scalar z) { return snap(z); });
    const RealVector sv = lm.size() ? RealVector(Eigen::JacobiSVD<Matrix>(lm).singularValues()) : RealVector();
    if (sv.size()) lambda_ = std::max(lambda_, sv(0));
    letter_.push_back(std::move(lm));
    singular_.push_back(sv);
  }
}

FreeElement free_map_apply(const FreeProductSpec& spec, const FreeMap& f, const FreeElement& u, bool adjoint) {
  if (static_cast<int>(f.maps().size()) != spec.n()) throw ShapeError("free_map_apply: spec mismatch");
  std::vector<Matrix> mats;
  for (int i = 0; i < spec.n(); ++i) {
    const Matrix& m = f.letter_matrix(i);
    if (m.rows() != spec.component(i).letter_count()) throw ShapeError("free_map_apply: spec mismatch");
    mats.push_back(adjoint ? Matrix(m.adjoint()) : m);
  }
  std::vector<const Matrix*> ptrs;
  for (const auto& m : mats) ptrs.push_back(&m);
  FreeElement out;
  for (const auto& [w, c] : u.terms) expand_letters(w, c, ptrs, false, out.terms);
  return out;
}

std::optional<int> choose_q(double lambda, double c, int n, int m) {
  if (!(lambda >= 0.0) || lambda >= 1.0) throw DomainError("choose_q: lambda must lie in [0, 1)");
  if (c < 1.0 || n < 1 || m < 1) throw DomainError("choose_q: requires c >= 1, n >= 1, m >= 1");
  const double cnm = c * n * m;
  for (int q = 4; q <= 64; q += 2)
    if (lambda * std::pow(cnm, 0.5 - 1.0 / q) <= 1.0 / (q - 1)) return q;
  return std::nullopt;
}

// --- verification --------------------------------------------------------------------

namespace {

FreeElement random_free_element(const FreeProductSpec& spec, const std::vector<Word>& words, Rng& rng) {
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unif;
  const double keep = std::min(1.0, 64.0 / std::max<std::size_t>(1, words.size()));
  FreeElement x;
  x.terms[Word{}] = Scalar(gauss(rng), gauss(rng));
  for (const auto& w : words)
    if (keep >= 1.0 || unif(rng) < keep) x.terms[w] = Scalar(gauss(rng), gauss(rng));
  (void)spec;
  return x;
}

}  // namespace

FreeElement random_free_element(const FreeProductSpec& spec, int max_length, std::uint64_t seed) {
  Rng rng(seed);
  return random_free_element(spec, spec.words(max_length), rng);
}

FreeVerification verify_free_improving(const FreeProductSpec& spec, const FreeMap& f, std::optional<int> q,
                                       int max_length, int samples, std::uint64_t seed) {
  const double lambda = f.lambda();
  if (lambda >= 1.0) throw DomainError("verify_free_improving: lambda >= 1, the bound needs lambda < 1");
  const double cnm = spec.c() * spec.n() * spec.m();
  const auto auto_q = choose_q(lambda, std::max(1.0, spec.c()), spec.n(), std::max(1, spec.m()));
  if (!q) q = auto_q;
  if (!q) throw DomainError("verify_free_improving: no even q in [4, 64] is admissible");
  if (*q % 2 != 0 || *q < 4) throw DomainError("verify_free_improving: q must be even and at least 4");
  if (lambda * std::pow(cnm, 0.5 - 1.0 / *q) > 1.0 / (*q - 1))
    throw DomainError("verify_free_improving: q = " + std::to_string(*q) + " is not admissible");
  if (*q > 8) throw DomainError("verify_free_improving: exact moments are available only for q <= 8");
  if (max_length < 0) throw DomainError("verify_free_improving: negative word length");

  FreeVerification rep;
  rep.q = *q;
  rep.max_length = max_length;
  rep.samples = samples;
  rep.seed = seed;
  rep.lambda = lambda;
  Rng rng(seed);
  const std::vector<Word> words = spec.words(max_length);
  auto record = [&](double slack, double bound, const FreeElement& x, const char* what) {
    if (slack > bound) {
      ++rep.violations;
      if (!rep.witness) {
        rep.witness = x;
        rep.witness_check = what;
      }
    }
  };
  for (int s = 0; s < samples; ++s) {
    const FreeElement x = random_free_element(spec, words, rng);
    const FreeElement rx = free_map_apply(spec, f, x, true);
    const double slack = free_norm_even(spec, rx, *q) - free_norm_even(spec, x, 2);
    rep.max_slack = std::max(rep.max_slack, slack);
    record(slack, 1e-8, x, "norm");
    for (int r = 1; r <= max_length; ++r) {
      const FreeElement y = x.homogeneous(r);
      const double ny = free_norm_even(spec, y, 2);
      const double claim = free_norm_even(spec, y, *q) - std::pow(cnm, r * (0.5 - 1.0 / *q)) * ny;
      rep.max_claim_slack = std::max(rep.max_claim_slack, claim);
      record(claim, 1e-8, x, "claim");
      const double contraction = free_norm_even(spec, rx.homogeneous(r), 2) - std::pow(lambda, r) * ny;
      rep.max_contraction_slack = std::max(rep.max_contraction_slack, contraction);
      record(contraction, 1e-9, x, "contraction");
    }
  }
  return rep;
}

// --- dual free product convolution -------------------------------------------------------

namespace {

// φ₁ * φ₂ on elements of word length ≤ 2; letters of different components are
// free, so a two-letter word evaluates to the product of the letter values.
Scalar free_state_short(const FreeProductSpec& spec, const std::vector<Vector>& letter_values,
                        const FreeElement& x) {
  Scalar s = 0.0;
  for (const auto& [w, c] : x.terms) {
    if (w.size() > 2) throw DomainError("free state: words longer than 2 are not supported");
    Scalar v = c;
    for (const auto& [i, k] : w) v *= letter_values[i](k);
    s += v;
  }
  (void)spec;
  return s;
}

}  // namespace

double free_convolution_residual(const QuantumGroup& g1, const Functional& phi1, const QuantumGroup& g2,
                                 const Functional& phi2) {
  const std::vector<const QuantumGroup*> groups{&g1, &g2};
  const std::vector<const Functional*> states{&phi1, &phi2};
  std::vector<FreeComponent> comps;
  std::vector<Matrix> maps;
  for (int i = 0; i < 2; ++i) {
    comps.push_back(make_free_component(groups[i]->structure()));
    maps.push_back(right_convolution_matrix(*groups[i], *states[i]));
  }
  const FreeProductSpec spec(comps);
  const FreeMap f(spec, maps);

  // Δ(e_a) = Σ_k E_k ⊗ y_{a,k} over the matrix units E_k; the letter values
  // of φ_i and the embeddings of E_k and y_{a,k}.
  std::vector<Vector> letter_values(2);
  std::vector<std::vector<FreeElement>> unit_embed(2);
  std::vector<std::vector<std::vector<FreeElement>>> right_embed(2);
  for (int i = 0; i < 2; ++i) {
    const FreeComponent& comp = spec.component(i);
    const BlockStructure& s = comp.structure;
    const int n = s.dimension();
    letter_values[i].resize(comp.letter_count());
    for (int k = 0; k < comp.letter_count(); ++k)
      letter_values[i](k) = (*states[i])(AlgebraElement::from_coordinates(s, comp.letters.col(k)));
    for (int k = 0; k < n; ++k) unit_embed[i].push_back(free_embed(spec, i, AlgebraElement::matrix_unit(s, k)));
    right_embed[i].resize(comp.letter_count());
    for (int a = 0; a < comp.letter_count(); ++a) {
      const Vector d = groups[i]->apply_delta(Vector(comp.letters.col(a)));
      for (int k = 0; k < n; ++k)
        right_embed[i][a].push_back(free_embed(spec, i, AlgebraElement::from_coordinates(s, d.segment(k * n, n))));
    }
  }

  double residual = 0.0;
  auto compare = [&](const FreeElement& lhs, const Word& w) {
    const FreeElement diff = lhs - free_map_apply(spec, f, FreeElement::word(w));
    for (const auto& [word, c] : diff.terms) residual = std::max(residual, std::abs(c));
  };
  // Length 0 and 1.
  compare(FreeElement::identity(), Word{});
  for (int i = 0; i < 2; ++i)
    for (int a = 0; a < spec.component(i).letter_count(); ++a) {
      FreeElement lhs;
      for (std::size_t k = 0; k < unit_embed[i].size(); ++k)
        lhs += free_state_short(spec, letter_values, unit_embed[i][k]) * right_embed[i][a][k];
      compare(lhs, Word{{i, a}});
    }
  // Length 2: (φ ⊗ ι)(Δ(e_a)Δ(e_b)) = Σ φ(E_k E_l) y_{a,k} y_{b,l}.
  for (const auto& w : spec.words(2)) {
    if (w.size() != 2) continue;
    const auto [i, a] = w[0];
    const auto [j, b] = w[1];
    FreeElement lhs;
    for (std::size_t k = 0; k < unit_embed[i].size(); ++k)
      for (std::size_t l = 0; l < unit_embed[j].size(); ++l) {
        const Scalar val = free_state_short(spec, letter_values,
                                            free_multiply(spec, unit_embed[i][k], unit_embed[j][l]));
        if (std::abs(val) < 1e-15) continue;
        lhs += val * free_multiply(spec, right_embed[i][a][k], right_embed[j][b][l]);
      }
    compare(lhs, w);
  }
  return residual;
}

}  // namespace qlp
