#include "qlp/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qlp/io.hpp"
#include "qlp/linalg.hpp"
#include "qlp/random.hpp"

namespace qlp::cli {
namespace {

using io::Json;

struct Outcome {
  int code = kOk;
  Json result;
  std::string text;
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string num(Scalar z) {
  // Display only: rounding noise below 1e-14 is shown as zero.
  if (std::abs(z.real()) < 1e-14) z.real(0.0);
  if (std::abs(z.imag()) < 1e-14) z.imag(0.0);
  if (z.imag() == 0.0) return num(z.real());
  return num(z.real()) + (z.imag() < 0 ? " - " : " + ") + num(std::abs(z.imag())) + "i";
}

const char* tf(bool b) { return b ? "TRUE" : "FALSE"; }

void need_inputs(const RunConfig& cfg, std::size_t lo, std::size_t hi, const char* usage) {
  if (cfg.inputs.size() < lo || cfg.inputs.size() > hi)
    throw io::SchemaError(std::string("usage: qlp ") + usage);
}

QuantumGroup load_group(const std::string& path) {
  try {
    return io::parse_quantum_group(io::read_json_file(path));
  } catch (const io::SchemaError& e) {
    throw io::SchemaError(path + ": " + e.what());
  }
}

std::string text_values(const Vector& v) {
  std::string s;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? ", " : "") + num(v(i));
  return "[" + s + "]";
}

std::string text_matrix(const Matrix& m, const std::string& indent) {
  std::string s;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    s += indent + "[";
    for (Eigen::Index c = 0; c < m.cols(); ++c) s += (c ? ", " : "") + num(m(r, c));
    s += "]\n";
  }
  return s;
}

// --- commands -----------------------------------------------------------------------

Outcome cmd_validate(const RunConfig& cfg) {
  need_inputs(cfg, 1, 1, "validate <qg.json>");
  const Json j = io::read_json_file(cfg.inputs[0]);
  Outcome o;
  ValidationReport report;
  std::string error;
  if (j.is_object() && j.contains("cayley")) {
    try {
      report = io::parse_quantum_group(j).validation();
    } catch (const ValidationError& e) {
      error = e.what();
    }
  } else {
    const BlockStructure s = io::parse_structure(j);
    const Matrix delta = io::parse_matrix(j.contains("delta") ? j.at("delta") : Json(), "delta");
    report = validate_quantum_group(s.dims(), delta);
    if (report.ok() && j.contains("weights")) {
      try {
        QuantumGroup("A", s.dims(), s.weights(), delta);
      } catch (const ValidationError& e) {
        error = e.what();
      }
    }
  }
  o.result = io::to_json(report);
  std::ostringstream t;
  for (const auto& c : report.checks)
    t << (c.passed ? "  ok    " : "  FAIL  ") << c.name << "  residual " << num(c.residual)
      << (c.detail.empty() ? "" : "  (" + c.detail + ")") << "\n";
  if (const ValidationCheck* f = report.first_failure()) {
    error = f->name + " residual " + num(f->residual);
    if (!f->detail.empty() && f->detail.rfind(f->name, 0) != 0) error += ": " + f->detail;
  }
  if (!error.empty()) {
    o.code = kError;
    o.result["error"] = error;
    t << "invalid: " << error;
  } else {
    t << "valid finite quantum group";
  }
  o.text = t.str();
  return o;
}

Outcome cmd_haar(const RunConfig& cfg) {
  need_inputs(cfg, 1, 1, "haar <qg.json>");
  const QuantumGroup g = load_group(cfg.inputs[0]);
  Outcome o;
  o.result["structure"] = io::to_json(g.structure());
  o.result["values"] = io::to_json(g.haar().values());
  o.result["density"] = io::to_json(g.haar().density());
  std::ostringstream t;
  t << g.name() << ": dimension " << g.dimension() << "\n";
  for (int b = 0; b < g.structure().block_count(); ++b)
    t << "  block " << b << " (M_" << g.structure().dim(b) << ")  h(e_aa) = " << num(g.structure().weight(b)) << "\n";
  t << "Haar state is tracial with these block weights";
  o.text = t.str();
  return o;
}

Outcome cmd_irreps(const RunConfig& cfg) {
  need_inputs(cfg, 1, 1, "irreps <qg.json>");
  const QuantumGroup g = load_group(cfg.inputs[0]);
  Outcome o;
  Json list = Json::array();
  std::ostringstream t;
  int total = 0;
  for (std::size_t a = 0; a < g.irreps().size(); ++a) {
    const Corepresentation& u = g.irreps()[a];
    total += u.dim * u.dim;
    Json uj;
    uj["dim"] = u.dim;
    Json entries = Json::array();
    for (const auto& e : u.entries) entries.push_back(io::to_json(e.coordinates()));
    uj["entries"] = std::move(entries);
    list.push_back(std::move(uj));
    t << "  alpha " << a << ": dimension " << u.dim << "\n";
    for (int i = 0; i < u.dim; ++i)
      for (int k = 0; k < u.dim; ++k)
        t << "    u_" << i << k << " = " << text_values(u(i, k).coordinates()) << "\n";
  }
  o.result["irreps"] = std::move(list);
  o.result["sum_dim_squared"] = total;
  t << g.irreps().size() << " irreducible corepresentations, sum of squared dimensions " << total;
  o.text = t.str();
  return o;
}

Outcome cmd_fourier(const RunConfig& cfg) {
  need_inputs(cfg, 2, 2, "fourier <qg.json> <state.json> [--element]");
  const QuantumGroup g = load_group(cfg.inputs[0]);
  const Json j = io::read_json_file(cfg.inputs[1]);
  const FourierCoefficients fc = cfg.element ? fourier_transform(g, io::parse_element(j, g.structure()))
                                             : fourier_transform(g, io::parse_state(j, g));
  Outcome o;
  o.result = io::to_json(fc);
  std::vector<double> norms;
  std::ostringstream t;
  for (std::size_t a = 0; a < fc.blocks.size(); ++a) {
    norms.push_back(linalg::operator_norm(fc.blocks[a]));
    t << "  alpha " << a << " (dim " << fc.blocks[a].rows() << ")  operator norm " << num(norms.back()) << "\n"
      << text_matrix(fc.blocks[a], "    ");
  }
  o.result["operator_norms"] = norms;
  o.result["dual_l2_norm"] = dual_l2_norm(g, fc);
  t << "dual L2 norm " << num(dual_l2_norm(g, fc));
  o.text = t.str();
  return o;
}

CheckOptions check_options(const RunConfig& cfg) {
  CheckOptions opt;
  opt.samples = cfg.samples.value_or(10000);
  opt.seed = cfg.seed;
  if (cfg.tol) opt.slack = *cfg.tol;
  return opt;
}

std::string conditions_text(const ConditionsReport& r) {
  std::ostringstream t;
  t << "  (1) ||phi * x||_2 <= ||x||_p for some p < 2 : " << tf(r.improving_left) << "\n"
    << "  (2) ||x * phi||_2 <= ||x||_p for some p < 2 : " << tf(r.improving_right) << "\n"
    << "  (3) ||phi^(alpha)|| < 1 for alpha != 1      : " << tf(r.fourier_strict_contraction) << "\n"
    << "  (4) Cesaro means of psi^k converge to h      : " << tf(r.cesaro_to_haar) << "\n"
    << "  (5) psi is non-degenerate                    : " << tf(r.nondegenerate) << "\n"
    << "  lambda = " << num(r.lambda) << " (left " << num(r.left.lambda) << ", right " << num(r.right.lambda)
    << ", max Fourier norm " << num(r.fourier.max_nontrivial) << ")\n";
  for (const auto* side : {&r.left, &r.right}) {
    const char* name = side == &r.left ? "left " : "right";
    if (side->witness_p) {
      t << "  " << name << ": witness p = " << num(*side->witness_p) << ", c_p = " << num(side->best_constant)
        << ", " << side->samples << " samples, max slack " << num(side->max_slack) << ", violations "
        << side->violations << "\n";
    } else {
      t << "  " << name << ": no witness p; counterexamples for p in {1.5, 1.9, 1.99}: "
        << (side->refuted ? "found" : "not found") << " (excess " << num(side->refutation_excess) << ")\n";
    }
  }
  t << "  Cesaro distance to h " << num(r.cesaro_distance) << ", fixed space dimension " << r.fixed_space_dim
    << ", non-degeneracy margin " << num(r.nondegeneracy_margin) << "\n"
    << "  seed " << r.seed << ", samples " << r.samples << "\n";
  return t.str();
}

int conditions_code(const ConditionsReport& r, std::string& summary) {
  if (!r.consistent) {
    summary = "inconsistent: " + r.disagreement;
    return kInconsistent;
  }
  if (r.all_true()) {
    summary = "all five conditions TRUE, \xce\xbb=" + num(r.lambda) + ", witness p=" + num(*r.right.witness_p);
    return kOk;
  }
  if (r.all_false()) {
    summary = "not improving; |\xcf\x86\xcc\x82| = " + num(r.fourier.max_nontrivial) + " at irrep k=" +
              std::to_string(r.fourier.argmax);
    return kNegative;
  }
  summary = "numerically indeterminate: max nontrivial Fourier norm " + num(r.fourier.max_nontrivial);
  return kNegative;
}

Outcome cmd_improve(const RunConfig& cfg) {
  need_inputs(cfg, 2, 2, "improve <qg.json> <state.json>");
  const QuantumGroup g = load_group(cfg.inputs[0]);
  const Functional phi = io::parse_state(io::read_json_file(cfg.inputs[1]), g);
  const ConditionsReport r = check_conditions(g, phi, check_options(cfg));
  Outcome o;
  std::string summary;
  o.code = conditions_code(r, summary);
  o.result = io::to_json(r);
  o.result["summary"] = summary;
  o.text = g.name() + "\n" + conditions_text(r) + summary;
  return o;
}

Outcome cmd_ritter(const RunConfig& cfg) {
  need_inputs(cfg, 1, 1, "ritter <group.json> --support i,j,...");
  int e = 0;
  const CayleyTable table = io::parse_cayley(io::read_json_file(cfg.inputs[0]), &e);
  const std::vector<int> sub = ritter_subgroup(table, e, cfg.support);
  const bool whole = sub.size() == table.size();
  // Condition (3) for the uniform measure on the support.
  const QuantumGroup g = build_function_algebra(table, e);
  Vector values = Vector::Zero(table.size());
  for (int s : cfg.support) values(s) += 1.0 / cfg.support.size();
  const FourierContraction fc = fourier_contraction(g, g.functional_from_group_values(values));
  const bool strict = fc.max_nontrivial < 1.0 - 1e-9;
  Outcome o;
  o.result["support"] = cfg.support;
  o.result["generated_subgroup"] = sub;
  o.result["generates"] = whole;
  o.result["max_nontrivial_fourier_norm"] = fc.max_nontrivial;
  o.result["agrees"] = whole == strict;
  std::ostringstream t;
  t << "subgroup generated by {i^-1 j : i, j in support} has order " << sub.size() << " of " << table.size()
    << "\nmax nontrivial Fourier norm of the uniform measure " << num(fc.max_nontrivial) << "\n"
    << (whole ? "improving: the support generates the group" : "not improving: proper subgroup");
  o.text = t.str();
  o.code = whole != strict ? kInconsistent : (whole ? kOk : kNegative);
  return o;
}

Outcome cmd_schur(const RunConfig& cfg) {
  need_inputs(cfg, 2, 2, "schur <group.json> <values.json>");
  int e = 0;
  const CayleyTable table = io::parse_cayley(io::read_json_file(cfg.inputs[0]), &e);
  const Json vj = io::read_json_file(cfg.inputs[1]);
  if (!vj.is_object() || !vj.contains("group_values")) throw io::SchemaError("values: missing \"group_values\"");
  const Json& arr = vj.at("group_values");
  if (!arr.is_array() || arr.size() != table.size())
    throw io::SchemaError("group_values: expected " + std::to_string(table.size()) + " entries");
  Vector values(table.size());
  for (std::size_t i = 0; i < arr.size(); ++i) values(i) = io::parse_scalar(arr[i], "group_values");
  const QuantumGroup g = build_group_algebra(table, e);
  const SchurReport r = schur_check(g, values, check_options(cfg));
  Outcome o;
  o.result["strict"] = r.strict;
  o.result["max_modulus"] = r.max_modulus;
  o.result["agrees"] = r.agrees;
  o.result["conditions"] = io::to_json(r.conditions);
  std::ostringstream t;
  t << "max |phi(g)| over g != e: " << num(r.max_modulus) << " (" << (r.strict ? "< 1" : "= 1") << ")\n"
    << conditions_text(r.conditions)
    << (r.agrees ? (r.strict ? "improving Schur multiplier" : "not improving")
                 : "criterion and five-condition report disagree");
  o.text = t.str();
  o.code = !r.agrees ? kInconsistent : (r.strict ? kOk : kNegative);
  return o;
}

Outcome cmd_cesaro(const RunConfig& cfg) {
  need_inputs(cfg, 2, 2, "cesaro <qg.json> <state.json>");
  const QuantumGroup g = load_group(cfg.inputs[0]);
  const Functional psi = io::parse_state(io::read_json_file(cfg.inputs[1]), g);
  const CesaroResult r = cesaro_limit(g, psi, cfg.tol.value_or(default_tolerances().spectral));
  Outcome o;
  o.result = io::to_json(r);
  std::ostringstream t;
  t << "Cesaro limit on the basis: " << text_values(r.limit.values()) << "\n"
    << "distance to h " << num(r.haar_distance) << ", fixed space dimension " << r.fixed_space_dim << "\n"
    << (r.is_haar ? "limit is the Haar state (psi non-degenerate)" : "limit is not the Haar state");
  o.text = t.str();
  o.code = r.is_haar ? kOk : kNegative;
  return o;
}

Outcome cmd_hopf_image(const RunConfig& cfg) {
  need_inputs(cfg, 2, 3, "hopf-image <qg.json> <hom.json> [state.json]");
  const QuantumGroup g = load_group(cfg.inputs[0]);
  const StarHom pi = io::parse_hom(io::read_json_file(cfg.inputs[1]), g);
  const Functional phi = cfg.inputs.size() == 3 ? io::parse_state(io::read_json_file(cfg.inputs[2]), pi.target)
                                                : trace_functional(pi.target);
  const HopfImageData r = hopf_image(g, pi, phi, cfg.tol.value_or(1e-7));
  Outcome o;
  o.result = io::to_json(r);
  std::ostringstream t;
  t << "kernel dimensions:";
  for (int d : r.kernel_dims) t << " " << d;
  t << "\nstabilized after " << r.stabilization_index << " step(s); ideal dimension " << r.ideal.cols()
    << "\nquotient dimension " << (r.quotient ? r.quotient->dimension() : 0) << ", blocks kept:";
  for (int b : r.kept_blocks) t << " " << b;
  t << "\neta = " << text_values(r.eta.values()) << "\n"
    << "agreement with the Cesaro limit " << num(r.eta_agreement) << ", idempotence residual "
    << num(r.idempotent_residual);
  o.text = t.str();
  return o;
}

Outcome cmd_freeprod_verify(const RunConfig& cfg) {
  if (cfg.components.empty() || cfg.components.size() != cfg.maps.size())
    throw io::SchemaError("usage: qlp freeprod verify --components a.json b.json --maps t1.json t2.json");
  std::vector<FreeComponent> comps;
  std::vector<Matrix> maps;
  for (std::size_t i = 0; i < cfg.components.size(); ++i) {
    const io::FreeComponentInput in = io::parse_free_component(io::read_json_file(cfg.components[i]));
    const Matrix t = io::parse_free_map(io::read_json_file(cfg.maps[i]), in);
    comps.push_back(make_free_component(in.structure, in.state, &t));
    maps.push_back(t);
  }
  const FreeProductSpec spec(comps);
  const FreeMap f(spec, maps);
  std::optional<int> q;
  if (cfg.q != "auto") {
    try {
      q = std::stoi(cfg.q);
    } catch (const std::exception&) {
      throw io::SchemaError("--q: expected an even integer or \"auto\"");
    }
  }
  const FreeVerification r =
      verify_free_improving(spec, f, q, cfg.length, cfg.samples.value_or(200), cfg.seed);
  Outcome o;
  o.result = io::to_json(r);
  o.result["n"] = spec.n();
  o.result["m"] = spec.m();
  o.result["c"] = spec.c();
  std::ostringstream t;
  t << "components " << spec.n() << ", m = " << spec.m() << ", c = " << num(spec.c()) << ", lambda = "
    << num(r.lambda) << ", q = " << r.q << "\n"
    << r.samples << " samples of word length <= " << r.max_length << ", seed " << r.seed << "\n"
    << "max slack ||T* x||_q - ||x||_2: " << num(r.max_slack) << "\n"
    << "max claim slack: " << num(r.max_claim_slack) << "\n"
    << "max length-r contraction slack: " << num(r.max_contraction_slack) << "\n"
    << (r.passed() ? "no violations" : std::to_string(r.violations) + " violations (" + r.witness_check + ")");
  o.text = t.str();
  o.code = r.passed() ? kOk : kInconsistent;
  return o;
}

Outcome cmd_selftest(const RunConfig& cfg) {
  std::ostringstream t;
  const bool ok = selftest(t, cfg.seed);
  Outcome o;
  o.text = t.str();
  o.result["passed"] = ok;
  o.code = ok ? kOk : kInconsistent;
  return o;
}

void emit(const RunConfig& cfg, const Outcome& o, std::ostream& out) {
  std::string body;
  if (cfg.report == "json") {
    Json top;
    top["command"] = cfg.subcommand;
    top["inputs"] = cfg.inputs;
    top["seed"] = cfg.seed;
    top["samples"] = cfg.samples ? Json(*cfg.samples) : Json(nullptr);
    top["tolerance"] = cfg.tol ? Json(*cfg.tol) : Json(nullptr);
    top["exit_code"] = o.code;
    top["result"] = o.result;
    body = top.dump(2) + "\n";
  } else {
    body = o.text + "\n";
  }
  if (cfg.output.empty()) {
    out << body;
  } else {
    std::ofstream f(cfg.output);
    if (!f) throw io::SchemaError(cfg.output + ": cannot write report");
    f << body;
  }
}

// --- selftest suites -------------------------------------------------------------------

struct Suite {
  const char* name;
  std::function<std::string(Rng&)> run;  // empty string on success
};

std::vector<QuantumGroup> test_groups() {
  std::vector<QuantumGroup> gs;
  gs.push_back(build_function_algebra(cyclic_group(3), 0, "C(Z3)"));
  gs.push_back(build_function_algebra(symmetric_group(3), 0, "C(S3)"));
  gs.push_back(build_group_algebra(symmetric_group(3), 0, "C*(S3)"));
  gs.push_back(tensor_product(build_function_algebra(cyclic_group(2), 0, "C(Z2)"),
                              build_group_algebra(cyclic_group(2), 0, "C*(Z2)")));
  return gs;
}

}  // namespace

bool selftest(std::ostream& out, std::uint64_t seed) {
  const std::vector<QuantumGroup> groups = test_groups();
  const std::vector<Suite> suites = {
      {"quantum group axioms",
       [&](Rng&) -> std::string {
         for (const auto& g : groups)
           if (!g.validation().ok()) return g.name() + ": " + g.validation().first_failure()->name;
         return "";
       }},
      {"Plancherel and Fourier inversion",
       [&](Rng& rng) -> std::string {
         for (const auto& g : groups)
           for (int i = 0; i < 50; ++i) {
             const AlgebraElement x = random_element(g.structure(), rng);
             const FourierCoefficients fc = fourier_transform(g, x);
             if (std::abs(lp_norm(x, 2.0) - dual_l2_norm(g, fc)) > 1e-8) return g.name() + ": Plancherel";
             if (max_abs_difference(inverse_fourier(g, fc), x) > 1e-8) return g.name() + ": inversion";
           }
         return "";
       }},
      {"spectral gap equals max Fourier norm",
       [&](Rng& rng) -> std::string {
         for (const auto& g : groups)
           for (int i = 0; i < 10; ++i) {
             const Functional phi = random_state(g.structure(), rng);
             const double gap = spectral_gap(g.structure(), right_convolution_matrix(g, phi));
             if (std::abs(gap - fourier_contraction(g, phi).max_nontrivial) > 1e-8) return g.name();
           }
         return "";
       }},
      {"Ricard-Xu inequality",
       [&](Rng& rng) -> std::string {
         const std::vector<BlockStructure> ss = {BlockStructure::commutative(3), BlockStructure::full_matrix(2),
                                                 BlockStructure({1, 1, 2}, {0.25, 0.25, 0.25})};
         for (const auto& s : ss)
           for (double p : {1.1, 1.5, 1.9, 2.0})
             for (int i = 0; i < 100; ++i)
               if (ricard_xu_defect(random_element(s, rng), p) < -1e-9) return "negative defect at p=" + num(p);
         return "";
       }},
      {"Cesaro limits of faithful states",
       [&](Rng& rng) -> std::string {
         for (const auto& g : groups)
           for (int i = 0; i < 5; ++i)
             if (!cesaro_limit(g, random_faithful_state(g.structure(), rng)).is_haar) return g.name();
         return "";
       }},
      {"five conditions on Z3 and Z4",
       [&](Rng&) -> std::string {
         CheckOptions opt;
         opt.samples = 500;
         opt.seed = seed;
         const QuantumGroup z3 = build_function_algebra(cyclic_group(3), 0);
         Vector v3(3);
         v3 << 0.5, 0.0, 0.5;
         if (!check_conditions(z3, z3.functional_from_group_values(v3), opt).all_true()) return "Z3";
         const QuantumGroup z4 = build_function_algebra(cyclic_group(4), 0);
         Vector v4(4);
         v4 << 0.5, 0.0, 0.5, 0.0;
         if (!check_conditions(z4, z4.functional_from_group_values(v4), opt).all_false()) return "Z4";
         return "";
       }},
      {"Hopf image of an evaluation",
       [&](Rng&) -> std::string {
         const QuantumGroup z4 = build_function_algebra(cyclic_group(4), 0);
         const StarHom pi = evaluation_hom(z4, {0, 2});
         const HopfImageData r = hopf_image(z4, pi, trace_functional(pi.target));
         return r.quotient->dimension() == 2 ? "" : "quotient dimension " + std::to_string(r.quotient->dimension());
       }},
      {"free product moments and improvement",
       [&](Rng&) -> std::string {
         const QuantumGroup z2 = build_function_algebra(cyclic_group(2), 0);
         Vector v(2);
         v << 0.6, 0.4;
         const Matrix t = right_convolution_matrix(z2, z2.functional_from_group_values(v));
         const FreeComponent c = make_free_component(z2.structure(), std::nullopt, &t);
         const FreeProductSpec spec({c, c});
         const FreeElement s = FreeElement::word({{0, 0}}) + FreeElement::word({{1, 0}});
         if (std::abs(free_norm_even(spec, s, 4) - std::pow(6.0, 0.25)) > 1e-9) return "fourth moment";
         const FreeMap f(spec, {t, t});
         if (!verify_free_improving(spec, f, std::nullopt, 3, 50, seed).passed()) return "violation";
         return "";
       }},
  };
  bool ok = true;
  Rng rng(seed);
  for (const auto& s : suites) {
    std::string failure;
    try {
      failure = s.run(rng);
    } catch (const std::exception& e) {
      failure = std::string("exception: ") + e.what();
    }
    out << (failure.empty() ? "PASS " : "FAIL ") << s.name << (failure.empty() ? "" : ": " + failure) << "\n";
    ok = ok && failure.empty();
  }
  out << (ok ? "selftest passed" : "selftest FAILED");
  return ok;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  static const std::map<std::string, Outcome (*)(const RunConfig&)> commands = {
      {"validate", cmd_validate},     {"haar", cmd_haar},
      {"irreps", cmd_irreps},         {"fourier", cmd_fourier},
      {"improve", cmd_improve},       {"ritter", cmd_ritter},
      {"schur", cmd_schur},           {"cesaro", cmd_cesaro},
      {"hopf-image", cmd_hopf_image}, {"freeprod-verify", cmd_freeprod_verify},
      {"selftest", cmd_selftest},
  };
  if (cfg.report != "text" && cfg.report != "json") {
    err << "error: --report must be text or json\n";
    return kError;
  }
  auto it = commands.find(cfg.subcommand);
  if (it == commands.end()) {
    err << "error: unknown command '" << cfg.subcommand << "'\n";
    return kError;
  }
  try {
    const Outcome o = it->second(cfg);
    emit(cfg, o, out);
    if (o.code == kError && o.result.contains("error")) err << "error: " << o.result["error"].get<std::string>() << "\n";
    return o.code;
  } catch (const ConsistencyError& e) {
    err << "consistency failure: " << e.what() << "\n";
    return kInconsistent;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite quantum groups, L_p-improving convolution operators and free products"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::optional<double> tol;
  std::optional<int> samples;
  app.add_option("--tol", tol, "Tolerance override");
  app.add_option("--seed", cfg.seed, "Random seed");
  app.add_option("--samples", samples, "Number of random samples");
  app.add_option("--report", cfg.report, "Report format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("-o,--output", cfg.output, "Write the report to a file");
  app.fallthrough();

  auto add = [&](const char* name, const char* help, int min_inputs, int max_inputs) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("inputs", cfg.inputs, "Input JSON files")->expected(min_inputs, max_inputs);
    return sub;
  };
  add("validate", "Validate a quantum group", 1, 1);
  add("haar", "Haar state", 1, 1);
  add("irreps", "Irreducible corepresentations", 1, 1);
  add("fourier", "Fourier coefficients of a state", 2, 2)->add_flag("--element", cfg.element,
                                                                     "Input is an element, not a state");
  add("improve", "Five-condition report for a state", 2, 2);
  add("ritter", "Support criterion on a finite group", 1, 1)
      ->add_option("--support", cfg.support, "Group elements in the support")
      ->delimiter(',')
      ->required();
  add("schur", "Schur multiplier criterion on C*(G)", 2, 2);
  add("cesaro", "Cesaro limit of convolution powers", 2, 2);
  add("hopf-image", "Hopf image of a *-homomorphism", 2, 3);
  add("selftest", "Run the invariant suites", 0, 0);
  CLI::App* fp = app.add_subcommand("freeprod", "Free products");
  fp->require_subcommand(1);
  CLI::App* verify = fp->add_subcommand("verify", "Verify the free product improvement bound");
  verify->add_option("--components", cfg.components, "Component algebras")->required();
  verify->add_option("--maps", cfg.maps, "Component maps")->required();
  verify->add_option("--q", cfg.q, "Even exponent or auto");
  verify->add_option("--len", cfg.length, "Maximum word length");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kError;
  }
  cfg.tol = tol;
  cfg.samples = samples;
  for (CLI::App* sub : app.get_subcommands()) {
    cfg.subcommand = sub->get_name();
    if (cfg.subcommand == "freeprod") cfg.subcommand = "freeprod-verify";
  }
  return run(cfg, out, err);
}

}  // namespace qlp::cli
