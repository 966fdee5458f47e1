#include "qlp/io.hpp"

#include <fstream>
#include <sstream>

namespace qlp::io {
namespace {

const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key))
    throw SchemaError(where + ": missing field \"" + key + "\"");
  return j.at(key);
}

int parse_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw SchemaError(where + ": expected an integer");
  return j.get<int>();
}

std::vector<int> parse_int_array(const Json& j, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where + ": expected an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_int(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<double> parse_real_array(const Json& j, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where + ": expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw SchemaError(where + "[" + std::to_string(i) + "]: expected a number");
    out.push_back(j[i].get<double>());
  }
  return out;
}

Vector parse_vector(const Json& j, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where + ": expected an array");
  Vector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = parse_scalar(j[i], where + "[" + std::to_string(i) + "]");
  return v;
}

std::vector<Matrix> parse_blocks(const Json& j, const BlockStructure& s, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != s.block_count())
    throw SchemaError(where + ": expected one matrix per block (" + std::to_string(s.block_count()) + ")");
  std::vector<Matrix> blocks;
  for (int b = 0; b < s.block_count(); ++b) {
    Matrix m = parse_matrix(j[b], where + "[" + std::to_string(b) + "]");
    if (m.rows() != s.dim(b) || m.cols() != s.dim(b))
      throw SchemaError(where + "[" + std::to_string(b) + "]: expected a " + std::to_string(s.dim(b)) + "x" +
                        std::to_string(s.dim(b)) + " matrix");
    blocks.push_back(std::move(m));
  }
  return blocks;
}

void check_structure(const Json& j, const BlockStructure& s, const std::string& where) {
  if (j.contains("blocks") && parse_int_array(j.at("blocks"), where + ".blocks") != s.dims())
    throw SchemaError(where + ": blocks do not match the algebra");
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(path + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

Scalar parse_scalar(const Json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw SchemaError(where + ": expected a number or [re, im]");
}

Matrix parse_matrix(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw SchemaError(where + ": expected a nonempty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  Matrix m(j.size(), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string row = where + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != cols) throw SchemaError(row + ": rows must have equal length");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = parse_scalar(j[r][c], row + "[" + std::to_string(c) + "]");
  }
  return m;
}

BlockStructure parse_structure(const Json& j) {
  const std::vector<int> dims = parse_int_array(require(j, "blocks", "algebra"), "blocks");
  if (dims.empty()) throw SchemaError("blocks: at least one block required");
  for (int d : dims)
    if (d < 1) throw SchemaError("blocks: dimensions must be positive");
  std::vector<double> weights;
  if (j.contains("weights")) {
    weights = parse_real_array(j.at("weights"), "weights");
  } else {
    double s = 0.0;
    for (int d : dims) s += d * d;
    for (int d : dims) weights.push_back(d / s);
  }
  try {
    return BlockStructure(dims, weights);
  } catch (const std::exception& e) {
    throw SchemaError(std::string("algebra: ") + e.what());
  }
}

AlgebraElement parse_element(const Json& j, const BlockStructure& s) {
  check_structure(j, s, "element");
  return AlgebraElement(s, parse_blocks(require(j, "matrices", "element"), s, "matrices"));
}

CayleyTable parse_cayley(const Json& j, int* identity) {
  const Json& t = require(j, "cayley", "group");
  if (!t.is_array()) throw SchemaError("cayley: expected an array of rows");
  CayleyTable table;
  for (std::size_t r = 0; r < t.size(); ++r) table.push_back(parse_int_array(t[r], "cayley[" + std::to_string(r) + "]"));
  const int e = j.contains("identity") ? parse_int(j.at("identity"), "identity") : 0;
  validate_group_table(table, e);
  if (identity) *identity = e;
  return table;
}

QuantumGroup parse_quantum_group(const Json& j) {
  if (!j.is_object()) throw SchemaError("quantum group: expected an object");
  const std::string name = j.contains("name") && j.at("name").is_string() ? j.at("name").get<std::string>() : "A";
  if (j.contains("cayley")) {
    int e = 0;
    const CayleyTable table = parse_cayley(j, &e);
    const std::string kind = j.contains("construction") ? j.at("construction").get<std::string>() : "function_algebra";
    std::optional<QuantumGroup> g;
    if (kind == "function_algebra") {
      g.emplace(build_function_algebra(table, e, name));
    } else if (kind == "group_algebra") {
      g.emplace(build_group_algebra(table, e, name));
    } else {
      throw SchemaError("construction: expected \"function_algebra\" or \"group_algebra\"");
    }
    if (j.contains("delta")) {
      const Matrix d = parse_matrix(j.at("delta"), "delta");
      if (d.rows() != g->delta().rows() || d.cols() != g->delta().cols() ||
          (d - g->delta()).cwiseAbs().maxCoeff() > 1e-10)
        throw ValidationError("delta does not match the comultiplication built from the Cayley table");
    }
    return *std::move(g);
  }
  const BlockStructure s = parse_structure(j);
  std::optional<std::vector<double>> weights;
  if (j.contains("weights")) weights = s.weights();
  return QuantumGroup(name, s.dims(), weights, parse_matrix(require(j, "delta", "quantum group"), "delta"));
}

Functional parse_state(const Json& j, const BlockStructure& s) {
  if (!j.is_object()) throw SchemaError("state: expected an object");
  check_structure(j, s, "state");
  if (j.contains("values")) {
    const Vector v = parse_vector(j.at("values"), "values");
    if (v.size() != s.dimension()) throw SchemaError("values: expected " + std::to_string(s.dimension()) + " entries");
    return Functional::from_values(s, v);
  }
  if (j.contains("matrices")) return Functional(AlgebraElement(s, parse_blocks(j.at("matrices"), s, "matrices")));
  throw SchemaError("state: expected \"values\" or \"matrices\"");
}

Functional parse_state(const Json& j, const QuantumGroup& g) {
  if (j.is_object() && j.contains("group_values")) {
    if (g.group_kind() == GroupKind::none) throw SchemaError("group_values: the quantum group has no group data");
    const Vector v = parse_vector(j.at("group_values"), "group_values");
    if (v.size() != static_cast<Eigen::Index>(g.cayley().size()))
      throw SchemaError("group_values: expected " + std::to_string(g.cayley().size()) + " entries");
    return g.functional_from_group_values(v);
  }
  return parse_state(j, g.structure());
}

StarHom parse_hom(const Json& j, const QuantumGroup& g) {
  if (!j.is_object()) throw SchemaError("hom: expected an object");
  if (j.contains("points")) {
    if (g.group_kind() != GroupKind::function_algebra)
      throw SchemaError("points: evaluation requires a function algebra C(G)");
    return evaluation_hom(g, parse_int_array(j.at("points"), "points"));
  }
  Json target;
  target["blocks"] = require(j, "target_blocks", "hom");
  if (j.contains("target_weights")) target["weights"] = j.at("target_weights");
  StarHom pi{parse_structure(target), Matrix()};
  const Json& images = require(j, "images", "hom");
  if (!images.is_array() || static_cast<int>(images.size()) != g.dimension())
    throw SchemaError("images: expected one image per basis element (" + std::to_string(g.dimension()) + ")");
  pi.matrix.resize(pi.target.dimension(), g.dimension());
  for (int m = 0; m < g.dimension(); ++m)
    pi.matrix.col(m) = AlgebraElement(pi.target, parse_blocks(images[m], pi.target, "images[" + std::to_string(m) + "]"))
                           .coordinates();
  validate_star_hom(g.structure(), pi);
  return pi;
}

FreeComponentInput parse_free_component(const Json& j) {
  if (j.is_object() && (j.contains("delta") || j.contains("cayley"))) {
    auto g = std::make_shared<const QuantumGroup>(parse_quantum_group(j));
    return {g->structure(), g->haar(), g};
  }
  FreeComponentInput c{parse_structure(j), std::nullopt, nullptr};
  if (j.contains("matrices") || j.contains("values")) c.state = parse_state(j, c.structure);
  return c;
}

Matrix parse_free_map(const Json& j, const FreeComponentInput& c) {
  if (!j.is_object()) throw SchemaError("map: expected an object");
  if (j.contains("matrix")) {
    Matrix m = parse_matrix(j.at("matrix"), "matrix");
    if (m.rows() != c.structure.dimension() || m.cols() != c.structure.dimension())
      throw SchemaError("matrix: expected a " + std::to_string(c.structure.dimension()) + "x" +
                        std::to_string(c.structure.dimension()) + " matrix");
    return m;
  }
  if (j.contains("convolution")) {
    if (!c.group) throw SchemaError("convolution: the component is not a quantum group");
    return right_convolution_matrix(*c.group, parse_state(j.at("convolution"), *c.group));
  }
  throw SchemaError("map: expected \"matrix\" or \"convolution\"");
}

// --- output ------------------------------------------------------------------------------

Json to_json(Scalar z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const BlockStructure& s) {
  Json j;
  j["blocks"] = s.dims();
  j["weights"] = s.weights();
  return j;
}

Json to_json(const AlgebraElement& x) {
  Json j = to_json(x.structure());
  Json mats = Json::array();
  for (const auto& b : x.blocks()) mats.push_back(to_json(b));
  j["matrices"] = std::move(mats);
  return j;
}

Json to_json(const QuantumGroup& g) {
  Json j;
  j["name"] = g.name();
  j["blocks"] = g.structure().dims();
  j["weights"] = g.structure().weights();
  j["delta"] = to_json(g.delta());
  return j;
}

Json to_json(const ValidationReport& r) {
  Json j;
  j["ok"] = r.ok();
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json cj;
    cj["name"] = c.name;
    cj["passed"] = c.passed;
    cj["residual"] = c.residual;
    if (!c.detail.empty()) cj["detail"] = c.detail;
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  return j;
}

Json to_json(const FourierCoefficients& a) {
  Json j;
  j["alpha_dims"] = a.alpha_dims();
  Json mats = Json::array();
  for (const auto& m : a.blocks) mats.push_back(to_json(m));
  j["matrices"] = std::move(mats);
  return j;
}

namespace {

Json side_json(const SideVerification& s) {
  Json j;
  j["lambda"] = s.lambda;
  j["witness_p"] = s.witness_p ? Json(*s.witness_p) : Json(nullptr);
  j["best_constant"] = s.best_constant;
  j["samples"] = s.samples;
  j["max_slack"] = s.samples ? Json(s.max_slack) : Json(nullptr);
  j["violations"] = s.violations;
  j["refuted"] = s.refuted;
  j["refutation_excess"] = s.refutation_excess;
  j["holds"] = s.holds;
  return j;
}

}  // namespace

Json to_json(const ConditionsReport& r) {
  Json j;
  Json c;
  c["(1)"] = r.improving_left;
  c["(2)"] = r.improving_right;
  c["(3)"] = r.fourier_strict_contraction;
  c["(4)"] = r.cesaro_to_haar;
  c["(5)"] = r.nondegenerate;
  j["conditions"] = std::move(c);
  j["indeterminate"] = r.indeterminate;
  j["consistent"] = r.consistent;
  if (!r.disagreement.empty()) j["disagreement"] = r.disagreement;
  j["lambda"] = r.lambda;
  j["fourier_norms"] = r.fourier.norms;
  j["max_nontrivial_norm"] = r.fourier.max_nontrivial;
  j["argmax_irrep"] = r.fourier.argmax;
  j["gap_fourier_residual"] = r.gap_fourier_residual;
  j["left"] = side_json(r.left);
  j["right"] = side_json(r.right);
  j["cesaro_distance"] = r.cesaro_distance;
  j["fixed_space_dim"] = r.fixed_space_dim;
  j["nondegeneracy_margin"] = r.nondegeneracy_margin;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  return j;
}

Json to_json(const CesaroResult& r) {
  Json j;
  j["limit"] = to_json(r.limit.values());
  j["haar_distance"] = r.haar_distance;
  j["is_haar"] = r.is_haar;
  j["nondegenerate"] = r.nondegenerate;
  j["fixed_space_dim"] = r.fixed_space_dim;
  return j;
}

Json to_json(const HopfImageData& r) {
  Json j;
  j["kernel_dims"] = r.kernel_dims;
  j["stabilization_index"] = r.stabilization_index;
  j["ideal_dim"] = r.ideal.cols();
  j["kept_blocks"] = r.kept_blocks;
  j["quotient"] = r.quotient ? to_json(*r.quotient) : Json(nullptr);
  j["quotient_residual"] = r.quotient_residual;
  j["eta"] = to_json(r.eta.values());
  j["eta_cesaro"] = to_json(r.eta_cesaro.values());
  j["eta_agreement"] = r.eta_agreement;
  j["idempotent_residual"] = r.idempotent_residual;
  return j;
}

Json to_json(const FreeVerification& r) {
  Json j;
  j["q"] = r.q;
  j["max_length"] = r.max_length;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["lambda"] = r.lambda;
  j["max_slack"] = r.max_slack;
  j["max_claim_slack"] = r.max_claim_slack;
  j["max_contraction_slack"] = r.max_contraction_slack;
  j["violations"] = r.violations;
  j["passed"] = r.passed();
  if (r.witness) {
    Json w = Json::array();
    for (const auto& [word, c] : r.witness->terms) {
      Json wj;
      Json letters = Json::array();
      for (const auto& [i, k] : word) letters.push_back(Json::array({i, k}));
      wj["word"] = std::move(letters);
      wj["coefficient"] = to_json(c);
      w.push_back(std::move(wj));
    }
    j["witness"] = std::move(w);
    j["witness_check"] = r.witness_check;
  }
  return j;
}

}  // namespace qlp::io
