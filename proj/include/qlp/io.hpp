#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"
#include "qlp/ergodic.hpp"
#include "qlp/freeprod.hpp"
#include "qlp/improving.hpp"

// JSON reading and report serialization. Complex numbers are [re, im] pairs
// (a bare number is read as real); matrices are arrays of rows.
namespace qlp::io {

using Json = nlohmann::ordered_json;

/// Malformed input. The message names the offending field.
class SchemaError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

Json read_json_file(const std::string& path);

Scalar parse_scalar(const Json& j, const std::string& where);
Matrix parse_matrix(const Json& j, const std::string& where);

/// {"blocks": [n_i], "weights": [w_i]}; weights default to n_i / Σ n_j².
BlockStructure parse_structure(const Json& j);
/// "matrices": one block matrix per block.
AlgebraElement parse_element(const Json& j, const BlockStructure& s);

/// {"name", "blocks", "weights", "delta"} or a group constructor
/// {"cayley", "identity", "construction": "function_algebra" | "group_algebra"}.
/// When both are present, Δ must match the constructed one.
QuantumGroup parse_quantum_group(const Json& j);
CayleyTable parse_cayley(const Json& j, int* identity);

/// One of {"group_values"}, {"values"} (on the matrix-unit basis) or
/// {"matrices"} (density with respect to the Haar state).
Functional parse_state(const Json& j, const QuantumGroup& g);
/// Same without group data; "matrices" is the density with respect to τ.
Functional parse_state(const Json& j, const BlockStructure& s);

/// {"target_blocks", "target_weights", "images"} or {"points"} (evaluation
/// of C(G) at group elements).
StarHom parse_hom(const Json& j, const QuantumGroup& g);

struct FreeComponentInput {
  BlockStructure structure;
  std::optional<Functional> state;
  std::shared_ptr<const QuantumGroup> group;
};

/// Algebra JSON with an optional state density ("matrices"), or a quantum
/// group file (state defaults to its Haar state).
FreeComponentInput parse_free_component(const Json& j);
/// {"matrix": dim × dim} or {"convolution": state} meaning x ↦ x ⋆ φ.
Matrix parse_free_map(const Json& j, const FreeComponentInput& c);

Json to_json(Scalar z);
Json to_json(const Matrix& m);
Json to_json(const AlgebraElement& x);
Json to_json(const BlockStructure& s);
Json to_json(const QuantumGroup& g);
Json to_json(const ValidationReport& r);
Json to_json(const FourierCoefficients& a);
Json to_json(const ConditionsReport& r);
Json to_json(const CesaroResult& r);
Json to_json(const HopfImageData& r);
Json to_json(const FreeVerification& r);

}  // namespace qlp::io
