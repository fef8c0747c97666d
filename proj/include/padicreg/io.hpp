#pragma once

// JSON schemas shared by the CLI and the fixtures. Malformed input raises
// SchemaError; out-of-range but well-formed input raises PreconditionError.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "padicreg/homology.hpp"
#include "padicreg/regulator.hpp"

namespace padicreg::io {

using Json = nlohmann::ordered_json;

Json parse(const std::string& text);
Json read_file(const std::string& path);

/// {p, M, d?, modulus?}; `precision` overrides M when given.
RingParams ring_from_json(const Json& j, std::optional<int> precision = std::nullopt);
RingElem ring_elem_from_json(const Json& j, const RingParams& params);
/// Array of N rows; entries are integers, decimal strings, or arrays of d of them.
OMatrix matrix_from_json(const Json& j, const RingParams& params);
/// {p, M, d?, modulus?, e, s, N, elems}.
GroupTuple tuple_from_json(const Json& j);
RegulatorConfig config_from_json(const Json& j);

Json to_json(const RingElem& x);
Json to_json(const QpElem& x);
Json to_json(const OMatrix& m);
Json to_json(const GroupTuple& t);

/// {degree, terms: [{coeff, tuple: [matrix, ...]}]}.
BarChain<OMatrix> matrix_chain_from_json(const Json& j, const RingParams& params);
Json to_json(const BarChain<OMatrix>& c);
/// Tuples of 1-based one-line permutation images.
BarChain<PermutationGroup::Elem> permutation_chain_from_json(const Json& j, int degree);
Json to_json(const BarChain<PermutationGroup::Elem>& c);

/// {kind: "permutation", degree, subgroup: "alternating" | "dihedral" |
///  [[one-line generator], ...], reps?: [[one-line], ...]}
CosetSystem<PermutationGroup> permutation_cosets_from_json(const Json& j);
/// {kind: "matrix", p, M, d?, modulus?, N, e}
CosetSystem<MatrixGroup> matrix_cosets_from_json(const Json& j);

std::string rational_string(const mpq_class& q);

}  // namespace padicreg::io
