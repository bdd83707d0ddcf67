#pragma once

// JSON descriptors for algebras, graphs and reports. Rationals are always
// strings ("n" or "n/d"); object keys keep insertion order.

#include <string>

#include <json.hpp>

#include "obstructor/algebra.hpp"
#include "obstructor/divisor.hpp"
#include "obstructor/linear.hpp"
#include "obstructor/obstruction.hpp"
#include "obstructor/witness.hpp"

namespace obstructor {

using Json = nlohmann::ordered_json;

/// Accepts a JSON string ("3/4") or integer. ParseError messages carry `path`.
Rational rational_from_json(const Json& j, const std::string& path);
Json to_json(const Rational& q);
Json to_json(const RatVector& v);

/// {"kind": "quaternion" | "quaternion_for_prime" | "matrix" | "split" | "custom", ...}.
/// For "custom": consts[i][j] lists the coefficients of b_i b_j; involution
/// is a dim x dim row-major matrix whose column k is σ(b_k).
AlgebraPtr algebra_from_json(const Json& j, const std::string& path = "$");

/// Quaternion algebras are written by their parameters; anything else as
/// "custom".
Json algebra_to_json(const StructureAlgebra& algebra);

/// {"base": ..., "r": r, "sizes": [...], "edges": [{"i", "j", "matrix"}]}.
/// "matrix" is φ_ji as g_j rows of g_i entries, each a list of base coefficients.
ObstructionGraph graph_from_json(const Json& j);
Json graph_to_json(const ObstructionGraph& graph);

Json dmatrix_to_json(const DMatrix& m);
DMatrix dmatrix_from_json(const Json& j, const AlgebraPtr& base, Index rows, Index cols, const std::string& path);

/// Echelon basis rows as rational strings.
Json subspace_to_json(const Subspace& s);

/// is_corner, is_full, is_zero, factor_dim, idempotent.
Json corner_to_json(const CornerReport& report);

Json chain_to_json(const ChainReport& report);

/// Reads a whole file; ParseError on I/O or syntax failure.
Json read_json_file(const std::string& filename);

}  // namespace obstructor
