#include "obstructor/json_io.hpp"

#include <fstream>
#include <sstream>

#include "obstructor/errors.hpp"

namespace obstructor {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  throw ParseError(path + ": " + what);
}

const Json& member(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) bad(path, std::string("missing key '") + key + "'");
  return *it;
}

const Json& array_at(const Json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array");
  return j;
}

long integer_from_json(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) bad(path, "expected an integer");
  return j.get<long>();
}

Integer big_integer_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) {
    const Rational q = rational_from_json(j, path);
    if (denominator(q) != 1) bad(path, "expected an integer");
    return numerator(q);
  }
  bad(path, "expected an integer");
}

RatVector vector_from_json(const Json& j, Index n, const std::string& path) {
  array_at(j, path);
  if (static_cast<Index>(j.size()) != n)
    bad(path, "expected " + std::to_string(n) + " entries, got " + std::to_string(j.size()));
  RatVector v(n);
  for (Index k = 0; k < n; ++k) v[k] = rational_from_json(j[static_cast<std::size_t>(k)], path + "[" + std::to_string(k) + "]");
  return v;
}

std::string idx(const std::string& path, std::size_t k) { return path + "[" + std::to_string(k) + "]"; }

}  // namespace

Rational rational_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) bad(path, "expected a rational string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const ParseError& e) {
    bad(path, e.what());
  }
}

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const RatVector& v) {
  Json out = Json::array();
  for (Index k = 0; k < v.size(); ++k) out.push_back(to_string(v[k]));
  return out;
}

AlgebraPtr algebra_from_json(const Json& j, const std::string& path) {
  const Json& kind_json = member(j, "kind", path);
  if (!kind_json.is_string()) bad(path + ".kind", "expected a string");
  const std::string kind = kind_json.get<std::string>();
  try {
    if (kind == "quaternion")
      return quaternion_algebra(rational_from_json(member(j, "a", path), path + ".a"),
                                rational_from_json(member(j, "b", path), path + ".b"));
    if (kind == "quaternion_for_prime")
      return quaternion_for_prime(big_integer_from_json(member(j, "p", path), path + ".p"));
    if (kind == "matrix") {
      const long g = integer_from_json(member(j, "g", path), path + ".g");
      if (g < 1) bad(path + ".g", "must be >= 1");
      return matrix_algebra(algebra_from_json(member(j, "base", path), path + ".base"), static_cast<int>(g));
    }
    if (kind == "split") {
      const long g = integer_from_json(member(j, "g", path), path + ".g");
      if (g < 1) bad(path + ".g", "must be >= 1");
      return split_model(static_cast<int>(g));
    }
  } catch (const InvalidArgument& e) {
    bad(path, e.what());
  }
  if (kind != "custom") bad(path + ".kind", "unknown algebra kind '" + kind + "'");

  const long dim = integer_from_json(member(j, "dim", path), path + ".dim");
  if (dim < 1) bad(path + ".dim", "must be >= 1");
  const Index n = dim;
  const std::string cpath = path + ".consts";
  const Json& consts = array_at(member(j, "consts", path), cpath);
  if (static_cast<Index>(consts.size()) != n) bad(cpath, "expected " + std::to_string(n) + " rows");
  std::vector<std::vector<RatVector>> table(static_cast<std::size_t>(n));
  for (std::size_t a = 0; a < consts.size(); ++a) {
    const Json& row = array_at(consts[a], idx(cpath, a));
    if (static_cast<Index>(row.size()) != n) bad(idx(cpath, a), "expected " + std::to_string(n) + " entries");
    for (std::size_t b = 0; b < row.size(); ++b)
      table[a].push_back(vector_from_json(row[b], n, idx(idx(cpath, a), b)));
  }
  std::optional<RatVector> unit;
  if (j.contains("unit")) unit = vector_from_json(j["unit"], n, path + ".unit");
  std::optional<RatMatrix> involution;
  if (j.contains("involution")) {
    const std::string ipath = path + ".involution";
    const Json& rows = array_at(j["involution"], ipath);
    if (static_cast<Index>(rows.size()) != n) bad(ipath, "expected " + std::to_string(n) + " rows");
    RatMatrix m(n, n);
    for (std::size_t a = 0; a < rows.size(); ++a) m.row(static_cast<Index>(a)) = vector_from_json(rows[a], n, idx(ipath, a)).transpose();
    involution = std::move(m);
  }
  return make_algebra(n, table, std::move(unit), std::move(involution));
}

Json algebra_to_json(const StructureAlgebra& algebra) {
  if (const auto& q = algebra.quaternion_params()) {
    if (q->p) return Json{{"kind", "quaternion_for_prime"}, {"p", q->p->str()}};
    return Json{{"kind", "quaternion"}, {"a", to_string(q->a)}, {"b", to_string(q->b)}};
  }
  const Index n = algebra.dim();
  Json consts = Json::array();
  for (Index a = 0; a < n; ++a) {
    Json row = Json::array();
    for (Index b = 0; b < n; ++b) row.push_back(to_json(algebra.structure_constant(a, b)));
    consts.push_back(std::move(row));
  }
  Json out{{"kind", "custom"}, {"dim", n}, {"consts", std::move(consts)}};
  if (algebra.has_unit()) out["unit"] = to_json(algebra.unit());
  if (algebra.has_involution()) {
    Json rows = Json::array();
    for (Index a = 0; a < n; ++a) rows.push_back(to_json(RatVector(algebra.involution().row(a).transpose())));
    out["involution"] = std::move(rows);
  }
  return out;
}

Json dmatrix_to_json(const DMatrix& m) {
  Json rows = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m.entry(r, c).coeffs()));
    rows.push_back(std::move(row));
  }
  return rows;
}

DMatrix dmatrix_from_json(const Json& j, const AlgebraPtr& base, Index rows, Index cols, const std::string& path) {
  array_at(j, path);
  if (static_cast<Index>(j.size()) != rows)
    bad(path, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
  DMatrix m(base, rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const std::string rpath = idx(path, static_cast<std::size_t>(r));
    const Json& row = array_at(j[static_cast<std::size_t>(r)], rpath);
    if (static_cast<Index>(row.size()) != cols)
      bad(rpath, "expected " + std::to_string(cols) + " entries, got " + std::to_string(row.size()));
    for (Index c = 0; c < cols; ++c)
      m.set_entry(r, c, AlgElement(base, vector_from_json(row[static_cast<std::size_t>(c)], base->dim(),
                                                          idx(rpath, static_cast<std::size_t>(c)))));
  }
  return m;
}

ObstructionGraph graph_from_json(const Json& j) {
  const AlgebraPtr base = algebra_from_json(member(j, "base", "$"), "$.base");
  const long r = integer_from_json(member(j, "r", "$"), "$.r");
  const Json& sizes_json = array_at(member(j, "sizes", "$"), "$.sizes");
  if (static_cast<long>(sizes_json.size()) != r) bad("$.sizes", "expected r = " + std::to_string(r) + " entries");
  std::vector<int> sizes;
  for (std::size_t k = 0; k < sizes_json.size(); ++k) {
    const long g = integer_from_json(sizes_json[k], idx("$.sizes", k));
    if (g < 1) bad(idx("$.sizes", k), "must be >= 1");
    sizes.push_back(static_cast<int>(g));
  }
  ObstructionGraph::EdgeMap edges;
  if (j.contains("edges")) {
    const Json& list = array_at(j["edges"], "$.edges");
    for (std::size_t k = 0; k < list.size(); ++k) {
      const std::string epath = idx("$.edges", k);
      const long i = integer_from_json(member(list[k], "i", epath), epath + ".i");
      const long jj = integer_from_json(member(list[k], "j", epath), epath + ".j");
      if (i < 1 || jj > r || i >= jj) bad(epath, "need 1 <= i < j <= r");
      if (edges.count({static_cast<int>(i), static_cast<int>(jj)})) bad(epath, "duplicate edge");
      edges.emplace(std::make_pair(static_cast<int>(i), static_cast<int>(jj)),
                    dmatrix_from_json(member(list[k], "matrix", epath), base, sizes[static_cast<std::size_t>(jj - 1)],
                                      sizes[static_cast<std::size_t>(i - 1)], epath + ".matrix"));
    }
  }
  return ObstructionGraph(base, std::move(sizes), std::move(edges));
}

Json graph_to_json(const ObstructionGraph& graph) {
  Json edges = Json::array();
  for (const auto& [key, m] : graph.edges())
    edges.push_back(Json{{"i", key.first}, {"j", key.second}, {"matrix", dmatrix_to_json(m)}});
  return Json{{"base", algebra_to_json(*graph.base())},
              {"r", graph.r()},
              {"sizes", graph.sizes()},
              {"edges", std::move(edges)}};
}

Json subspace_to_json(const Subspace& s) {
  Json rows = Json::array();
  for (Index k = 0; k < s.dim(); ++k) rows.push_back(to_json(s.basis_vector(k)));
  return rows;
}

Json corner_to_json(const CornerReport& report) {
  Json out{{"is_corner", report.is_corner}, {"is_full", report.is_full}, {"is_zero", report.is_zero}};
  out["factor_dim"] = report.factor_dim ? Json(*report.factor_dim) : Json(nullptr);
  out["idempotent"] = report.idempotent ? to_json(report.idempotent->coeffs()) : Json(nullptr);
  return out;
}

Json chain_to_json(const ChainReport& report) {
  Json checks = Json::array();
  for (const auto& c : report.checks)
    checks.push_back(Json{{"identity", c.name}, {"expected", c.expected}, {"computed", c.computed},
                          {"status", to_string(c.status)}});
  return Json{{"g", report.g},
              {"checks", std::move(checks)},
              {"closure_dim", report.closure_dim},
              {"oracle_dim", report.oracle_dim},
              {"generates", report.generates}};
}

Json read_json_file(const std::string& filename) {
  std::ifstream in(filename);
  if (!in) throw ParseError("cannot open " + filename);
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return Json::parse(buffer.str());
  } catch (const Json::parse_error& e) {
    throw ParseError(filename + ": " + e.what(), e.byte);
  }
}

}  // namespace obstructor
