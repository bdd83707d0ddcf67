// Command-line front end. Every subcommand prints one JSON document on stdout.
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "obstructor/closure.hpp"
#include "obstructor/divisor.hpp"
#include "obstructor/errors.hpp"
#include "obstructor/hilbert.hpp"
#include "obstructor/json_io.hpp"
#include "obstructor/obstruction.hpp"
#include "obstructor/witness.hpp"

namespace {

using namespace obstructor;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("OBSTRUCTOR_SEED")) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError("OBSTRUCTOR_SEED must be a non-negative integer");
  }
  return kDefaultSeed;
}

Integer prime_flag(long p) {
  if (!is_prime(Integer(p))) throw UsageError("--p must be a prime, got " + std::to_string(p));
  return Integer(p);
}

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

// ---------------------------------------------------------------- verify

Json ramification_json(const Integer& p, bool& ok) {
  const AlgebraPtr d = quaternion_for_prime(p);
  const auto& q = *d->quaternion_params();
  Json places = Json::array();
  for (const Place& v : ramified_places(q.a, q.b)) places.push_back(v.to_string());
  const bool pass = places == Json::array({p.str(), "inf"});
  ok = ok && pass;
  return Json{{"p", p.str()},
              {"a", to_string(q.a)},
              {"b", to_string(q.b)},
              {"ramified", std::move(places)},
              {"status", pass ? "PASS" : "FAIL"}};
}

// x and x† commute for every x in a quaternion algebra, so they never generate it.
Json g1_impossibility_json(const Integer& p, std::uint64_t seed, bool& ok) {
  const AlgebraPtr d = quaternion_for_prime(p);
  std::mt19937_64 rng(seed);
  constexpr int kSamples = 100;
  int held = 0;
  Index max_dim = 0;
  for (int k = 0; k < kSamples; ++k) {
    const AlgElement x = random_element(d, rng, kDefaultCoeffBound);
    const AlgElement xd = apply_involution(x);
    const Index dim = subrng_closure(d, {x, xd}).span.dim();
    max_dim = std::max(max_dim, dim);
    if (dim < d->dim() && commutes(x, xd)) ++held;
  }
  const bool pass = held == kSamples;
  ok = ok && pass;
  return Json{{"samples", kSamples}, {"held", held}, {"max_closure_dim", max_dim}, {"status", pass ? "PASS" : "FAIL"}};
}

Json divisor_example_json(bool& ok) {
  const MultiHomogPoly f = parse_poly("x1*x2*x3 - y1*y2*y3", 3);
  const bool contains = contains_double_fiber(f, 1, ProjectivePoint(0, 1), 2, ProjectivePoint(1, 0));
  const MultiHomogPoly cover = substitute_powers(f, {2, 2, 2});
  const bool splits = verify_factorization(cover, {f, parse_poly("x1*x2*x3 + y1*y2*y3", 3)});
  const bool pass = contains && splits && f.terms().size() == 2 && f.degrees() == std::vector<int>{1, 1, 1};
  ok = ok && pass;
  return Json{{"poly", to_string(f)},
              {"multidegree", f.degrees()},
              {"contains_double_fiber", contains},
              {"squared", to_string(cover)},
              {"splitting_verified", splits},
              {"status", pass ? "PASS" : "FAIL"}};
}

Json chain_section(int g, bool strict, bool& ok) {
  const ChainReport report = verify_identity_chain(g);
  for (const auto& c : report.checks)
    if (c.status == CheckStatus::Fail || (strict && c.status == CheckStatus::SignDiscrepancy)) ok = false;
  const Index full = Index(2 * g) * (2 * g);
  if (!report.generates) ok = false;
  Json out = chain_to_json(report);
  out["expected_dim"] = full;
  out["generation_status"] = report.generates ? "PASS" : "FAIL";
  return out;
}

int cmd_verify(std::optional<int> g, long p_flag, bool all, bool strict) {
  if (!all && !g) throw UsageError("verify: --g is required unless --all is given");
  if (g && *g < 1) throw UsageError("verify: --g must be >= 1");
  const Integer p = prime_flag(p_flag);
  bool ok = true;
  Json out;
  out["strict"] = strict;
  if (g) {
    out["g"] = *g;
    out["p"] = p.str();
    if (*g == 1)
      out["g1_impossibility"] = g1_impossibility_json(p, default_seed(), ok);
    else
      out["identity_chain"] = chain_section(*g, strict, ok);
    out["ramification"] = ramification_json(p, ok);
  }
  if (all) {
    Json chains = Json::array();
    for (int h = 2; h <= 5; ++h) chains.push_back(chain_section(h, strict, ok));
    out["all_chains"] = std::move(chains);
    Json ram = Json::array();
    for (int q : {2, 3, 5, 7, 11, 13}) ram.push_back(ramification_json(Integer(q), ok));
    out["all_ramification"] = std::move(ram);
    Json g1 = Json::array();
    for (int q : {2, 3, 5}) g1.push_back(g1_impossibility_json(Integer(q), default_seed(), ok));
    out["all_g1_impossibility"] = std::move(g1);
  }
  out["divisor_example"] = divisor_example_json(ok);
  out["status"] = ok ? "PASS" : "FAIL";
  emit(out);
  return ok ? kExitOk : kExitFailed;
}

// ---------------------------------------------------------------- obstruction / corner

Json obstruction_report(const ObstructionGraph& graph, int vertex, std::optional<int> oracle_len, bool& ok) {
  if (vertex < 1 || vertex > graph.r())
    throw UsageError("--vertex must lie in 1.." + std::to_string(graph.r()));
  const PathSpanTable table = path_span_table(graph);
  const Subspace& e = table.at(vertex, vertex);
  const AlgebraPtr end = matrix_algebra(graph.base(), graph.size(vertex));
  const CornerReport corner = corner_detect(e, end);
  const ObstructionVerdict verdict = flag_nonliftable(corner, is_supersingular_base(*graph.base()));

  Json out{{"vertex", vertex}, {"e_dim", e.dim()}, {"ambient_dim", e.ambient_dim()}};
  out.update(corner_to_json(corner));
  out["verdict"] = to_string(verdict.verdict);
  out["note"] = verdict.note;
  out["rounds"] = table.rounds;
  out["basis"] = subspace_to_json(e);
  if (oracle_len) {
    if (*oracle_len < 2) throw UsageError("--oracle-len must be >= 2");
    const Subspace oracle = loop_oracle(graph, vertex, *oracle_len);
    const bool equal = oracle == e;
    ok = ok && equal;
    out["oracle_len"] = *oracle_len;
    out["oracle_dim"] = oracle.dim();
    out["oracle_equal"] = equal;
  }
  return out;
}

int cmd_obstruction(const std::string& file, int vertex, std::optional<int> oracle_len) {
  const ObstructionGraph graph = graph_from_json(read_json_file(file));
  bool ok = true;
  emit(obstruction_report(graph, vertex, oracle_len, ok));
  return ok ? kExitOk : kExitFailed;
}

int cmd_corner(const std::string& file, int vertex) {
  const Json input = read_json_file(file);
  if (input.contains("base")) {
    bool ok = true;
    emit(obstruction_report(graph_from_json(input), vertex, std::nullopt, ok));
    return kExitOk;
  }
  if (!input.contains("algebra") || !input.contains("basis"))
    throw ParseError("$: expected a graph (\"base\") or {\"algebra\", \"basis\"}");
  const AlgebraPtr algebra = algebra_from_json(input["algebra"], "$.algebra");
  const Json& rows = input["basis"];
  if (!rows.is_array()) throw ParseError("$.basis: expected an array");
  std::vector<RatVector> vectors;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const std::string path = "$.basis[" + std::to_string(k) + "]";
    if (!rows[k].is_array() || static_cast<Index>(rows[k].size()) != algebra->dim())
      throw ParseError(path + ": expected " + std::to_string(algebra->dim()) + " coefficients");
    RatVector v(algebra->dim());
    for (Index c = 0; c < algebra->dim(); ++c)
      v[c] = rational_from_json(rows[k][static_cast<std::size_t>(c)], path + "[" + std::to_string(c) + "]");
    vectors.push_back(std::move(v));
  }
  const Subspace e = echelonize(vectors, algebra->dim());
  Json out{{"e_dim", e.dim()}, {"closed", is_closed_under_products(algebra, e)}};
  out.update(corner_to_json(corner_detect(e, algebra)));
  emit(out);
  return kExitOk;
}

// ---------------------------------------------------------------- find-generator

void write_graph(const Json& graph, const std::string& file) {
  if (file.empty()) return;
  std::ofstream out(file);
  if (!out) throw UsageError("cannot write " + file);
  out << graph.dump(2) << '\n';
}

int cmd_find_generator(int g, long p_flag, std::optional<std::uint64_t> seed_flag, int tries, int bound,
                       const std::string& graph_kind, const std::string& graph_out) {
  if (!graph_out.empty() && graph_kind.empty()) throw UsageError("--graph-out needs --graph r3 or r4");
  if (g < 1) throw UsageError("find-generator: --g must be >= 1");
  if (tries < 1) throw UsageError("find-generator: --tries must be >= 1");
  if (bound < 1) throw UsageError("find-generator: --bound must be >= 1");
  const Integer p = prime_flag(p_flag);
  const std::uint64_t seed = seed_flag ? *seed_flag : default_seed();
  const AlgebraPtr base = quaternion_for_prime(p);
  const AlgebraPtr end = matrix_algebra(base, g);

  Json out{{"g", g}, {"p", p.str()}, {"seed", seed}, {"bound", bound}};
  if (graph_kind == "r4") {
    try {
      const AlbertPair pair = find_albert_pair(end, seed, tries, bound);
      out["found"] = true;
      out["tries"] = pair.tries;
      out["x"] = dmatrix_to_json(from_matrix_element(pair.x, base, g));
      out["y"] = dmatrix_to_json(from_matrix_element(pair.y, base, g));
      ObstructionGraph::EdgeMap edges;
      const DMatrix one = DMatrix::identity(base, g);
      for (auto key : {std::make_pair(1, 2), std::make_pair(1, 3), std::make_pair(1, 4), std::make_pair(2, 3)})
        edges.emplace(key, one);
      edges.emplace(std::make_pair(2, 4), from_matrix_element(pair.x, base, g));
      edges.emplace(std::make_pair(3, 4), from_matrix_element(pair.y, base, g));
      out["graph"] = graph_to_json(ObstructionGraph(base, {g, g, g, g}, std::move(edges)));
      write_graph(out["graph"], graph_out);
    } catch (const SearchFailed& e) {
      out["found"] = false;
      out["tries"] = e.tries();
    }
    emit(out);
    return out["found"].get<bool>() ? kExitOk : kExitFailed;
  }
  const GeneratorSearch search = random_rosati_generator(end, seed, tries, bound);
  out["found"] = search.witness.has_value();
  out["tries"] = search.tries;
  if (search.witness) {
    out["witness"] = dmatrix_to_json(from_matrix_element(*search.witness, base, g));
    if (graph_kind == "r3") {
      ObstructionGraph::EdgeMap edges;
      const DMatrix one = DMatrix::identity(base, g);
      edges.emplace(std::make_pair(1, 2), from_matrix_element(*search.witness, base, g));
      edges.emplace(std::make_pair(1, 3), one);
      edges.emplace(std::make_pair(2, 3), one);
      out["graph"] = graph_to_json(ObstructionGraph(base, {g, g, g}, std::move(edges)));
      write_graph(out["graph"], graph_out);
    }
  }
  emit(out);
  return search.witness ? kExitOk : kExitFailed;
}

// ---------------------------------------------------------------- hilbert

int cmd_hilbert(const std::string& a_text, const std::string& b_text, const std::optional<std::string>& place) {
  const Rational a = parse_rational(a_text);
  const Rational b = parse_rational(b_text);
  if (is_zero(a) || is_zero(b)) throw UsageError("hilbert: --a and --b must be nonzero");
  std::vector<Place> places;
  if (place) {
    if (*place == "inf") {
      places.push_back(Place::infinity());
    } else {
      const Rational q = parse_rational(*place);
      if (denominator(q) != 1 || !is_prime(numerator(q))) throw UsageError("--place must be a prime or 'inf'");
      places.push_back(Place::prime(numerator(q)));
    }
  } else {
    places = relevant_places(a, b);
  }
  Json symbols = Json::array();
  Json ramified = Json::array();
  int product = 1;
  for (const Place& v : places) {
    const int s = hilbert_symbol(a, b, v);
    product *= s;
    symbols.push_back(Json{{"place", v.to_string()}, {"symbol", s}});
    if (s == -1) ramified.push_back(v.to_string());
  }
  Json out{{"a", to_string(a)}, {"b", to_string(b)}, {"symbols", std::move(symbols)}, {"ramified", std::move(ramified)}};
  if (!place) out["product"] = product;
  emit(out);
  return (place || product == 1) ? kExitOk : kExitFailed;
}

// ---------------------------------------------------------------- divisor

int cmd_divisor(const std::string& poly, int r, const std::vector<int>& subst, const std::vector<std::string>& fibers,
                const std::vector<std::string>& factors) {
  if (r < 1) throw UsageError("divisor: --r must be >= 1");
  const MultiHomogPoly f = parse_poly(poly, r);
  Json out{{"poly", to_string(f)}, {"r", r}, {"multidegree", f.degrees()}, {"terms", f.terms().size()}};
  bool ok = true;
  if (!fibers.empty()) {
    if (fibers.size() != 2) throw UsageError("--fiber takes exactly two i:[a:b] arguments");
    const auto [i, pi] = parse_fiber(fibers[0]);
    const auto [j, pj] = parse_fiber(fibers[1]);
    const bool contains = contains_double_fiber(f, i, pi, j, pj);
    out["double_fiber_hits"] = Json{{"fibers", fibers},
                                    {"restriction", to_string(restrict_to_fibers(f, {{i, pi}, {j, pj}}))},
                                    {"contains", contains}};
  }
  MultiHomogPoly target = f;
  if (!subst.empty()) {
    target = substitute_powers(f, subst);
    out["substituted"] = Json{{"exponents", subst}, {"poly", to_string(target)}, {"multidegree", target.degrees()}};
  }
  if (!factors.empty()) {
    std::vector<MultiHomogPoly> parsed;
    Json texts = Json::array();
    for (const auto& t : factors) {
      parsed.push_back(parse_poly(t, r));
      texts.push_back(to_string(parsed.back()));
    }
    const bool verified = verify_factorization(target, parsed);
    ok = verified;
    out["factors"] = std::move(texts);
    out["splitting_verified"] = verified;
  }
  emit(out);
  return ok ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact algebra toolkit for loop-span obstructions on products of curves"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "Recompute the generation identities, ramification and the divisor example");
  std::optional<int> v_g;
  long v_p = 2;
  bool v_all = false, v_strict = false;
  verify->add_option("--g", v_g, "Genus (>= 1; g = 1 checks that generation is impossible)");
  verify->add_option("--p", v_p, "Prime of the supersingular quaternion algebra");
  verify->add_flag("--all", v_all, "Run every genus 2..5 and primes 2..13");
  verify->add_flag("--strict", v_strict, "Treat documented sign discrepancies as failures");

  auto* obstruction = app.add_subcommand("obstruction", "Compute E_i for a graph file");
  std::string o_graph;
  int o_vertex = 1;
  std::optional<int> o_oracle;
  obstruction->add_option("--graph", o_graph, "Graph JSON file")->required();
  obstruction->add_option("--vertex", o_vertex, "Vertex i (1-based)");
  obstruction->add_option("--oracle-len", o_oracle, "Cross-check with loops of at most this many arrows");

  auto* corner = app.add_subcommand("corner", "Corner test for a subspace or for E_i of a graph");
  std::string c_input;
  int c_vertex = 1;
  corner->add_option("--input", c_input, "JSON: {\"algebra\", \"basis\"} or a graph")->required();
  corner->add_option("--vertex", c_vertex, "Vertex when the input is a graph");

  auto* find = app.add_subcommand("find-generator", "Random x in M_g(D_p) with x, x† generating");
  int f_g = 2;
  long f_p = 2;
  std::optional<std::uint64_t> f_seed;
  int f_tries = kDefaultMaxTries, f_bound = kDefaultCoeffBound;
  std::string f_graph;
  find->add_option("--g", f_g, "Matrix size")->required();
  find->add_option("--p", f_p, "Prime")->required();
  find->add_option("--seed", f_seed, "Seed (default: OBSTRUCTOR_SEED or built-in)");
  find->add_option("--tries", f_tries, "Maximum number of samples");
  find->add_option("--bound", f_bound, "Coefficients are drawn from [-bound, bound]");
  find->add_option("--graph", f_graph, "Also emit the r3 or r4 construction")
      ->check(CLI::IsMember({"r3", "r4"}));
  std::string f_graph_out;
  find->add_option("--graph-out", f_graph_out, "Write the emitted graph to this file");

  auto* hilbert = app.add_subcommand("hilbert", "Hilbert symbols (a,b)_v");
  std::string h_a, h_b;
  std::optional<std::string> h_place;
  hilbert->add_option("--a", h_a, "Rational a")->required();
  hilbert->add_option("--b", h_b, "Rational b")->required();
  hilbert->add_option("--place", h_place, "A prime or 'inf' (default: all relevant places)");

  auto* divisor = app.add_subcommand("divisor", "Multihomogeneous polynomial checks on (P^1)^r");
  std::string d_poly;
  int d_r = 0;
  std::vector<int> d_subst;
  std::vector<std::string> d_fibers, d_factors;
  divisor->add_option("--poly", d_poly, "Polynomial in x1..xr, y1..yr")->required();
  divisor->add_option("--r", d_r, "Number of P^1 factors")->required();
  divisor->add_option("--subst", d_subst, "Exponents e1,..,er of the power cover")->delimiter(',');
  divisor->add_option("--fiber", d_fibers, "Two fibers i:[a:b] j:[c:d]")->expected(2);
  divisor->add_option("--factors", d_factors, "Claimed factors of the (substituted) polynomial")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*verify) return cmd_verify(v_g, v_p, v_all, v_strict);
    if (*obstruction) return cmd_obstruction(o_graph, o_vertex, o_oracle);
    if (*corner) return cmd_corner(c_input, c_vertex);
    if (*find) return cmd_find_generator(f_g, f_p, f_seed, f_tries, f_bound, f_graph, f_graph_out);
    if (*hilbert) return cmd_hilbert(h_a, h_b, h_place);
    if (*divisor) return cmd_divisor(d_poly, d_r, d_subst, d_fibers, d_factors);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SearchFailed& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailed;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailed;
  }
  return kExitUsage;
}
