// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "obstructor/closure.hpp"
#include "obstructor/divisor.hpp"
#include "obstructor/hilbert.hpp"
#include "obstructor/obstruction.hpp"
#include "obstructor/witness.hpp"
#include "support.hpp"

using namespace obstructor;
using testing::Gen;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

class Tally {
 public:
  void run(const std::string& id, double limit_s, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limit_s > 0 && secs >= limit_s) {
      o.pass = false;
      o.detail += "; over time limit " + fmt(limit_s) + " s";
    }
    failures_ += o.pass ? 0 : 1;
    std::cout << id << ' ' << (o.pass ? "PASS" : "FAIL") << " [" << fmt(secs) << " s] " << o.detail << std::endl;
  }

  int failures() const { return failures_; }

 private:
  static std::string fmt(double s) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(3) << s;
    return os.str();
  }

  int failures_ = 0;
};

std::string ratio(int good, int total) { return std::to_string(good) + "/" + std::to_string(total); }

bool is_commutative(const AlgebraPtr& a, const Subspace& s) {
  const std::vector<AlgElement> basis = basis_elements(a, s);
  for (const auto& x : basis)
    for (const auto& y : basis)
      if (!commutes(x, y)) return false;
  return true;
}

Outcome ac1() {
  // Exact checks are the four chain identities before bab; bab and x - bab
  // must come out as the known discrepancy, not as a failure.
  int exact = 0, discrepancies = 0, total = 0;
  bool ok = true;
  for (int g = 2; g <= 5; ++g) {
    const ChainReport r = verify_identity_chain(g);
    for (std::size_t k = 0; k < r.checks.size(); ++k) {
      const CheckStatus s = r.checks[k].status;
      ++total;
      if (s == CheckStatus::Pass) ++exact;
      if (s == CheckStatus::SignDiscrepancy) ++discrepancies;
      if (s == CheckStatus::Fail) ok = false;
      if (k < 5 && s != CheckStatus::Pass) ok = false;
    }
  }
  return {ok, "g=2..5: " + ratio(exact, total) + " exact, " + std::to_string(discrepancies) +
                  " reported sign discrepancies (bab = +e_{2g,1}, x - bab)"};
}

Outcome ac2() {
  bool ok = true;
  std::string detail;
  for (int g = 2; g <= 5; ++g) {
    const AlgebraPtr a = split_model(g);
    const AlgElement x = shift_witness(g);
    const std::vector<AlgElement> gens{x, apply_involution(x)};
    const Subspace closure = subrng_closure(a, gens).span;
    const OracleSpan oracle = word_span_oracle_stable(a, gens);
    const Index full = Index(4) * g * g;
    ok = ok && closure.dim() == full && closure.is_full() && oracle.span == closure;
    detail += "g=" + std::to_string(g) + " dim " + std::to_string(closure.dim()) + "/" + std::to_string(full) +
              " oracle len " + std::to_string(oracle.length) + (g < 5 ? "; " : "");
  }
  return {ok, detail};
}

Outcome ac3() {
  int held = 0, total = 0;
  Index max_dim = 0;
  for (int p : {2, 3, 5}) {
    const AlgebraPtr d = quaternion_for_prime(p);
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      std::mt19937_64 rng(seed * 1000 + static_cast<std::uint64_t>(p));
      const AlgElement x = random_element(d, rng, kDefaultCoeffBound);
      const Subspace s = subrng_closure(d, {x, apply_involution(x)}).span;
      max_dim = std::max(max_dim, s.dim());
      ++total;
      if (s.dim() <= 3 && is_commutative(d, s)) ++held;
    }
  }
  return {held == total, ratio(held, total) + " commutative with dim <= 3, max dim " + std::to_string(max_dim)};
}

Outcome ac4_case(int g, int p) {
  const ObstructionGraph graph = build_r3_graph(g, p);
  const AlgebraPtr end = matrix_algebra(graph.base(), g);
  const Subspace e1 = compute_obstruction(graph, 1);
  const CornerReport report = corner_detect(e1, end);
  const Verdict v = flag_nonliftable(report, is_supersingular_base(*graph.base())).verdict;
  const AlgElement x = to_matrix_element(graph.hom(2, 1), end);
  const bool same = e1 == subrng_closure(end, {x, apply_involution(x)}).span;
  const bool ok = e1.dim() == Index(4) * g * g && report.is_full && v == Verdict::Obstructed && same;
  return {ok, "(g,p)=(" + std::to_string(g) + "," + std::to_string(p) + ") dim E1 " + std::to_string(e1.dim()) +
                  ", verdict " + to_string(v) + (same ? ", equals closure of {x, x†}" : ", differs from closure")};
}

Outcome ac5() {
  const ObstructionGraph graph = build_r4_graph(2, 2);
  const AlgebraPtr end = matrix_algebra(graph.base(), 2);
  const Subspace e1 = compute_obstruction(graph, 1);
  const bool unit_loop = graph.hom(1, 3) * graph.hom(3, 2) * graph.hom(2, 1) == DMatrix::identity(graph.base(), 2);
  const bool loops_generate =
      generates_fully(end, {AlgElement::unit(end), to_matrix_element(graph.hom(4, 2), end),
                            to_matrix_element(graph.hom(4, 3), end)});
  const bool ok = e1.is_full() && corner_detect(e1, end).is_full && unit_loop && loops_generate;
  return {ok, "dim E1 " + std::to_string(e1.dim()) + "/16"};
}

Outcome ac6() {
  Gen gen(6006);
  int good = 0, corners = 0, corners_kept = 0;
  for (int t = 0; t < 20; ++t) {
    const ObstructionGraph g = testing::random_graph(gen, testing::random_base(gen), 4, 2);
    const std::vector<Cover> covers = testing::random_covers(gen, g);
    const ObstructionGraph h = pullback_transform(g, covers);
    bool all = true;
    for (int v = 1; v <= g.r(); ++v) {
      const Subspace e = compute_obstruction(g, v);
      const Subspace e2 = compute_obstruction(h, v);
      if (!(transport_span(e, covers[static_cast<std::size_t>(v - 1)]) == e2)) all = false;
      if (corner_detect(e, matrix_algebra(g.base(), g.size(v))).is_corner) {
        ++corners;
        if (corner_detect(e2, matrix_algebra(h.base(), h.size(v))).is_corner) ++corners_kept;
      }
    }
    good += all ? 1 : 0;
  }
  return {good == 20 && corners_kept == corners && corners > 0,
          ratio(good, 20) + " graphs exact, corners transported " + ratio(corners_kept, corners)};
}

Outcome ac7() {
  Gen gen(7007);
  int good = 0;
  for (int t = 0; t < 20; ++t) {
    const AlgebraPtr base = testing::random_base(gen);
    const ObstructionGraph g = testing::random_graph(gen, base, 4, 2);
    const BaseHomomorphism h = conjugation_map(base, testing::random_unit(gen, base));
    const ObstructionGraph image = specialize_transform(g, h);
    bool all = true;
    for (int v = 1; v <= g.r(); ++v)
      if (!(map_span(compute_obstruction(g, v), h) == compute_obstruction(image, v))) all = false;
    good += all ? 1 : 0;
  }
  return {good == 20, ratio(good, 20) + " graphs exact"};
}

Outcome ac8() {
  int ramified_ok = 0;
  for (int p : {2, 3, 5, 7, 11, 13}) {
    const AlgebraPtr d = quaternion_for_prime(p);
    const auto& q = *d->quaternion_params();
    const std::vector<Place> expected{Place::prime(p), Place::infinity()};
    if (ramified_places(q.a, q.b) == expected) ++ramified_ok;
  }
  Gen gen(8008);
  int products = 0;
  for (int t = 0; t < 50; ++t) {
    Rational a, b;
    while (a == 0) a = gen.rational(60);
    while (b == 0) b = gen.rational(60);
    int product = 1;
    for (const Place& v : relevant_places(a, b)) product *= hilbert_symbol(a, b, v);
    products += product == 1 ? 1 : 0;
  }
  return {ramified_ok == 6 && products == 50,
          "ramified at {p, inf}: " + ratio(ramified_ok, 6) + ", product formula " + ratio(products, 50)};
}

Outcome ac9() {
  const AlgebraPtr m2 = matrix_algebra(quaternion_for_prime(2), 2);
  int good = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed)
    if (random_rosati_generator(m2, seed, 5, 10).witness) ++good;
  return {good >= 95, ratio(good, 100) + " seeds succeed within 5 tries (need >= 95)"};
}

Outcome ac10() {
  const MultiHomogPoly f = parse_poly("x1*x2*x3 - y1*y2*y3", 3);
  const bool parsed = f.terms().size() == 2 && f.degrees() == std::vector<int>{1, 1, 1};
  const bool contains = contains_double_fiber(f, 1, ProjectivePoint(0, 1), 2, ProjectivePoint(1, 0));
  const MultiHomogPoly cover = substitute_powers(f, {2, 2, 2});
  const bool splits = verify_factorization(cover, {f, parse_poly("x1*x2*x3 + y1*y2*y3", 3)});
  return {parsed && contains && splits, "pullback " + to_string(cover) + (splits ? " splits" : " does not split")};
}

Outcome ac11() {
  Gen gen(1111);
  int graphs = 0;
  for (int t = 0; t < 25; ++t) {
    const ObstructionGraph g = testing::random_graph(gen, testing::random_base(gen));
    const int v = gen.uniform(1, g.r());
    if (loop_oracle_stable(g, v).span == compute_obstruction(g, v)) ++graphs;
  }
  const std::vector<AlgebraPtr> algebras{quaternion_for_prime(2), quaternion_for_prime(7), split_model(1),
                                         split_model(2), matrix_algebra(quaternion_for_prime(3), 2),
                                         matrix_algebra(rationals(), 5), split_model(3)};
  int sets = 0;
  for (int t = 0; t < 50; ++t) {
    const AlgebraPtr a = algebras[static_cast<std::size_t>(gen.uniform(0, static_cast<int>(algebras.size()) - 1))];
    std::vector<AlgElement> gens;
    const int n = gen.uniform(1, 3);
    const int density = a->dim() > 16 ? 8 : 30;
    for (int k = 0; k < n; ++k) gens.push_back(gen.element(a, 3, density));
    if (subrng_closure(a, gens, {.allow_empty = true}).span == word_span_oracle_stable(a, gens).span) ++sets;
  }
  return {graphs == 25 && sets == 50, "graphs " + ratio(graphs, 25) + ", generator sets " + ratio(sets, 50)};
}

}  // namespace

int main() {
  Tally tally;
  tally.run("AC1", 1.0, ac1);
  tally.run("AC2", 30.0, ac2);
  tally.run("AC3", 0, ac3);
  tally.run("AC4a", 60.0, [] { return ac4_case(2, 2); });
  tally.run("AC4b", 60.0, [] { return ac4_case(2, 3); });
  tally.run("AC4c", 60.0, [] { return ac4_case(3, 2); });
  tally.run("AC5", 0, ac5);
  tally.run("AC6", 0, ac6);
  tally.run("AC7", 0, ac7);
  tally.run("AC8", 0, ac8);
  tally.run("AC9", 0, ac9);
  tally.run("AC10", 1.0, ac10);
  tally.run("AC11", 0, ac11);
  std::cout << (tally.failures() == 0 ? "ALL PASS" : std::to_string(tally.failures()) + " FAILED") << std::endl;
  return tally.failures() == 0 ? 0 : 1;
}
