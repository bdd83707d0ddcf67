#include "obstructor/witness.hpp"

#include "obstructor/closure.hpp"
#include "obstructor/errors.hpp"

namespace obstructor {

AlgElement matrix_unit(const AlgebraPtr& split, int g, int row, int col) {
  const int n = 2 * g;
  if (row < 1 || row > n || col < 1 || col > n) throw InvalidArgument("matrix_unit: index out of range");
  return AlgElement::basis(split, (row - 1) * n + (col - 1));
}

AlgElement shift_witness(int g) {
  if (g < 2) throw InvalidArgument("shift_witness: g must be >= 2 (x and x† commute when g = 1)");
  const auto split = split_model(g);
  AlgElement x = AlgElement::zero(split);
  for (int i = 1; i < 2 * g; ++i) x = x + matrix_unit(split, g, i, i + 1);
  return x;
}

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "PASS";
    case CheckStatus::Fail:
      return "FAIL";
    case CheckStatus::SignDiscrepancy:
      return "PAPER-DISCREPANCY";
  }
  return "FAIL";
}

ChainReport verify_identity_chain(int g) {
  if (g < 2) throw InvalidArgument("verify_identity_chain: g must be >= 2");
  const int n = 2 * g;
  const AlgElement x = shift_witness(g);
  const AlgebraPtr& split = x.algebra();
  auto e = [&](int i, int j) { return matrix_unit(split, g, i, j); };

  ChainReport report;
  report.g = g;
  auto check = [&](std::string name, const AlgElement& expected, const AlgElement& computed) {
    const CheckStatus status = expected == computed ? CheckStatus::Pass : CheckStatus::Fail;
    report.checks.push_back({std::move(name), format_element(expected), format_element(computed), status});
    return status;
  };

  const AlgElement xd = apply_involution(x);
  const AlgElement a = power(x, n - 1);
  const AlgElement x_low = power(x, n - 3);
  const AlgElement b = power(xd, n - 3);

  check("x^{2g-1} = e_{1,2g}", e(1, n), a);
  check("x^{2g-3} = e_{1,2g-2} + e_{2,2g-1} + e_{3,2g}", e(1, n - 2) + e(2, n - 1) + e(3, n), x_low);
  check("(x^dagger)^{2g-3} = (x^{2g-3})^dagger", apply_involution(x_low), b);
  check("(x^{2g-3})^dagger = -(e_{2g-3,2} + e_{2g,1} + e_{2g-1,4})", -(e(n - 3, 2) + e(n, 1) + e(n - 1, 4)), b);
  check("ab = -e_{1,1}", -e(1, 1), a * b);

  const AlgElement bab = b * a * b;
  const AlgElement bab_displayed = -e(n, 1);
  const CheckStatus bab_status = check("bab = -e_{2g,1}", bab_displayed, bab);
  if (bab_status == CheckStatus::Fail && bab == e(n, 1))
    report.checks.back().status = CheckStatus::SignDiscrepancy;

  AlgElement rho = e(n, 1);
  for (int i = 2; i <= n; ++i) rho = rho + e(i - 1, i);
  const CheckStatus rho_status = check("x - bab = rho (e_i -> e_{i-1}, e_1 -> e_{2g})", rho, x - bab);
  if (rho_status == CheckStatus::Fail && x - bab_displayed == rho &&
      report.checks[report.checks.size() - 2].status == CheckStatus::SignDiscrepancy)
    report.checks.back().status = CheckStatus::SignDiscrepancy;

  // ρ^s e_11 ρ^t over all s, t span M_2g.
  {
    std::vector<AlgElement> powers{AlgElement::unit(split)};
    for (int k = 1; k < n; ++k) powers.push_back(powers.back() * rho);
    std::vector<RatVector> rows;
    for (const auto& left : powers)
      for (const auto& right : powers) rows.push_back((left * e(1, 1) * right).coeffs());
    const Index dim = echelonize(rows, split->dim()).dim();
    report.checks.push_back({"span{rho^s e_{1,1} rho^t} = M_{2g}", std::to_string(split->dim()),
                             std::to_string(dim), dim == split->dim() ? CheckStatus::Pass : CheckStatus::Fail});
  }
  {
    const Index dim = subrng_closure(split, {x - bab, a * b}).span.dim();
    report.checks.push_back({"rng<x - bab, ab> = M_{2g} (computed bab)", std::to_string(split->dim()),
                             std::to_string(dim), dim == split->dim() ? CheckStatus::Pass : CheckStatus::Fail});
  }

  report.closure_dim = subrng_closure(split, {x, xd}).span.dim();
  report.oracle_dim = word_span_oracle_stable(split, {x, xd}).span.dim();
  report.generates = report.closure_dim == split->dim() && report.oracle_dim == split->dim();
  return report;
}

AlgElement random_element(const AlgebraPtr& algebra, std::mt19937_64& rng, int bound) {
  if (bound < 0) throw InvalidArgument("random_element: bound must be >= 0");
  const auto width = static_cast<std::uint64_t>(2 * bound + 1);
  RatVector c(algebra->dim());
  for (Index k = 0; k < c.size(); ++k) c[k] = static_cast<long>(rng() % width) - bound;
  return {algebra, c};
}

GeneratorSearch random_rosati_generator(const AlgebraPtr& algebra, std::uint64_t seed, int max_tries,
                                        int coeff_bound) {
  if (!algebra->has_involution()) throw InvalidArgument("random_rosati_generator: algebra has no involution");
  std::mt19937_64 rng(seed);
  GeneratorSearch out;
  while (out.tries < max_tries) {
    ++out.tries;
    const AlgElement x = random_element(algebra, rng, coeff_bound);
    if (generates_fully(algebra, {x, apply_involution(x)})) {
      out.witness = x;
      return out;
    }
  }
  return out;
}

ObstructionGraph build_r3_graph(int g, const Integer& p, std::uint64_t seed) {
  if (g < 2) throw InvalidArgument("build_r3_graph: g must be >= 2");
  const AlgebraPtr base = quaternion_for_prime(p);
  const AlgebraPtr end = matrix_algebra(base, g);
  const GeneratorSearch search = random_rosati_generator(end, seed);
  if (!search.witness)
    throw SearchFailed("build_r3_graph: no Rosati generator found in " + end->name(), search.tries);
  const DMatrix one = DMatrix::identity(base, g);
  ObstructionGraph::EdgeMap edges;
  edges.emplace(std::make_pair(1, 2), from_matrix_element(*search.witness, base, g));
  edges.emplace(std::make_pair(1, 3), one);
  edges.emplace(std::make_pair(2, 3), one);
  return ObstructionGraph(base, {g, g, g}, std::move(edges));
}

AlbertPair find_albert_pair(const AlgebraPtr& algebra, std::uint64_t seed, int max_tries, int coeff_bound) {
  std::mt19937_64 rng(seed);
  const AlgElement one = AlgElement::unit(algebra);
  for (int tries = 1; tries <= max_tries; ++tries) {
    AlgElement x = random_element(algebra, rng, coeff_bound);
    AlgElement y = random_element(algebra, rng, coeff_bound);
    if (generates_fully(algebra, {one, x, y})) return {std::move(x), std::move(y), tries};
  }
  throw SearchFailed("find_albert_pair: no generating pair found in " + algebra->name(), max_tries);
}

ObstructionGraph build_r4_graph(int g, const Integer& p, std::uint64_t seed) {
  if (g < 1) throw InvalidArgument("build_r4_graph: g must be >= 1");
  const AlgebraPtr base = quaternion_for_prime(p);
  const AlgebraPtr end = matrix_algebra(base, g);
  const AlbertPair pair = find_albert_pair(end, seed);
  const DMatrix one = DMatrix::identity(base, g);
  ObstructionGraph::EdgeMap edges;
  for (auto key : {std::make_pair(1, 2), std::make_pair(1, 3), std::make_pair(1, 4), std::make_pair(2, 3)})
    edges.emplace(key, one);
  edges.emplace(std::make_pair(2, 4), from_matrix_element(pair.x, base, g));
  edges.emplace(std::make_pair(3, 4), from_matrix_element(pair.y, base, g));
  return ObstructionGraph(base, {g, g, g, g}, std::move(edges));
}

}  // namespace obstructor
