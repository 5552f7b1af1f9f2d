#include "submax/base_search.hpp"

#include <algorithm>
#include <cmath>

namespace submax {

namespace {

double threshold_factor(int n, const SearchConfig& cfg) {
  return 1.0 + cfg.epsilon / std::pow(static_cast<double>(n),
                                      static_cast<double>(cfg.scaling_exponent));
}

// Matroid greedy by descending singleton value (ties by ascending id);
// always returns a base.
ElementSet greedy_base(const SubmodularOracle& f, const MatroidOracle& m) {
  std::vector<int> order(f.n());
  for (int i = 0; i < f.n(); ++i) order[i] = i;
  std::vector<double> singleton(f.n());
  for (int i = 0; i < f.n(); ++i)
    singleton[i] = f.evaluate(ElementSet{}.with(i));
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return singleton[a] > singleton[b];
  });
  ElementSet s;
  for (int e : order)
    if (m.is_independent(s.with(e))) s = s.with(e);
  return s;
}

}  // namespace

BaseConstraint make_base_constraint(MatroidPtr m) {
  BaseConstraint bc;
  bc.full_rank = m->full_rank();
  bc.matroid = std::move(m);
  return bc;
}

SolutionReport swap_base_search(const SubmodularOracle& f,
                                const BaseConstraint& bc,
                                const SearchConfig& cfg,
                                std::optional<ElementSet> start) {
  cfg.validate();
  const MatroidOracle& m = *bc.matroid;
  const int n = f.n();
  const double tau = threshold_factor(n, cfg);

  SolutionReport report;
  report.engine = "swap-base";
  report.ground_subset = f.ground().all();
  report.threshold_factor = tau;

  if (bc.full_rank == 0) {  // the empty set is the only base
    report.solution = ElementSet{};
    report.value = f.evaluate(report.solution);
    return report;
  }

  ElementSet s = start ? *start : greedy_base(f, m);
  if (s.count() != bc.full_rank || !m.is_independent(s))
    throw BadParamsError("swap search must start from a base");
  report.start = s;

  double value = f.evaluate(s);
  const auto req0 = f.eval_requests(), dis0 = f.distinct_evals();
  const std::uint64_t cap =
      cfg.move_cap ? cfg.move_cap : move_count_bound(n, tau);

  while (report.moves.size() < cap) {
    bool found = false;
    double best_value = 0;
    ElementSet best_result, best_added, best_removed;
    for (int d : BitRange(f.ground().all().minus(s))) {
      for (int e : BitRange(s)) {
        ElementSet result = s.without(e).with(d);
        if (!m.is_independent(result)) continue;
        double v = f.evaluate(result);
        if (v <= tau * value) continue;
        ElementSet added = ElementSet{}.with(d);
        ElementSet removed = ElementSet{}.with(e);
        if (!found || v > best_value ||
            (v == best_value && (lex_less(added, best_added) ||
                                 (added == best_added &&
                                  lex_less(removed, best_removed))))) {
          found = true;
          best_value = v;
          best_result = result;
          best_added = added;
          best_removed = removed;
        }
      }
    }
    if (!found) break;
    report.moves.push_back(Move{best_added, best_removed, value, best_value});
    s = best_result;
    value = best_value;
  }

  report.solution = s;
  report.value = value;
  report.calls = {f.eval_requests() - req0, f.distinct_evals() - dis0};
  return report;
}

SolutionReport two_base_search(const SubmodularOracle& f,
                               const BaseConstraint& bc,
                               const SearchConfig& cfg) {
  const MatroidOracle& m = *bc.matroid;
  if (bc.full_rank == 0) {
    SolutionReport report;
    report.engine = "two-base";
    report.ground_subset = f.ground().all();
    report.solution = ElementSet{};
    report.value = f.evaluate(report.solution);
    return report;
  }
  if (!find_two_disjoint_bases(m))
    throw NoTwoBasesError("matroid does not contain two disjoint bases");

  const auto req0 = f.eval_requests(), dis0 = f.distinct_evals();

  SolutionReport swap_phase = swap_base_search(f, bc, cfg);
  ElementSet s1 = swap_phase.solution;

  // Delete/exchange local search (single matroid) on the leftover ground.
  std::vector<MatroidPtr> single{bc.matroid};
  SolutionReport grow_phase =
      local_search(f, f.ground().all().minus(s1), single, cfg);
  ElementSet s2 = grow_phase.solution;

  auto bases = find_two_disjoint_bases(*contract(bc.matroid, s2));
  if (!bases)
    throw InternalContradictionError(
        "contraction lost the two-disjoint-bases property");

  SolutionReport report;
  report.engine = "two-base";
  report.ground_subset = f.ground().all();
  report.threshold_factor = swap_phase.threshold_factor;
  report.iterations.push_back(std::move(swap_phase));
  report.iterations.push_back(std::move(grow_phase));

  ElementSet candidates[3] = {s1, s2 | bases->first, s2 | bases->second};
  bool first = true;
  for (ElementSet c : candidates) {
    if (c.count() != bc.full_rank || !m.is_independent(c))
      throw InternalContradictionError("candidate is not a base");
    double v = f.evaluate(c);
    if (first || v > report.value ||
        (v == report.value && lex_less(c, report.solution))) {
      report.solution = c;
      report.value = v;
      first = false;
    }
  }
  report.calls = {f.eval_requests() - req0, f.distinct_evals() - dis0};
  return report;
}

SolutionReport exact_cardinality_search(const SubmodularOracle& f, int c,
                                        const SearchConfig& cfg) {
  const int n = f.n();
  if (c < 0 || c > n) throw BadParamsError("cardinality out of range");

  if (2 * c <= n) {
    auto bc = make_base_constraint(make_uniform(n, c));
    SolutionReport report = two_base_search(f, bc, cfg);
    report.engine = "exact-cardinality";
    return report;
  }

  // Solve the complement objective at the mirrored cardinality.
  OraclePtr g = complement_oracle(
      OraclePtr(&f, [](const SubmodularOracle*) {}));  // non-owning view
  auto bc = make_base_constraint(make_uniform(n, n - c));
  SolutionReport inner = two_base_search(*g, bc, cfg);

  SolutionReport report;
  report.engine = "exact-cardinality";
  report.ground_subset = f.ground().all();
  report.threshold_factor = inner.threshold_factor;
  report.solution = f.ground().all().minus(inner.solution);
  report.value = f.evaluate(report.solution);
  report.calls = inner.calls;
  report.notes.push_back("complemented");
  report.iterations.push_back(std::move(inner));
  return report;
}

}  // namespace submax
