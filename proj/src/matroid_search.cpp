#include "submax/matroid_search.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace submax {

namespace {

double threshold_factor(int n, const SearchConfig& cfg) {
  return 1.0 + cfg.epsilon / std::pow(static_cast<double>(n),
                                      static_cast<double>(cfg.scaling_exponent));
}

struct Candidate {
  bool found = false;
  double value = 0;
  ElementSet added;
  ElementSet removed;
  ElementSet result;

  void offer(double v, ElementSet add, ElementSet rem, ElementSet res) {
    if (!found || v > value ||
        (v == value && (lex_less(add, added) ||
                        (add == added && lex_less(rem, removed))))) {
      found = true;
      value = v;
      added = add;
      removed = rem;
      result = res;
    }
  }
};

ElementSet usable_elements(ElementSet ground_subset,
                           std::span<const MatroidPtr> matroids) {
  // Elements whose singleton violates some matroid can never enter any
  // feasible set; drop them up front.
  ElementSet usable;
  for (int v : BitRange(ground_subset)) {
    bool ok = true;
    for (const auto& m : matroids)
      if (!m->is_independent(ElementSet{}.with(v))) {
        ok = false;
        break;
      }
    if (ok) usable = usable.with(v);
  }
  return usable;
}

bool independent_in_all(ElementSet s, std::span<const MatroidPtr> matroids) {
  for (const auto& m : matroids)
    if (!m->is_independent(s)) return false;
  return true;
}

// Removal sets reachable by the single-add exchange: one displaced element
// (or none) per matroid.  Enumerated as the product of per-matroid
// candidate lists; a matroid already satisfied by S + d may displace any
// element of S or nothing, a violated one must displace an element of its
// conflict set.
template <typename Fn>
void for_each_exchange_removal(ElementSet s, int d,
                               std::span<const MatroidPtr> matroids, Fn&& fn) {
  ElementSet sd = s.with(d);
  const int k = static_cast<int>(matroids.size());
  std::vector<std::vector<int>> options(k);  // -1 encodes "displace nothing"
  for (int j = 0; j < k; ++j) {
    if (matroids[j]->is_independent(sd)) {
      options[j].push_back(-1);
      for (int e : BitRange(s)) options[j].push_back(e);
    } else {
      for (int e : BitRange(s))
        if (matroids[j]->is_independent(sd.without(e)))
          options[j].push_back(e);
      if (options[j].empty()) return;  // d cannot enter at all
    }
  }
  std::unordered_set<SetMask> seen;
  std::vector<int> pick(k, -1);
  auto rec = [&](auto&& self, int j) -> void {
    if (j == k) {
      ElementSet removed;
      for (int e : pick)
        if (e >= 0) removed = removed.with(e);
      if (seen.insert(removed.bits).second) fn(removed);
      return;
    }
    for (int e : options[j]) {
      pick[j] = e;
      self(self, j + 1);
    }
  };
  rec(rec, 0);
}

// Literal enumeration of the same neighborhood, kept for verification:
// every removal set R with |R| <= k admitting a per-matroid assignment
// whose displaced elements are exactly R.
template <typename Fn>
void for_each_exchange_removal_full(ElementSet s, int d,
                                    std::span<const MatroidPtr> matroids,
                                    Fn&& fn) {
  ElementSet sd = s.with(d);
  const int k = static_cast<int>(matroids.size());
  for (ElementSet r : SubsetsOf(s)) {
    if (r.count() > k) continue;
    std::vector<int> slots = r.ids();
    slots.push_back(-1);  // phi
    std::vector<int> pick(k, -1);
    bool admissible = false;
    auto rec = [&](auto&& self, int j) -> void {
      if (admissible) return;
      if (j == k) {
        ElementSet covered;
        for (int e : pick)
          if (e >= 0) covered = covered.with(e);
        if (covered == r) admissible = true;
        return;
      }
      for (int e : slots) {
        ElementSet probe = e >= 0 ? sd.without(e) : sd;
        if (!matroids[j]->is_independent(probe)) continue;
        pick[j] = e;
        self(self, j + 1);
        if (admissible) return;
      }
    };
    rec(rec, 0);
    if (admissible) fn(r);
  }
}

SolutionReport empty_report(const SubmodularOracle& f, ElementSet ground_subset,
                            double tau, const char* engine) {
  SolutionReport report;
  report.engine = engine;
  report.ground_subset = ground_subset;
  report.threshold_factor = tau;
  report.solution = ElementSet{};
  report.value = f.evaluate(ElementSet{});
  return report;
}

int best_singleton(const SubmodularOracle& f, ElementSet usable) {
  int best = -1;
  double best_value = 0;
  for (int v : BitRange(usable)) {
    double value = f.evaluate(ElementSet{}.with(v));
    if (value > best_value) {
      best_value = value;
      best = v;
    }
  }
  return best;  // -1 when every feasible singleton has value zero
}

}  // namespace

std::uint64_t move_count_bound(int n, double tau) {
  double bound = std::ceil(std::log(static_cast<double>(std::max(n, 2))) /
                           std::log(tau));
  return static_cast<std::uint64_t>(bound) + 1;
}

SolutionReport local_search(const SubmodularOracle& f, ElementSet ground_subset,
                            std::span<const MatroidPtr> matroids,
                            const SearchConfig& cfg) {
  cfg.validate();
  if (matroids.empty()) throw BadParamsError("at least one matroid required");
  const int n = f.n();
  const double tau = threshold_factor(n, cfg);
  const std::uint64_t cap =
      cfg.move_cap ? cfg.move_cap : move_count_bound(n, tau);

  ElementSet usable = usable_elements(ground_subset, matroids);
  int v0 = best_singleton(f, usable);
  if (v0 < 0) return empty_report(f, ground_subset, tau, "local-search");

  SolutionReport report;
  report.engine = "local-search";
  report.ground_subset = ground_subset;
  report.threshold_factor = tau;
  report.start = ElementSet{}.with(v0);

  ElementSet s = report.start;
  double value = f.evaluate(s);
  const auto req0 = f.eval_requests(), dis0 = f.distinct_evals();

  while (report.moves.size() < cap) {
    Candidate best;
    for (int e : BitRange(s)) {  // delete moves
      double v = f.evaluate(s.without(e));
      if (v >= tau * value)
        best.offer(v, ElementSet{}, ElementSet{}.with(e), s.without(e));
    }
    for (int d : BitRange(usable.minus(s))) {  // exchange moves
      auto try_removed = [&](ElementSet removed) {
        ElementSet result = s.minus(removed).with(d);
        double v = f.evaluate(result);
        if (v > tau * value)
          best.offer(v, ElementSet{}.with(d), removed, result);
      };
      if (cfg.exchange_mode == SearchConfig::ExchangeMode::kFullEnumeration) {
        for_each_exchange_removal_full(s, d, matroids, try_removed);
      } else {
        for_each_exchange_removal(s, d, matroids, try_removed);
      }
    }
    if (!best.found) break;
    report.moves.push_back(Move{best.added, best.removed, value, best.value});
    s = best.result;
    value = best.value;
  }

  report.solution = s;
  report.value = value;
  report.calls = {f.eval_requests() - req0, f.distinct_evals() - dis0};
  return report;
}

SolutionReport repeated_local_search(const SubmodularOracle& f,
                                     std::span<const MatroidPtr> matroids,
                                     const SearchConfig& cfg) {
  const int k = static_cast<int>(matroids.size());
  SolutionReport overall;
  overall.engine = "repeated-local-search";
  overall.ground_subset = f.ground().all();
  const auto req0 = f.eval_requests(), dis0 = f.distinct_evals();

  ElementSet remaining = f.ground().all();
  int best = -1;
  for (int i = 0; i <= k; ++i) {
    SolutionReport round = local_search(f, remaining, matroids, cfg);
    remaining = remaining.minus(round.solution);
    overall.iterations.push_back(std::move(round));
    if (best < 0 || overall.iterations[i].value > overall.iterations[best].value)
      best = i;
  }
  overall.solution = overall.iterations[best].solution;
  overall.value = overall.iterations[best].value;
  overall.threshold_factor = overall.iterations[best].threshold_factor;
  overall.calls = {f.eval_requests() - req0, f.distinct_evals() - dis0};
  return overall;
}

SolutionReport symmetric_local_search(const SubmodularOracle& f,
                                      std::span<const MatroidPtr> matroids,
                                      const SearchConfig& cfg) {
  SolutionReport report = local_search(f, f.ground().all(), matroids, cfg);
  report.engine = "symmetric-local-search";
  return report;
}

SolutionReport p_exchange_search(const SubmodularOracle& f,
                                 std::span<const MatroidPtr> matroids,
                                 const SearchConfig& cfg,
                                 ElementSet ground_subset) {
  cfg.validate();
  const int k = static_cast<int>(matroids.size());
  if (k < 2) throw BadParamsError("p-exchange search requires k >= 2");
  std::vector<PartitionView> views;
  for (const auto& m : matroids) {
    auto view = as_partition(*m);
    if (!view) throw NotPartitionError("p-exchange requires partition matroids");
    views.push_back(*view);
  }

  const int n = f.n();
  const double tau = threshold_factor(n, cfg);
  const std::uint64_t cap =
      cfg.move_cap ? cfg.move_cap : move_count_bound(n, tau);

  ElementSet usable = usable_elements(ground_subset, matroids);
  int v0 = best_singleton(f, usable);
  if (v0 < 0) return empty_report(f, ground_subset, tau, "p-exchange");

  SolutionReport report;
  report.engine = "p-exchange";
  report.ground_subset = ground_subset;
  report.threshold_factor = tau;
  report.start = ElementSet{}.with(v0);

  ElementSet s = report.start;
  double value = f.evaluate(s);
  const auto req0 = f.eval_requests(), dis0 = f.distinct_evals();

  // Total per-matroid part overflow of a candidate S u A; a removal set can
  // fix at most its own size, so anything deeper than (k-1)|A| is hopeless.
  auto overflow = [&](ElementSet sa, const PartitionView& view) {
    thread_local std::vector<int> counts;
    counts.assign(view.capacities->size(), 0);
    for (int e : BitRange(sa)) ++counts[(*view.part_of)[e]];
    int over = 0;
    for (size_t p = 0; p < counts.size(); ++p)
      over += std::max(0, counts[p] - (*view.capacities)[p]);
    return over;
  };

  while (report.moves.size() < cap) {
    Candidate best;
    for (int e : BitRange(s)) {
      double v = f.evaluate(s.without(e));
      if (v >= tau * value)
        best.offer(v, ElementSet{}, ElementSet{}.with(e), s.without(e));
    }
    for (ElementSet a : SubsetsOf(usable.minus(s))) {
      const int q = a.count();
      if (q < 1 || q > cfg.p) continue;
      const int max_drop = (k - 1) * q;
      ElementSet sa = s | a;
      bool hopeless = false;
      for (const auto& view : views)
        if (overflow(sa, view) > max_drop) {
          hopeless = true;
          break;
        }
      if (hopeless) continue;
      for (ElementSet r : SubsetsOf(s)) {
        if (r.count() > max_drop) continue;
        ElementSet result = sa.minus(r);
        if (!independent_in_all(result, matroids)) continue;
        double v = f.evaluate(result);
        if (v > tau * value) best.offer(v, a, r, result);
      }
    }
    if (!best.found) break;
    report.moves.push_back(Move{best.added, best.removed, value, best.value});
    s = best.result;
    value = best.value;
  }

  report.solution = s;
  report.value = value;
  report.calls = {f.eval_requests() - req0, f.distinct_evals() - dis0};
  return report;
}

SolutionReport p_exchange_search(const SubmodularOracle& f,
                                 std::span<const MatroidPtr> matroids,
                                 const SearchConfig& cfg) {
  return p_exchange_search(f, matroids, cfg, f.ground().all());
}

SolutionReport partition_search(const SubmodularOracle& f,
                                std::span<const MatroidPtr> matroids,
                                double epsilon, bool monotone) {
  if (epsilon <= 0) throw BadParamsError("epsilon must be > 0");
  const int k = static_cast<int>(matroids.size());
  if (k < 2) throw BadParamsError("partition search requires k >= 2");
  SearchConfig cfg;
  cfg.epsilon = epsilon;
  cfg.p = 1 + static_cast<int>(std::ceil(2.0 * k / epsilon));

  if (monotone) {
    SolutionReport report = p_exchange_search(f, matroids, cfg);
    report.engine = "partition-search";
    report.notes.push_back("p=" + std::to_string(cfg.p));
    return report;
  }

  SolutionReport overall;
  overall.engine = "partition-search";
  overall.ground_subset = f.ground().all();
  overall.notes.push_back("p=" + std::to_string(cfg.p));
  const auto req0 = f.eval_requests(), dis0 = f.distinct_evals();
  ElementSet remaining = f.ground().all();
  int best = -1;
  for (int i = 0; i < k; ++i) {
    SolutionReport round = p_exchange_search(f, matroids, cfg, remaining);
    remaining = remaining.minus(round.solution);
    overall.iterations.push_back(std::move(round));
    if (best < 0 || overall.iterations[i].value > overall.iterations[best].value)
      best = i;
  }
  overall.solution = overall.iterations[best].solution;
  overall.value = overall.iterations[best].value;
  overall.threshold_factor = overall.iterations[best].threshold_factor;
  overall.calls = {f.eval_requests() - req0, f.distinct_evals() - dis0};
  return overall;
}

SolutionReport greedy_baseline(const SubmodularOracle& f,
                               std::span<const MatroidPtr> matroids) {
  SolutionReport report;
  report.engine = "greedy";
  report.ground_subset = f.ground().all();
  const auto req0 = f.eval_requests(), dis0 = f.distinct_evals();

  ElementSet s;
  double value = f.evaluate(s);
  while (true) {
    int best = -1;
    double best_value = value;
    for (int e : BitRange(f.ground().all().minus(s))) {
      if (!independent_in_all(s.with(e), matroids)) continue;
      double v = f.evaluate(s.with(e));
      if (v > best_value) {
        best_value = v;
        best = e;
      }
    }
    if (best < 0) break;
    report.moves.push_back(
        Move{ElementSet{}.with(best), ElementSet{}, value, best_value});
    s = s.with(best);
    value = best_value;
  }
  report.solution = s;
  report.value = value;
  report.calls = {f.eval_requests() - req0, f.distinct_evals() - dis0};
  return report;
}

}  // namespace submax
