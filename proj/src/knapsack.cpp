#include "submax/knapsack.hpp"

#include <algorithm>
#include <cmath>

#include "submax/rng.hpp"

namespace submax {

namespace {
constexpr double kFeasTol = 1e-9;
}

KnapsackSystem::KnapsackSystem(std::vector<std::vector<double>> w)
    : weights(std::move(w)) {
  if (weights.empty()) throw BadParamsError("at least one knapsack required");
  size_t n_cols = weights.front().size();
  for (const auto& row : weights) {
    if (row.size() != n_cols) throw BadParamsError("ragged weight matrix");
    for (double v : row) {
      if (v < 0) throw NegativeWeightError("negative knapsack weight");
      if (v > 1 + kFeasTol)
        throw BadParamsError(
            "infeasible singleton: weights must be <= the unit capacity");
    }
  }
}

KnapsackSystem KnapsackSystem::normalized(std::vector<std::vector<double>> w,
                                          const std::vector<double>& caps) {
  if (caps.size() != w.size())
    throw BadParamsError("one capacity per knapsack required");
  for (size_t s = 0; s < w.size(); ++s) {
    if (caps[s] <= 0) throw BadParamsError("capacities must be positive");
    for (double& v : w[s]) v /= caps[s];
  }
  return KnapsackSystem(std::move(w));
}

double KnapsackSystem::load(int s, ElementSet set) const {
  double total = 0;
  for (int e : BitRange(set)) total += weights[s][e];
  return total;
}

double KnapsackSystem::load(int s, std::span<const double> y) const {
  double total = 0;
  for (size_t i = 0; i < y.size(); ++i) total += weights[s][i] * y[i];
  return total;
}

bool KnapsackSystem::feasible(ElementSet set, double tol) const {
  for (int s = 0; s < k(); ++s)
    if (load(s, set) > 1 + tol) return false;
  return true;
}

bool KnapsackSystem::feasible(std::span<const double> y, double tol) const {
  for (int s = 0; s < k(); ++s)
    if (load(s, y) > 1 + tol) return false;
  return true;
}

double FracSearchConfig::resolve_zeta(int n) const {
  if (zeta > 0) return zeta;
  double nn = static_cast<double>(n);
  return faithful_grid ? 1.0 / (8 * nn * nn * nn * nn) : 1.0 / (4 * nn * nn);
}

double FracSearchConfig::resolve_epsilon(int n) const {
  if (epsilon > 0) return epsilon;
  return delta_outer / (static_cast<double>(n) * n);
}

namespace {

struct Grid {
  double step;

  explicit Grid(double zeta) : step(zeta) {
    double inv = 1.0 / zeta;
    if (std::abs(inv - std::round(inv)) > 1e-6)
      throw BadGridError("1/zeta must be an integer");
  }
  double floor_to(double v) const {
    double g = std::floor(v / step + 1e-9) * step;
    return std::clamp(g, 0.0, 1.0);
  }
};

class FractionalSearch {
 public:
  FractionalSearch(const SubmodularOracle& f, const KnapsackSystem& ks,
                   std::span<const double> upper, const FracSearchConfig& cfg)
      : f_(f),
        ks_(ks),
        upper_(upper.begin(), upper.end()),
        cfg_(cfg),
        n_(f.n()),
        grid_(cfg.resolve_zeta(f.n())),
        eps_(cfg.resolve_epsilon(f.n())),
        eval_(f, cfg.exact_max_fractional, cfg.mc_samples, cfg.seed) {
    if (ks_.n() != n_) throw BadParamsError("knapsack dimension mismatch");
    if (static_cast<int>(upper_.size()) != n_)
      throw BadParamsError("upper-bound dimension mismatch");
    for (double u : upper_)
      if (!(u >= 0.0 && u <= 1.0))
        throw BadParamsError("upper bounds must lie in [0, 1]");
  }

  FractionalPoint run() {
    int a = -1;
    double best = 0;
    for (int i = 0; i < n_; ++i) {
      double term = upper_[i] * f_.evaluate(ElementSet{}.with(i));
      if (term > best) {
        best = term;
        a = i;
      }
    }
    y_.assign(n_, 0.0);
    if (a >= 0) {  // no positive weighted singleton: stay at the origin
      y_[a] = upper_[a];
      fy_ = eval_(y_);
      std::uint64_t cap = cfg_.move_cap
                              ? cfg_.move_cap
                              : static_cast<std::uint64_t>(std::ceil(
                                    std::log(2.0 * n_) / std::log1p(eps_))) +
                                    3;
      std::uint64_t moves = 0;
      bool restricted = cfg_.move_mode == FracSearchConfig::MoveMode::kRestricted;
      while (moves < cap) {
        if (scan_and_apply(restricted)) {
          ++moves;
          continue;
        }
        // A restricted optimum is confirmed (or escaped) with a full scan.
        if (restricted && cfg_.polish_full_grid && scan_and_apply(false)) {
          ++moves;
          continue;
        }
        break;
      }
    }
    FractionalPoint out;
    out.coords = y_;
    out.grid_step = grid_.step;
    out.upper = upper_;
    return out;
  }

 private:
  struct Best {
    bool found = false;
    double value = 0;
    std::vector<double> point;
  };

  // One neighborhood scan; applies the best admissible move, if any.
  bool scan_and_apply(bool restricted) {
    Best best;
    std::vector<int> support, raisable;
    for (int i = 0; i < n_; ++i) {
      if (y_[i] > 0) support.push_back(i);
      if (y_[i] < upper_[i] - 1e-12) raisable.push_back(i);
    }
    const int k = ks_.k();

    // All subsets of `support` of size <= k, by index recursion.
    std::vector<int> drop;
    auto drop_sets = [&](auto&& self, size_t from) -> void {
      probe_with_drops(drop, restricted, best);
      if (static_cast<int>(drop.size()) == k) return;
      for (size_t i = from; i < support.size(); ++i) {
        drop.push_back(support[i]);
        self(self, i + 1);
        drop.pop_back();
      }
    };
    drop_sets(drop_sets, 0);

    if (!best.found) return false;
    y_ = best.point;
    fy_ = best.value;
    return true;
  }

  // Enumerates value assignments for the chosen drop set, then raises.
  void probe_with_drops(const std::vector<int>& drop, bool restricted,
                        Best& best) {
    std::vector<std::vector<double>> choices(drop.size());
    for (size_t i = 0; i < drop.size(); ++i) {
      double cur = y_[drop[i]];
      if (restricted) {
        choices[i].push_back(0.0);
        double down = grid_.floor_to(cur - grid_.step * 0.5);
        if (down > 0 && down < cur - 1e-12) choices[i].push_back(down);
      } else {
        for (double v = 0;; v += grid_.step) {
          if (v >= cur - 1e-12) break;
          choices[i].push_back(v);
        }
      }
    }
    std::vector<double> work = y_;
    auto rec = [&](auto&& self, size_t i) -> void {
      if (i == drop.size()) {
        enumerate_raises(work, !drop.empty(), restricted, best);
        return;
      }
      for (double v : choices[i]) {
        work[drop[i]] = v;
        self(self, i + 1);
      }
      work[drop[i]] = y_[drop[i]];
    };
    rec(rec, 0);
  }

  void enumerate_raises(std::vector<double>& work, bool dropped,
                        bool restricted, Best& best) {
    // Pure-drop candidate (raise set empty) only makes sense if something
    // was dropped.
    if (dropped) offer(work, best);

    const int k = ks_.k();
    std::vector<double> residual(k);
    for (int s = 0; s < k; ++s) residual[s] = 1.0 - ks_.load(s, work);

    // Recursive choice of raise coordinates and values, ascending id.
    auto choose = [&](auto&& self, int from, int depth) -> void {
      for (int a = from; a < n_; ++a) {
        double cur = work[a];
        if (cur >= upper_[a] - 1e-12) continue;
        // Highest value a can take given the other coordinates.
        double vmax = upper_[a];
        for (int s = 0; s < k; ++s) {
          double w = ks_.weights[s][a];
          if (w > 0) vmax = std::min(vmax, cur + residual[s] / w);
        }
        if (vmax <= cur + 1e-12) continue;
        std::vector<double> opts;
        if (restricted) {
          if (vmax >= upper_[a] - 1e-12) opts.push_back(upper_[a]);
          double g = grid_.floor_to(vmax);
          if (g > cur + 1e-12 && (opts.empty() || g < opts.front() - 1e-12))
            opts.push_back(g);
        } else {
          for (double v = grid_.floor_to(vmax);; v -= grid_.step) {
            if (v <= cur + 1e-12) break;
            opts.push_back(v);
          }
          if (vmax >= upper_[a] - 1e-12 &&
              std::abs(grid_.floor_to(upper_[a]) - upper_[a]) > 1e-12)
            opts.push_back(upper_[a]);
        }
        for (double v : opts) {
          double delta = v - cur;
          work[a] = v;
          for (int s = 0; s < k; ++s)
            residual[s] -= ks_.weights[s][a] * delta;
          offer(work, best);
          if (depth + 1 < ks_.k()) self(self, a + 1, depth + 1);
          work[a] = cur;
          for (int s = 0; s < k; ++s)
            residual[s] += ks_.weights[s][a] * delta;
        }
      }
    };
    choose(choose, 0, 0);
  }

  void offer(const std::vector<double>& candidate, Best& best) {
    if (!ks_.feasible(candidate, kFeasTol)) return;
    double v = eval_(candidate);
    if (v <= (1.0 + eps_) * fy_) return;
    if (!best.found || v > best.value) {
      best.found = true;
      best.value = v;
      best.point = candidate;
    }
  }

  const SubmodularOracle& f_;
  const KnapsackSystem& ks_;
  std::vector<double> upper_;
  FracSearchConfig cfg_;
  int n_;
  Grid grid_;
  double eps_;
  FEvaluator eval_;
  std::vector<double> y_;
  double fy_ = 0;
};

}  // namespace

FractionalPoint fractional_local_search(const SubmodularOracle& f,
                                        const KnapsackSystem& ks,
                                        std::span<const double> upper,
                                        const FracSearchConfig& cfg) {
  return FractionalSearch(f, ks, upper, cfg).run();
}

FractionalSolve solve_fractional(const SubmodularOracle& f,
                                 const KnapsackSystem& ks,
                                 const FracSearchConfig& cfg) {
  return solve_fractional(f, ks, cfg, f.ground().all());
}

FractionalSolve solve_fractional(const SubmodularOracle& f,
                                 const KnapsackSystem& ks,
                                 const FracSearchConfig& cfg,
                                 ElementSet allowed) {
  const int n = f.n();
  const auto req0 = f.eval_requests(), dis0 = f.distinct_evals();
  FEvaluator eval(f, cfg.exact_max_fractional, cfg.mc_samples, cfg.seed);

  std::vector<double> u1(n, 0.0);
  for (int e : BitRange(allowed)) u1[e] = 1.0;

  FractionalSolve out;
  out.phase1 = fractional_local_search(f, ks, u1, cfg);

  std::vector<double> u2(n, 0.0);
  for (int e : BitRange(allowed))
    u2[e] = std::max(0.0, 1.0 - out.phase1.coords[e]);
  out.phase2 = fractional_local_search(f, ks, u2, cfg);

  double best_single = -1;
  for (int e : BitRange(allowed)) {
    double v = f.evaluate(ElementSet{}.with(e));
    if (v > best_single) {
      best_single = v;
      out.best_singleton = e;
    }
  }

  double v1 = eval(out.phase1.coords);
  double v2 = eval(out.phase2.coords);
  out.point = out.phase1;
  out.value = v1;
  out.winner = 0;
  if (v2 > out.value) {
    out.point = out.phase2;
    out.value = v2;
    out.winner = 1;
  }
  if (out.best_singleton >= 0 && best_single > out.value) {
    out.point = FractionalPoint::indicator(
        ElementSet{}.with(out.best_singleton), n);
    out.point.grid_step = out.phase1.grid_step;
    out.value = best_single;
    out.winner = 2;
  }
  out.calls = {f.eval_requests() - req0, f.distinct_evals() - dis0};
  return out;
}

std::pair<ElementSet, ElementSet> classify_heavy_light(const KnapsackSystem& ks,
                                                       double delta_heavy) {
  if (!(delta_heavy > 0 && delta_heavy <= 1))
    throw BadParamsError("heavy threshold must be in (0, 1]");
  ElementSet heavy;
  for (int i = 0; i < ks.n(); ++i)
    for (int s = 0; s < ks.k(); ++s)
      if (ks.weights[s][i] >= delta_heavy) {
        heavy = heavy.with(i);
        break;
      }
  return {heavy, ElementSet::full(ks.n()).minus(heavy)};
}

SolutionReport enumerate_heavy(const SubmodularOracle& f,
                               const KnapsackSystem& ks, ElementSet heavy,
                               int cap) {
  SolutionReport report;
  report.engine = "heavy-enumeration";
  report.ground_subset = heavy;
  report.solution = ElementSet{};
  report.value = f.evaluate(ElementSet{});
  const auto req0 = f.eval_requests(), dis0 = f.distinct_evals();

  std::vector<int> pool = heavy.ids();
  ElementSet chosen;
  auto rec = [&](auto&& self, size_t from) -> void {
    if (!chosen.empty()) {
      if (ks.feasible(chosen)) {
        double v = f.evaluate(chosen);
        if (v > report.value ||
            (v == report.value && lex_less(chosen, report.solution))) {
          report.value = v;
          report.solution = chosen;
        }
      }
    }
    if (chosen.count() >= cap) return;
    for (size_t i = from; i < pool.size(); ++i) {
      chosen = chosen.with(pool[i]);
      self(self, i + 1);
      chosen = chosen.without(pool[i]);
    }
  };
  if (cap > 0) rec(rec, 0);
  report.calls = {f.eval_requests() - req0, f.distinct_evals() - dis0};
  return report;
}

RoundingReport randomized_round(const SubmodularOracle& f,
                                const FractionalPoint& x,
                                const KnapsackSystem& ks, double eps_round,
                                std::uint64_t trials, std::uint64_t seed) {
  if (trials < 1) throw BadParamsError("trials must be >= 1");
  if (eps_round < 0 || eps_round > 1)
    throw BadParamsError("eps_round must be in [0, 1]");
  if (!ks.feasible(x.coords, 1e-6))
    throw BadParamsError("rounding requires a feasible fractional point");

  RoundingReport out;
  out.trials = trials;
  out.best.engine = "randomized-round";
  out.best.ground_subset = ElementSet::full(ks.n());
  out.best.solution = ElementSet{};
  out.best.value = f.evaluate(ElementSet{});

  const auto req0 = f.eval_requests(), dis0 = f.distinct_evals();
  double sum = 0;
  bool have_best = false;
  for (std::uint64_t t = 0; t < trials; ++t) {
    ElementSet draw;
    for (int i = 0; i < ks.n(); ++i) {
      double p = (1.0 - eps_round) * x.coords[i];
      if (p > 0 && rng::uniform01(seed, t, i) < p) draw = draw.with(i);
    }
    if (!ks.feasible(draw)) {
      ++out.failures;  // scores zero
      continue;
    }
    double v = f.evaluate(draw);
    sum += v;
    if (!have_best || v > out.best.value) {
      have_best = true;
      out.best.value = v;
      out.best.solution = draw;
    }
  }
  out.mean_value = sum / static_cast<double>(trials);
  out.best.calls = {f.eval_requests() - req0, f.distinct_evals() - dis0};
  return out;
}

SolutionReport knapsack_solver(const SubmodularOracle& f,
                               const KnapsackSystem& ks, double eta,
                               const FracSearchConfig& cfg) {
  if (eta <= 0) throw BadParamsError("eta must be > 0");
  const double c = 16.0 / eta;
  const double kk = static_cast<double>(ks.k());
  const double delta = cfg.heavy_delta > 0
                           ? cfg.heavy_delta
                           : 1.0 / (4.0 * c * c * c * kk * kk * kk * kk);
  auto [heavy, light] = classify_heavy_light(ks, std::min(delta, 1.0));

  const double cap_needed = kk / delta;
  const int cap = static_cast<int>(
      std::min<double>(cfg.heavy_cap, std::max(0.0, cap_needed)));

  SolutionReport report;
  report.engine = "knapsack";
  report.ground_subset = f.ground().all();
  const auto req0 = f.eval_requests(), dis0 = f.distinct_evals();

  SolutionReport heavy_branch = enumerate_heavy(f, ks, heavy, cap);
  report.solution = heavy_branch.solution;
  report.value = heavy_branch.value;
  report.notes.push_back("delta=" + std::to_string(delta));
  if (cap_needed > cap && !heavy.empty())
    report.notes.push_back("guarantee-conditional: heavy cap truncated");

  if (!light.empty()) {
    FractionalSolve frac = solve_fractional(f, ks, cfg, light);
    const double eps_round =
        cfg.eps_round >= 0 ? cfg.eps_round : 1.0 / (c * kk);
    RoundingReport rounded = randomized_round(f, frac.point, ks, eps_round,
                                              cfg.trials, cfg.seed);
    if (rounded.best.value > report.value) {
      report.solution = rounded.best.solution;
      report.value = rounded.best.value;
      report.notes.push_back("winner=light");
    } else {
      report.notes.push_back("winner=heavy");
    }
    report.iterations.push_back(std::move(heavy_branch));
    report.iterations.push_back(std::move(rounded.best));
  } else {
    report.notes.push_back("winner=heavy");
    report.iterations.push_back(std::move(heavy_branch));
  }

  if (!ks.feasible(report.solution))
    throw InternalContradictionError("solver produced an infeasible set");
  report.calls = {f.eval_requests() - req0, f.distinct_evals() - dis0};
  return report;
}

}  // namespace submax
