#include "submax/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "submax/rng.hpp"

namespace submax {

namespace {
constexpr double kCertTol = 1e-9;

double tolerance_for(double a, double b) {
  return kCertTol * std::max({1.0, std::abs(a), std::abs(b)});
}
}  // namespace

FeasibilityPredicate feas_matroid_intersection(std::vector<MatroidPtr> ms) {
  return {"matroid-intersection", [ms = std::move(ms)](ElementSet s) {
            for (const auto& m : ms)
              if (!m->is_independent(s)) return false;
            return true;
          }};
}

FeasibilityPredicate feas_knapsack(KnapsackSystem ks) {
  return {"knapsack-system",
          [ks = std::move(ks)](ElementSet s) { return ks.feasible(s); }};
}

FeasibilityPredicate feas_base(BaseConstraint bc) {
  return {"matroid-base", [bc = std::move(bc)](ElementSet s) {
            return s.count() == bc.full_rank && bc.matroid->is_independent(s);
          }};
}

FeasibilityPredicate feas_cardinality(int c) {
  return {"exact-cardinality",
          [c](ElementSet s) { return s.count() == c; }};
}

std::pair<ElementSet, double> brute_force_opt(
    const SubmodularOracle& f, const FeasibilityPredicate& feas) {
  const int n = f.n();
  if (n > 22) throw TooLargeError("brute force is capped at n = 22");
  const SetMask full = ElementSet::full(n).bits;
  bool found = false;
  ElementSet best;
  double best_value = 0;
  for (SetMask m = 0; m <= full; ++m) {
    ElementSet s{m};
    if (!feas(s)) continue;
    double v = f.evaluate(s);
    if (!found || v > best_value ||
        (v == best_value && lex_less(s, best))) {
      found = true;
      best = s;
      best_value = v;
    }
  }
  if (!found) throw BadParamsError("no feasible set exists");
  return {best, best_value};
}

namespace {

template <typename Inequality>
CertReport scan_feasible_sets(const SubmodularOracle& f, ElementSet ground,
                              const FeasibilityPredicate& feas,
                              std::string name, Inequality&& check) {
  if (ground.count() > 14)
    throw TooLargeError("certification is capped at 14 ground elements");
  CertReport report;
  report.name = std::move(name);
  report.worst_slack = std::numeric_limits<double>::infinity();
  for (ElementSet c : SubsetsOf(ground)) {
    if (!feas(c)) continue;
    auto [lhs, rhs] = check(c);
    double slack = lhs - rhs;
    ++report.checked;
    if (slack < report.worst_slack) {
      report.worst_slack = slack;
      report.worst_c = c;
    }
    if (slack < -tolerance_for(lhs, rhs)) report.pass = false;
  }
  (void)f;
  return report;
}

}  // namespace

CertReport certify_matroid_local_lemma(const SubmodularOracle& f, ElementSet s,
                                       std::span<const MatroidPtr> matroids,
                                       double epsilon, ElementSet ground,
                                       bool swap_only) {
  const double k = static_cast<double>(matroids.size());
  const double fs = f.evaluate(s);
  std::vector<MatroidPtr> ms(matroids.begin(), matroids.end());
  auto feas = feas_matroid_intersection(std::move(ms));
  if (swap_only) {
    return scan_feasible_sets(
        f, ground, feas, "swap-local-lemma", [&](ElementSet c) {
          if (c.count() != s.count())
            return std::pair<double, double>{1.0, 0.0};  // out of scope
          double lhs = 2.0 * (1.0 + epsilon) * fs;
          double rhs = f.evaluate(s | c) + f.evaluate(s & c);
          return std::pair<double, double>{lhs, rhs};
        });
  }
  return scan_feasible_sets(
      f, ground, feas, "matroid-local-lemma", [&](ElementSet c) {
        double lhs = (1.0 + epsilon) * (k + 1.0) * fs;
        double rhs = f.evaluate(s | c) + k * f.evaluate(s & c);
        return std::pair<double, double>{lhs, rhs};
      });
}

CertReport certify_partition_lemma(const SubmodularOracle& f, ElementSet s,
                                   std::span<const MatroidPtr> matroids, int p,
                                   double epsilon, ElementSet ground) {
  if (p < 1) throw BadParamsError("p must be >= 1");
  const double k = static_cast<double>(matroids.size());
  const double fs = f.evaluate(s);
  std::vector<MatroidPtr> ms(matroids.begin(), matroids.end());
  auto feas = feas_matroid_intersection(std::move(ms));
  return scan_feasible_sets(
      f, ground, feas, "partition-local-lemma", [&](ElementSet c) {
        double lhs = (1.0 + epsilon) * k * fs;
        double rhs = (1.0 - 1.0 / p) * f.evaluate(s | c) +
                     (k - 1.0) * f.evaluate(s & c);
        return std::pair<double, double>{lhs, rhs};
      });
}

CertReport certify_fractional_lemma(const SubmodularOracle& f,
                                    const FractionalPoint& y,
                                    const KnapsackSystem& ks, double epsilon,
                                    int grid_samples, std::uint64_t seed) {
  const int n = f.n();
  if (n > 12) throw TooLargeError("fractional certification is capped at n=12");
  if (y.n() != n) throw BadParamsError("point dimension mismatch");

  std::vector<double> upper = y.upper;
  if (upper.empty()) upper.assign(n, 1.0);

  double f_max = 0;
  for (int i = 0; i < n; ++i)
    f_max = std::max(f_max, f.evaluate(ElementSet{}.with(i)));

  const double fy = eval_exact(f, y.coords);
  const double lhs = (2.0 + 2.0 * n * epsilon) * fy;

  CertReport report;
  report.name = "fractional-local-lemma";
  report.worst_slack = std::numeric_limits<double>::infinity();

  std::vector<double> meet(n), join(n);
  auto check_x = [&](std::span<const double> x, ElementSet tag) {
    for (int i = 0; i < n; ++i) {
      meet[i] = std::min(y.coords[i], x[i]);
      join[i] = std::max(y.coords[i], x[i]);
    }
    double rhs = eval_exact(f, meet) + eval_exact(f, join) -
                 f_max / (2.0 * n);
    double slack = lhs - rhs;
    ++report.checked;
    if (slack < report.worst_slack) {
      report.worst_slack = slack;
      report.worst_c = tag;
    }
    if (slack < -tolerance_for(lhs, rhs)) report.pass = false;
  };

  // All feasible integral indicators respecting the upper bounds.
  std::vector<double> x(n);
  for (ElementSet t : SubsetsOf(ElementSet::full(n))) {
    bool within = true;
    for (int e : BitRange(t))
      if (upper[e] < 1.0 - 1e-12) {
        within = false;
        break;
      }
    if (!within || !ks.feasible(t)) continue;
    for (int i = 0; i < n; ++i) x[i] = t.contains(i) ? 1.0 : 0.0;
    check_x(x, t);
  }

  // Optional random grid points below the bounds.
  const double step = y.grid_step.value_or(0.25);
  for (int trial = 0; trial < grid_samples; ++trial) {
    for (int i = 0; i < n; ++i) {
      double u = rng::uniform01(seed, trial, i) * upper[i];
      x[i] = std::floor(u / step) * step;
    }
    if (!ks.feasible(x)) continue;
    check_x(x, ElementSet{});
  }
  return report;
}

RatioReport measure_ratio(double value, const SubmodularOracle& f,
                          const FeasibilityPredicate& feas, double threshold,
                          double tolerance) {
  auto [opt_set, opt] = brute_force_opt(f, feas);
  (void)opt_set;
  RatioReport report;
  report.value = value;
  report.opt = opt;
  report.threshold = threshold;
  if (opt > 0) {
    report.ratio = value / opt;
    report.pass = report.ratio >= threshold - tolerance;
  } else {
    report.ratio = 1.0;
    report.pass = std::abs(value) <= tolerance;
  }
  return report;
}

}  // namespace submax
