#pragma once

#include <functional>
#include <string>
#include <vector>

#include "submax/base_search.hpp"
#include "submax/knapsack.hpp"
#include "submax/matroid.hpp"

namespace submax {

// Pure, deterministic feasibility test over subsets of the ground set.
struct FeasibilityPredicate {
  std::string kind;
  std::function<bool(ElementSet)> test;

  bool operator()(ElementSet s) const { return test(s); }
};

FeasibilityPredicate feas_matroid_intersection(std::vector<MatroidPtr> ms);
FeasibilityPredicate feas_knapsack(KnapsackSystem ks);
FeasibilityPredicate feas_base(BaseConstraint bc);
FeasibilityPredicate feas_cardinality(int c);

// Exhaustive maximum of f over feasible sets, n <= 22.  Ties break to the
// lexicographically smallest set, so the result is deterministic.
std::pair<ElementSet, double> brute_force_opt(const SubmodularOracle& f,
                                              const FeasibilityPredicate& feas);

struct CertReport {
  std::string name;
  bool pass = true;
  // Smallest lhs - rhs margin seen across all checked inequalities.
  double worst_slack = 0;
  ElementSet worst_c;
  std::uint64_t checked = 0;
};

// Local-optimum inequality for k-matroid search outputs: for every feasible
// C inside `ground`,
//   (1+eps) (k+1) f(S) >= f(S u C) + k f(S n C).
// With swap_only set, checks the two-sided swap variant instead
// (restricted to |C| = |S|):  2 (1+eps) f(S) >= f(S u C) + f(S n C).
CertReport certify_matroid_local_lemma(const SubmodularOracle& f, ElementSet s,
                                       std::span<const MatroidPtr> matroids,
                                       double epsilon, ElementSet ground,
                                       bool swap_only = false);

// Partition-matroid variant: (1+eps) k f(S) >= (1-1/p) f(S u C)
//                                               + (k-1) f(S n C).
CertReport certify_partition_lemma(const SubmodularOracle& f, ElementSet s,
                                   std::span<const MatroidPtr> matroids, int p,
                                   double epsilon, ElementSet ground);

// Fractional local-optimum inequality, with x ranging over the indicators
// of every feasible integral set respecting y's upper bounds plus
// `grid_samples` random feasible grid points:
//   (2 + 2 n eps) F(y) >= F(y ^ x) + F(y v x) - f_max / (2n).
CertReport certify_fractional_lemma(const SubmodularOracle& f,
                                    const FractionalPoint& y,
                                    const KnapsackSystem& ks, double epsilon,
                                    int grid_samples = 0,
                                    std::uint64_t seed = 1);

struct RatioReport {
  double value = 0;
  double opt = 0;
  double ratio = 1;
  double threshold = 0;
  bool pass = true;
  std::string instance_fingerprint;
  std::uint64_t seed = 0;
};

RatioReport measure_ratio(double value, const SubmodularOracle& f,
                          const FeasibilityPredicate& feas, double threshold,
                          double tolerance = 1e-9);

}  // namespace submax
