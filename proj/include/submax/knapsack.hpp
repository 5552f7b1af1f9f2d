#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "submax/multilinear.hpp"
#include "submax/search_types.hpp"

namespace submax {

// k knapsack constraints with capacities scaled to 1.  Every singleton must
// be feasible (weights in [0, 1]).
struct KnapsackSystem {
  std::vector<std::vector<double>> weights;  // k rows of n entries

  KnapsackSystem() = default;
  explicit KnapsackSystem(std::vector<std::vector<double>> w);
  static KnapsackSystem normalized(std::vector<std::vector<double>> w,
                                   const std::vector<double>& capacities);

  int k() const { return static_cast<int>(weights.size()); }
  int n() const {
    return weights.empty() ? 0 : static_cast<int>(weights.front().size());
  }
  double load(int s, ElementSet set) const;
  double load(int s, std::span<const double> y) const;
  bool feasible(ElementSet set, double tol = 1e-9) const;
  bool feasible(std::span<const double> y, double tol = 1e-9) const;
};

struct FracSearchConfig {
  // Grid step; 0 resolves to 1/(4n^2), or 1/(8n^4) when faithful_grid.
  double zeta = 0;
  bool faithful_grid = false;
  // Improvement slack for F moves; 0 resolves to delta_outer / n^2.
  double epsilon = 0;
  double delta_outer = 0.1;

  // Outer parameters of the combined solver: c = 16 / eta and, unless
  // overridden, heavy_delta = 1 / (4 c^3 k^4) and eps_round = 1 / (c k).
  double eta = 0.1;
  double heavy_delta = 0;
  int heavy_cap = 4;
  double eps_round = -1;

  std::uint64_t trials = 200;
  std::uint64_t seed = 1;

  // Restricted move menu: drops go to zero or one grid step down, raises go
  // to the bound or the largest feasible grid value.  The full menu tries
  // every grid value and is affordable only at small n; polish_full_grid
  // confirms a restricted optimum with full scans (and escapes if one
  // finds an improvement), so the returned point is a full-grid optimum.
  enum class MoveMode { kRestricted, kFullGrid } move_mode = MoveMode::kRestricted;
  bool polish_full_grid = false;

  int exact_max_fractional = 18;
  std::uint64_t mc_samples = 20000;
  std::uint64_t move_cap = 0;  // 0 -> ceil(log(2n) / log(1+epsilon)) + 3

  double resolve_zeta(int n) const;
  double resolve_epsilon(int n) const;
};

// Grid local search for max F(y) subject to the knapsacks and y <= upper:
// starts from the best weighted singleton and repeatedly rewrites at most
// k coordinates down and at most k up, accepting factor-(1+epsilon)
// improvements.  Coordinates take grid values or their upper bound.
FractionalPoint fractional_local_search(const SubmodularOracle& f,
                                        const KnapsackSystem& ks,
                                        std::span<const double> upper,
                                        const FracSearchConfig& cfg);

struct FractionalSolve {
  FractionalPoint point;  // best of the three candidates below
  double value = 0;
  FractionalPoint phase1;  // local optimum with upper bounds 1
  FractionalPoint phase2;  // local optimum with upper bounds 1 - phase1
  int best_singleton = -1;
  int winner = 0;  // 0 = phase1, 1 = phase2, 2 = singleton
  OracleCounts calls;
};

// Two-phase fractional solve: the second phase runs under upper bounds
// 1 - y1 and the best singleton is kept as a third candidate.  `allowed`
// restricts the support (upper bound 0 outside it).
FractionalSolve solve_fractional(const SubmodularOracle& f,
                                 const KnapsackSystem& ks,
                                 const FracSearchConfig& cfg);
FractionalSolve solve_fractional(const SubmodularOracle& f,
                                 const KnapsackSystem& ks,
                                 const FracSearchConfig& cfg,
                                 ElementSet allowed);

// Elements weighing at least delta_heavy in some knapsack are heavy.
std::pair<ElementSet, ElementSet> classify_heavy_light(const KnapsackSystem& ks,
                                                       double delta_heavy);

// Exact best feasible subset of `heavy` with at most `cap` elements.
SolutionReport enumerate_heavy(const SubmodularOracle& f,
                               const KnapsackSystem& ks, ElementSet heavy,
                               int cap);

struct RoundingReport {
  SolutionReport best;       // best feasible sampled set (possibly empty)
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;  // rounds that violated a knapsack (score 0)
  double mean_value = 0;       // single-draw mean over all rounds
};

// `trials` independent rounds including each element with probability
// (1 - eps_round) * x_e; a round violating any knapsack scores zero.
// Deterministic given seed.
RoundingReport randomized_round(const SubmodularOracle& f,
                                const FractionalPoint& x,
                                const KnapsackSystem& ks, double eps_round,
                                std::uint64_t trials, std::uint64_t seed);

// Heavy enumeration combined with fractional solve + rounding on the light
// elements; returns the better branch.  Always feasible.
SolutionReport knapsack_solver(const SubmodularOracle& f,
                               const KnapsackSystem& ks, double eta,
                               const FracSearchConfig& cfg);

}  // namespace submax
