#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "submax/ground.hpp"

namespace submax {

// A point y in [0,1]^n, optionally tagged with the grid step it is aligned
// to and per-coordinate upper bounds (empty upper = all ones).
struct FractionalPoint {
  std::vector<double> coords;
  std::optional<double> grid_step;
  std::vector<double> upper;

  int n() const { return static_cast<int>(coords.size()); }
  static FractionalPoint zeros(int n) {
    return FractionalPoint{std::vector<double>(n, 0.0), std::nullopt, {}};
  }
  static FractionalPoint indicator(ElementSet s, int n) {
    FractionalPoint p = zeros(n);
    for (int e : BitRange(s)) p.coords[e] = 1.0;
    return p;
  }
};

// Exact multilinear extension
//   F(y) = sum_S f(S) * prod_{i in S} y_i * prod_{j not in S} (1 - y_j),
// enumerating only the strictly fractional coordinates (at most 24).
double eval_exact(const SubmodularOracle& f, std::span<const double> y);

struct McEstimate {
  double mean = 0;
  double stderr_of_mean = 0;
};

// Unbiased Monte Carlo estimate of F(y): averages f(R) over independent
// draws including each i with probability y_i.  Each draw is a pure
// function of (seed, sample index), so results replay bit-identically.
McEstimate eval_mc(const SubmodularOracle& f, std::span<const double> y,
                   std::uint64_t samples, std::uint64_t seed);

// dF/dy_i via the multilinear identity F(y | y_i=1) - F(y | y_i=0).
double partial_derivative(const SubmodularOracle& f, std::span<const double> y,
                          int i);

// Lifts f to a ground set with multiplicities[i] copies of element i:
// g(T) = F(..., |T_i| / s_i, ...).  Submodular whenever f is.
// Total copies capped at 20.
OraclePtr lift_scaled(OraclePtr f, const std::vector<int>& multiplicities);

// Evaluator handle: exact F up to a fractional-support cap, Monte Carlo
// beyond it.  Algorithms accept this so tests can pin the exact mode.
class FEvaluator {
 public:
  explicit FEvaluator(const SubmodularOracle& f, int exact_max_fractional = 18,
                      std::uint64_t mc_samples = 20000, std::uint64_t seed = 1)
      : f_(&f),
        exact_max_fractional_(exact_max_fractional),
        mc_samples_(mc_samples),
        seed_(seed) {}

  double operator()(std::span<const double> y) const;
  bool used_mc() const { return used_mc_; }
  const SubmodularOracle& oracle() const { return *f_; }

 private:
  const SubmodularOracle* f_;
  int exact_max_fractional_;
  std::uint64_t mc_samples_;
  std::uint64_t seed_;
  mutable bool used_mc_ = false;
};

}  // namespace submax
