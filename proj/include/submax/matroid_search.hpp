#pragma once

#include <span>

#include "submax/ground.hpp"
#include "submax/matroid.hpp"
#include "submax/search_types.hpp"

namespace submax {

// Approximate local search over the intersection of k matroids, restricted
// to ground_subset.  Starts from the best feasible singleton and applies
// delete moves (f(S - e) >= t * f(S)) and exchange moves that add one
// element and drop at most one per matroid (f > t * f(S)), where
// t = 1 + epsilon / n^d.  Returns the empty set when no feasible singleton
// has positive value.
SolutionReport local_search(const SubmodularOracle& f, ElementSet ground_subset,
                            std::span<const MatroidPtr> matroids,
                            const SearchConfig& cfg);

// Runs local_search k+1 times on shrinking ground sets (each round removes
// the previous solution) and returns the best round.
SolutionReport repeated_local_search(const SubmodularOracle& f,
                                     std::span<const MatroidPtr> matroids,
                                     const SearchConfig& cfg);

// Single local_search pass; the caller asserts f is symmetric, which is
// what buys the stronger guarantee.
SolutionReport symmetric_local_search(const SubmodularOracle& f,
                                      std::span<const MatroidPtr> matroids,
                                      const SearchConfig& cfg);

// Wide-exchange local search for k >= 2 partition matroids: adds up to
// cfg.p elements and drops up to (k-1) * |added| while staying independent
// in every matroid.  Throws NotPartitionError for other matroid kinds.
SolutionReport p_exchange_search(const SubmodularOracle& f,
                                 std::span<const MatroidPtr> partition_matroids,
                                 const SearchConfig& cfg,
                                 ElementSet ground_subset);
SolutionReport p_exchange_search(const SubmodularOracle& f,
                                 std::span<const MatroidPtr> partition_matroids,
                                 const SearchConfig& cfg);

// Sets p = 1 + ceil(2k / epsilon).  Monotone objectives get a single
// p-exchange pass; non-monotone ones get k passes on shrinking grounds.
SolutionReport partition_search(const SubmodularOracle& f,
                                std::span<const MatroidPtr> partition_matroids,
                                double epsilon, bool monotone);

// Plain marginal-gain greedy; the baseline the tight coverage family is
// built against, not a guarantee-bearing solver.
SolutionReport greedy_baseline(const SubmodularOracle& f,
                               std::span<const MatroidPtr> matroids);

// Theoretical cap on improving moves for a run with threshold factor t on
// n elements: log_t(n) + 1.
std::uint64_t move_count_bound(int n, double threshold_factor);

}  // namespace submax
