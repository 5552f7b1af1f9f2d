#pragma once

#include <optional>

#include "submax/matroid.hpp"
#include "submax/matroid_search.hpp"

namespace submax {

// Feasible sets are exactly the independent sets of size rank(V).
struct BaseConstraint {
  MatroidPtr matroid;
  int full_rank = 0;
};

BaseConstraint make_base_constraint(MatroidPtr m);

// Swap-only local search over bases: repeatedly replaces one element of the
// current base by an outside element while the result stays a base and the
// value grows by the SearchConfig threshold.  Starts from a greedy base
// built by descending singleton value unless `start` (a base) is given.
// For symmetric objectives the local optimum is within 1/3 of the best
// base, up to the approximation slack; the search runs for any objective.
SolutionReport swap_base_search(const SubmodularOracle& f,
                                const BaseConstraint& bc,
                                const SearchConfig& cfg,
                                std::optional<ElementSet> start = std::nullopt);

// For matroids with two disjoint bases: a swap-local base S1, a
// delete/exchange-local independent set S2 on V \ S1, and the two bases of
// the contraction by S2 combine into a solution within 1/6 of the best
// base, up to the approximation slack.
SolutionReport two_base_search(const SubmodularOracle& f,
                               const BaseConstraint& bc,
                               const SearchConfig& cfg);

// max { f(S) : |S| = c } via two_base_search on a uniform matroid; when
// c > n/2 the complement objective g(T) = f(V \ T) is solved at rank n - c
// instead, so the two-disjoint-bases assumption always holds.
SolutionReport exact_cardinality_search(const SubmodularOracle& f, int c,
                                        const SearchConfig& cfg);

}  // namespace submax
