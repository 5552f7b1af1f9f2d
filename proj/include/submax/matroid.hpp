#pragma once

#include <atomic>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "submax/bits.hpp"
#include "submax/errors.hpp"
#include "submax/ground.hpp"

namespace submax {

// Matroid independence oracle.  All kinds share this query surface; the
// constructions below provide family-specific fast paths.
class MatroidOracle {
 public:
  explicit MatroidOracle(GroundSet ground) : ground_(std::move(ground)) {}
  virtual ~MatroidOracle() = default;

  virtual bool is_independent(ElementSet s) const = 0;
  virtual std::string kind() const = 0;

  const GroundSet& ground() const { return ground_; }
  int n() const { return ground_.size(); }

  // Size of a maximum independent subset of s, built greedily by ascending
  // element id (matroid greedy is exact).
  int rank(ElementSet s) const;
  // rank of the whole ground set, computed once.
  int full_rank() const;
  // A maximum independent subset of s; ties by ascending id.
  ElementSet greedy_basis(ElementSet s) const;

 private:
  GroundSet ground_;
  // Lazily cached; duplicate recomputation under contention is harmless.
  mutable std::atomic<int> full_rank_{-1};
};

using MatroidPtr = std::shared_ptr<const MatroidOracle>;

// Independent iff |S| <= r.
MatroidPtr make_uniform(int n, int r);

// Ground split into parts with per-part capacities; independent iff every
// part stays within its capacity.  part_of[i] is the part id of element i.
MatroidPtr make_partition(const std::vector<int>& part_of,
                          const std::vector<int>& capacities);

// Elements are edges of a graph; independent iff the edge set is acyclic.
MatroidPtr make_graphic(int n_vertices,
                        const std::vector<std::pair<int, int>>& edges);

// Explicit list of independent sets, n <= 16.  Construction validates
// downward closure and the exchange axiom exhaustively.
MatroidPtr make_explicit(int n, const std::vector<ElementSet>& independent);

// M' on V \ s with T independent iff T u s independent in m.  Sets that
// touch s are dependent in M'.  s must be independent.
MatroidPtr contract(MatroidPtr m, ElementSet s);

// Accessors for the partition kind (null if m is not a partition matroid).
struct PartitionView {
  const std::vector<int>* part_of = nullptr;
  const std::vector<int>* capacities = nullptr;
};
std::optional<PartitionView> as_partition(const MatroidOracle& m);

// Constructive exchange mapping between two independent sets I and J: each
// b in J \ I is assigned an element of I \ J it can displace, or phi (-1),
// such that (I \ pi(b)) + b is independent and no element of I \ J is used
// twice.  phi is only assigned when I + b itself is independent.  When
// |I| = |J| the map is computed in the rank-|I| truncation, which forces a
// bijection J \ I -> I \ J.
struct ExchangeMap {
  // (b, target) pairs sorted by b; target == -1 encodes phi.
  std::vector<std::pair<int, int>> assignments;

  int target_of(int b) const;
  bool is_bijection() const;
};

ExchangeMap exchange_map(const MatroidOracle& m, ElementSet i_set,
                         ElementSet j_set);

// Two disjoint bases of m if they exist.  Uniform and partition kinds split
// directly; other kinds run a matroid-union augmenting-path search.
std::optional<std::pair<ElementSet, ElementSet>> find_two_disjoint_bases(
    const MatroidOracle& m);

}  // namespace submax
