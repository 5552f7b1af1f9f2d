#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "submax/bits.hpp"
#include "submax/errors.hpp"

namespace submax {

// Ground set V = {0, ..., n-1} with optional display labels.
class GroundSet {
 public:
  explicit GroundSet(int n, std::vector<std::string> labels = {});

  int size() const { return n_; }
  ElementSet all() const { return ElementSet::full(n_); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(int e) const;

 private:
  int n_;
  std::vector<std::string> labels_;
};

// Value oracle for a non-negative set function f : 2^V -> R>=0.
//
// Evaluation is memoized on the canonical bit encoding and counted two ways:
//   - eval_requests(): every evaluate() call, pre-cache;
//   - distinct_evals(): cache misses, i.e. distinct sets ever computed.
// Complexity comparisons against theory use distinct_evals(); the raw
// request count shows how much the cache absorbed.
//
// Thread safety: oracles are immutable after construction except for the
// counters (atomic) and the cache (mutex-guarded map; a duplicate
// recomputation under contention is tolerated, the first insert wins).
class SubmodularOracle {
 public:
  explicit SubmodularOracle(GroundSet ground);
  virtual ~SubmodularOracle() = default;

  // Returns f(s) >= 0.  Throws NegativeValueError if the payload yields a
  // (materially) negative value.
  double evaluate(ElementSet s) const;

  // f(s + e) - f(s); may be negative for non-monotone f.
  // Throws ElementPresentError if e is already in s.
  double marginal(ElementSet s, int e) const;

  const GroundSet& ground() const { return ground_; }
  int n() const { return ground_.size(); }

  virtual std::string kind() const = 0;

  std::uint64_t eval_requests() const { return requests_.load(); }
  std::uint64_t distinct_evals() const { return distinct_.load(); }

 protected:
  // Uncached, uncounted payload evaluation.
  virtual double raw_value(ElementSet s) const = 0;

 private:
  GroundSet ground_;
  mutable std::atomic<std::uint64_t> requests_{0};
  mutable std::atomic<std::uint64_t> distinct_{0};
  mutable std::shared_mutex cache_mu_;
  mutable std::unordered_map<SetMask, double> cache_;
};

using OraclePtr = std::shared_ptr<const SubmodularOracle>;

struct WeightedEdge {
  int u = 0;
  int v = 0;
  double w = 1.0;
};

// f(S) = total weight of edges leaving S (directed) or crossing S
// (undirected).  Undirected cut functions are symmetric: f(S) = f(V \ S).
OraclePtr build_cut(int n_vertices, const std::vector<WeightedEdge>& edges,
                    bool directed);

// f(S) = weight of the union of the chosen subsets of a universe
// {0, ..., universe_size-1}.  Monotone.
OraclePtr build_coverage(int n_sets, const std::vector<std::vector<int>>& sets,
                         const std::vector<double>& universe_weights);

// f(S) = sum over clients of the best profit among open facilities S,
// given a clients x facilities profit matrix with non-negative entries.
OraclePtr build_facility_location(
    const std::vector<std::vector<double>>& profits);

// f(S) = sum of per-element weights.
OraclePtr build_modular(const std::vector<double>& weights);

// Test-only oracle holding all 2^n values explicitly; n <= 20.
OraclePtr build_explicit_table(int n, const std::vector<double>& values);

// g(T) = f(V \ T).  Submodular and non-negative whenever f is.
OraclePtr complement_oracle(OraclePtr f);

struct StructureReport {
  bool submodular = false;
  bool monotone = false;
  bool symmetric = false;
  // First violating pair of the defining inequality, when not submodular.
  std::optional<std::pair<ElementSet, ElementSet>> violation;
};

// Exhaustively checks f(S u T) + f(S n T) <= f(S) + f(T) over all pairs,
// plus monotonicity and symmetry flags.  n <= 16.
StructureReport validate_submodular(const SubmodularOracle& f,
                                    double tol = 1e-9);

}  // namespace submax
