#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "submax/base_search.hpp"
#include "submax/knapsack.hpp"
#include "submax/matroid_search.hpp"
#include "submax/verify.hpp"

namespace submax {

using Json = nlohmann::json;

std::string sha256_hex(const std::string& data);

// Default seed for seeded verbs: SUBMAX_SEED when set, else 1.
std::uint64_t default_seed();

// A self-describing instance document: ground-set size, one objective
// block, one constraint block, and free-form metadata.  The canonical form
// (sorted keys, shortest float round-trip) is what gets fingerprinted, and
// parse o serialize is the identity on it.
class InstanceFile {
 public:
  InstanceFile() = default;
  explicit InstanceFile(Json doc);
  static InstanceFile parse(const std::string& text);

  const Json& doc() const { return doc_; }
  std::string canonical() const { return doc_.dump(); }
  std::string fingerprint() const { return sha256_hex(canonical()); }

  std::string name() const;
  int n() const;
  std::string constraint_type() const;  // matroids|knapsacks|base|cardinality

  OraclePtr build_oracle() const;
  std::vector<MatroidPtr> build_matroids() const;
  KnapsackSystem build_knapsacks() const;
  BaseConstraint build_base_constraint() const;
  int cardinality() const;

  // A feasibility predicate matching the constraint block.
  FeasibilityPredicate build_feasibility() const;

 private:
  Json doc_;
};

// The coverage family on which plain greedy stalls at its first pick:
// one big set blocked against k others by per-pair partition constraints.
// Greedy reaches value p+1 while the optimum covers p(k+1)+1 points.
InstanceFile gen_greedy_tight(int k, int p);

// Directed-cut base instance on a bipartition (U, V): t parallel unit edges
// out of each U-vertex, one unit edge back from each V-vertex, base = any
// n_side vertices.  The V side is a swap-local optimum of value n_side
// while the U side scores t * n_side.
InstanceFile gen_swap_trap(int n_side, int t);

struct RandomSpec {
  std::string kind;        // cut-undirected|cut-directed|coverage|facility|modular
  std::string constraint;  // matroids|partition|knapsacks|light-knapsacks|base|cardinality
  int n = 8;
  int k = 1;
  double density = 0.5;
  std::uint64_t seed = 1;
  // Weight range for knapsack constraints.
  double weight_lo = 0.1;
  double weight_hi = 0.6;
};

InstanceFile gen_random(const RandomSpec& spec);

struct RunConfig {
  std::string algorithm;
  Json params = Json::object();
  std::uint64_t seed = 1;

  Json to_json() const;
};

// One executed (instance, algorithm) pair.  The canonical string excludes
// wall time; replaying the same (instance, config, seed) reproduces it
// byte for byte.
struct RunRecord {
  std::string instance_name;
  std::string instance_fingerprint;
  std::string algorithm;
  Json config;
  std::uint64_t seed = 0;
  std::vector<int> solution;
  double value = 0;
  OracleCounts calls;
  Json certificates = Json::array();
  bool all_certificates_pass = true;
  double wall_ms = 0;

  SolutionReport report;  // in-memory detail, not serialized wholesale

  Json to_json(bool include_wall) const;
  std::string canonical() const { return to_json(false).dump(); }
};

RunRecord run_one(const InstanceFile& instance, const RunConfig& config,
                  bool certify);

// Executes every (instance, algorithm) pair in order; output is ordered by
// (instance index, config index).
std::vector<RunRecord> run_experiment(const std::vector<InstanceFile>& instances,
                                      const std::vector<RunConfig>& configs,
                                      bool certify);

}  // namespace submax
