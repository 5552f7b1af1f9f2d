#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "submax/bits.hpp"
#include "submax/errors.hpp"

namespace submax {

// Parameters shared by the discrete local-search engines.
struct SearchConfig {
  // Improvement slack: a move must scale the value by at least
  // 1 + epsilon / n^scaling_exponent to be applied.
  double epsilon = 0.05;
  int scaling_exponent = 4;  // 2 is offered for speed at desk scale
  // Exchange width of the partition-matroid search (adds up to p elements).
  int p = 1;
  // Hard cap on applied moves; 0 derives the theoretical bound from n.
  std::uint64_t move_cap = 0;

  enum class PivotRule { kBestImprovement };
  PivotRule pivot = PivotRule::kBestImprovement;

  // Exchange-neighborhood enumeration: per-matroid displacement candidates
  // (equivalent to the full neighborhood, far fewer probes) or a literal
  // full enumeration kept for verification.
  enum class ExchangeMode { kPerMatroidCandidates, kFullEnumeration };
  ExchangeMode exchange_mode = ExchangeMode::kPerMatroidCandidates;

  void validate() const {
    if (epsilon <= 0) throw BadParamsError("epsilon must be > 0");
    if (p < 1) throw BadParamsError("p must be >= 1");
    if (scaling_exponent < 0) throw BadParamsError("bad scaling exponent");
  }
};

// One applied local move.  An empty `added` set encodes a pure deletion.
struct Move {
  ElementSet added;
  ElementSet removed;
  double value_before = 0;
  double value_after = 0;
};

struct OracleCounts {
  std::uint64_t requests = 0;
  std::uint64_t distinct = 0;
};

// Result of a search run.  `solution` is feasible for all constraints the
// run was given and `value` equals f(solution).
struct SolutionReport {
  ElementSet solution;
  double value = 0;
  OracleCounts calls;

  std::string engine;          // which move set produced this report
  ElementSet start;            // initial set of the search
  ElementSet ground_subset;    // the ground the search ran on
  double threshold_factor = 1; // 1 + epsilon / n^d actually used
  std::vector<Move> moves;

  // Per-restart sub-reports for the repeated variants.
  std::vector<SolutionReport> iterations;

  std::vector<std::string> notes;
};

}  // namespace submax
