#include "submax/ground.hpp"

#include <cmath>
#include <mutex>
#include <utility>

namespace submax {

namespace {
constexpr double kNegativeSlack = 1e-9;
}

GroundSet::GroundSet(int n, std::vector<std::string> labels)
    : n_(n), labels_(std::move(labels)) {
  if (n < 1) throw BadParamsError("ground set must have n >= 1");
  if (n > 64) throw TooLargeError("ground sets are capped at 64 elements");
  if (!labels_.empty() && static_cast<int>(labels_.size()) != n)
    throw BadParamsError("label count does not match n");
}

std::string GroundSet::label(int e) const {
  if (e < 0 || e >= n_) throw BadParamsError("element id out of range");
  if (labels_.empty()) return std::to_string(e);
  return labels_[e];
}

SubmodularOracle::SubmodularOracle(GroundSet ground)
    : ground_(std::move(ground)) {}

double SubmodularOracle::evaluate(ElementSet s) const {
  if (!s.subset_of(ground_.all()))
    throw BadParamsError("set contains ids outside the ground set");
  requests_.fetch_add(1, std::memory_order_relaxed);
  {
    std::shared_lock lock(cache_mu_);
    auto it = cache_.find(s.bits);
    if (it != cache_.end()) return it->second;
  }
  double v = raw_value(s);
  if (v < 0) {
    if (v < -kNegativeSlack)
      throw NegativeValueError("oracle produced negative value " +
                               std::to_string(v));
    v = 0.0;  // float dust only
  }
  {
    std::unique_lock lock(cache_mu_);
    auto [it, inserted] = cache_.emplace(s.bits, v);
    if (inserted) distinct_.fetch_add(1, std::memory_order_relaxed);
    return it->second;  // first insert wins under contention
  }
}

double SubmodularOracle::marginal(ElementSet s, int e) const {
  if (s.contains(e))
    throw ElementPresentError("marginal of an element already in the set");
  return evaluate(s.with(e)) - evaluate(s);
}

namespace {

class CutOracle final : public SubmodularOracle {
 public:
  CutOracle(int n, std::vector<WeightedEdge> edges, bool directed)
      : SubmodularOracle(GroundSet(n)),
        edges_(std::move(edges)),
        directed_(directed) {
    for (const auto& e : edges_) {
      if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
        throw BadEdgeError("edge endpoint out of range");
      if (e.w < 0) throw NegativeWeightError("negative edge weight");
    }
  }

  std::string kind() const override {
    return directed_ ? "cut_directed" : "cut_undirected";
  }

 protected:
  double raw_value(ElementSet s) const override {
    double total = 0;
    for (const auto& e : edges_) {
      bool u_in = s.contains(e.u), v_in = s.contains(e.v);
      if (directed_ ? (u_in && !v_in) : (u_in != v_in)) total += e.w;
    }
    return total;
  }

 private:
  std::vector<WeightedEdge> edges_;
  bool directed_;
};

class CoverageOracle final : public SubmodularOracle {
 public:
  CoverageOracle(int n_sets, const std::vector<std::vector<int>>& sets,
                 std::vector<double> universe_weights)
      : SubmodularOracle(GroundSet(n_sets)),
        weights_(std::move(universe_weights)) {
    if (static_cast<int>(sets.size()) != n_sets)
      throw BadParamsError("coverage family size does not match n");
    if (weights_.size() > 64)
      throw TooLargeError("coverage universe is capped at 64 elements");
    for (double w : weights_)
      if (w < 0) throw NegativeWeightError("negative universe weight");
    members_.reserve(sets.size());
    for (const auto& s : sets) {
      SetMask m = 0;
      for (int u : s) {
        if (u < 0 || u >= static_cast<int>(weights_.size()))
          throw BadUniverseIdError("covered id outside the universe");
        m |= SetMask{1} << u;
      }
      members_.push_back(m);
    }
  }

  std::string kind() const override { return "coverage"; }

 protected:
  double raw_value(ElementSet s) const override {
    SetMask covered = 0;
    for (int e : BitRange(s)) covered |= members_[e];
    double total = 0;
    for (int u : BitRange(covered)) total += weights_[u];
    return total;
  }

 private:
  std::vector<double> weights_;
  std::vector<SetMask> members_;
};

class FacilityLocationOracle final : public SubmodularOracle {
 public:
  explicit FacilityLocationOracle(std::vector<std::vector<double>> profits)
      : SubmodularOracle(GroundSet(
            profits.empty() ? 1 : static_cast<int>(profits.front().size()))),
        profits_(std::move(profits)) {
    if (profits_.empty()) throw BadParamsError("profit matrix has no clients");
    size_t cols = profits_.front().size();
    if (cols == 0) throw BadParamsError("profit matrix has no facilities");
    for (const auto& row : profits_) {
      if (row.size() != cols) throw BadParamsError("ragged profit matrix");
      for (double p : row)
        if (p < 0) throw NegativeEntryError("negative profit entry");
    }
  }

  std::string kind() const override { return "facility_location"; }

 protected:
  double raw_value(ElementSet s) const override {
    if (s.empty()) return 0;
    double total = 0;
    for (const auto& row : profits_) {
      double best = 0;
      for (int j : BitRange(s)) best = std::max(best, row[j]);
      total += best;
    }
    return total;
  }

 private:
  std::vector<std::vector<double>> profits_;
};

class ModularOracle final : public SubmodularOracle {
 public:
  explicit ModularOracle(std::vector<double> weights)
      : SubmodularOracle(GroundSet(static_cast<int>(weights.size()))),
        weights_(std::move(weights)) {}

  std::string kind() const override { return "modular"; }

 protected:
  double raw_value(ElementSet s) const override {
    double total = 0;
    for (int e : BitRange(s)) total += weights_[e];
    return total;
  }

 private:
  std::vector<double> weights_;
};

class ExplicitTableOracle final : public SubmodularOracle {
 public:
  ExplicitTableOracle(int n, std::vector<double> values)
      : SubmodularOracle(GroundSet(n)), values_(std::move(values)) {
    if (n > 20) throw TooLargeError("explicit tables are capped at n = 20");
    if (values_.size() != (size_t{1} << n))
      throw BadParamsError("explicit table must hold exactly 2^n values");
  }

  std::string kind() const override { return "explicit_table"; }

 protected:
  double raw_value(ElementSet s) const override { return values_[s.bits]; }

 private:
  std::vector<double> values_;
};

class ComplementOracle final : public SubmodularOracle {
 public:
  explicit ComplementOracle(OraclePtr parent)
      : SubmodularOracle(parent->ground()), parent_(std::move(parent)) {}

  std::string kind() const override { return "complement_of"; }

 protected:
  double raw_value(ElementSet s) const override {
    return parent_->evaluate(ground().all().minus(s));
  }

 private:
  OraclePtr parent_;
};

}  // namespace

OraclePtr build_cut(int n_vertices, const std::vector<WeightedEdge>& edges,
                    bool directed) {
  return std::make_shared<CutOracle>(n_vertices, edges, directed);
}

OraclePtr build_coverage(int n_sets, const std::vector<std::vector<int>>& sets,
                         const std::vector<double>& universe_weights) {
  return std::make_shared<CoverageOracle>(n_sets, sets, universe_weights);
}

OraclePtr build_facility_location(
    const std::vector<std::vector<double>>& profits) {
  return std::make_shared<FacilityLocationOracle>(profits);
}

OraclePtr build_modular(const std::vector<double>& weights) {
  return std::make_shared<ModularOracle>(weights);
}

OraclePtr build_explicit_table(int n, const std::vector<double>& values) {
  return std::make_shared<ExplicitTableOracle>(n, values);
}

OraclePtr complement_oracle(OraclePtr f) {
  return std::make_shared<ComplementOracle>(std::move(f));
}

StructureReport validate_submodular(const SubmodularOracle& f, double tol) {
  int n = f.n();
  if (n > 16) throw TooLargeError("exhaustive validation is capped at n = 16");
  const SetMask full = ElementSet::full(n).bits;
  std::vector<double> val(full + 1);
  for (SetMask m = 0; m <= full; ++m) val[m] = f.evaluate(ElementSet{m});

  StructureReport report;
  report.submodular = true;
  for (SetMask s = 0; s <= full && report.submodular; ++s) {
    for (SetMask t = s; t <= full; ++t) {
      if (val[s | t] + val[s & t] > val[s] + val[t] + tol) {
        report.submodular = false;
        report.violation = {ElementSet{s}, ElementSet{t}};
        break;
      }
    }
  }
  report.monotone = true;
  for (SetMask s = 0; s <= full && report.monotone; ++s)
    for (int e = 0; e < n; ++e)
      if (!((s >> e) & 1) && val[s | (SetMask{1} << e)] < val[s] - tol) {
        report.monotone = false;
        break;
      }
  report.symmetric = true;
  for (SetMask s = 0; s <= full; ++s)
    if (std::abs(val[s] - val[full & ~s]) > tol) {
      report.symmetric = false;
      break;
    }
  return report;
}

}  // namespace submax
