#include "submax/matroid.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace submax {

int MatroidOracle::rank(ElementSet s) const { return greedy_basis(s).count(); }

int MatroidOracle::full_rank() const {
  int v = full_rank_.load(std::memory_order_relaxed);
  if (v < 0) {
    v = rank(ground().all());
    full_rank_.store(v, std::memory_order_relaxed);
  }
  return v;
}

ElementSet MatroidOracle::greedy_basis(ElementSet s) const {
  ElementSet out;
  for (int e : BitRange(s))
    if (is_independent(out.with(e))) out = out.with(e);
  return out;
}

namespace {

class UniformMatroid final : public MatroidOracle {
 public:
  UniformMatroid(int n, int r) : MatroidOracle(GroundSet(n)), r_(r) {
    if (r < 0) throw BadParamsError("uniform rank must be >= 0");
  }
  bool is_independent(ElementSet s) const override { return s.count() <= r_; }
  std::string kind() const override { return "uniform"; }
  int r() const { return r_; }

 private:
  int r_;
};

class PartitionMatroid final : public MatroidOracle {
 public:
  PartitionMatroid(std::vector<int> part_of, std::vector<int> capacities)
      : MatroidOracle(GroundSet(static_cast<int>(part_of.size()))),
        part_of_(std::move(part_of)),
        capacities_(std::move(capacities)) {
    for (int p : part_of_)
      if (p < 0 || p >= static_cast<int>(capacities_.size()))
        throw BadParamsError("element assigned to an unknown part");
    for (int c : capacities_)
      if (c < 0) throw BadParamsError("negative part capacity");
  }

  bool is_independent(ElementSet s) const override {
    thread_local std::vector<int> counts;
    counts.assign(capacities_.size(), 0);
    for (int e : BitRange(s))
      if (++counts[part_of_[e]] > capacities_[part_of_[e]]) return false;
    return true;
  }
  std::string kind() const override { return "partition"; }

  const std::vector<int>& part_of() const { return part_of_; }
  const std::vector<int>& capacities() const { return capacities_; }

 private:
  std::vector<int> part_of_;
  std::vector<int> capacities_;
};

class GraphicMatroid final : public MatroidOracle {
 public:
  GraphicMatroid(int n_vertices, std::vector<std::pair<int, int>> edges)
      : MatroidOracle(GroundSet(static_cast<int>(edges.size()))),
        n_vertices_(n_vertices),
        edges_(std::move(edges)) {
    for (auto [u, v] : edges_)
      if (u < 0 || u >= n_vertices || v < 0 || v >= n_vertices)
        throw BadEdgeError("graphic matroid edge endpoint out of range");
  }

  // Union-find cycle check rebuilt per query; ground sets are small.
  bool is_independent(ElementSet s) const override {
    thread_local std::vector<int> parent;
    parent.resize(n_vertices_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (int e : BitRange(s)) {
      int a = find(edges_[e].first), b = find(edges_[e].second);
      if (a == b) return false;
      parent[a] = b;
    }
    return true;
  }
  std::string kind() const override { return "graphic"; }

 private:
  int n_vertices_;
  std::vector<std::pair<int, int>> edges_;
};

class ExplicitMatroid final : public MatroidOracle {
 public:
  ExplicitMatroid(int n, const std::vector<ElementSet>& independent)
      : MatroidOracle(GroundSet(n)) {
    if (n > 16) throw TooLargeError("explicit matroids are capped at n = 16");
    table_.assign(size_t{1} << n, false);
    table_[0] = true;  // the empty set is always independent
    for (ElementSet s : independent) {
      if (!s.subset_of(ground().all()))
        throw BadParamsError("independent set outside the ground set");
      table_[s.bits] = true;
    }
    validate();
  }

  bool is_independent(ElementSet s) const override { return table_[s.bits]; }
  std::string kind() const override { return "explicit"; }

 private:
  void validate() const {
    const SetMask full = ground().all().bits;
    for (SetMask m = 1; m <= full; ++m) {
      if (!table_[m]) continue;
      for (int e : BitRange(SetMask{m}))
        if (!table_[m & ~(SetMask{1} << e)])
          throw BadParamsError("explicit family is not downward closed");
    }
    for (SetMask a = 0; a <= full; ++a) {
      if (!table_[a]) continue;
      for (SetMask b = 0; b <= full; ++b) {
        if (!table_[b] || std::popcount(a) >= std::popcount(b)) continue;
        bool extends = false;
        for (int e : BitRange(SetMask{b & ~a}))
          if (table_[a | (SetMask{1} << e)]) {
            extends = true;
            break;
          }
        if (!extends)
          throw BadParamsError("explicit family violates the exchange axiom");
      }
    }
  }

  std::vector<bool> table_;
};

class ContractedMatroid final : public MatroidOracle {
 public:
  ContractedMatroid(MatroidPtr base, ElementSet s)
      : MatroidOracle(base->ground()), base_(std::move(base)), s_(s) {}

  bool is_independent(ElementSet t) const override {
    if (t.intersects(s_)) return false;
    return base_->is_independent(t | s_);
  }
  std::string kind() const override { return "contracted"; }

 private:
  MatroidPtr base_;
  ElementSet s_;
};

}  // namespace

MatroidPtr make_uniform(int n, int r) {
  return std::make_shared<UniformMatroid>(n, r);
}

MatroidPtr make_partition(const std::vector<int>& part_of,
                          const std::vector<int>& capacities) {
  return std::make_shared<PartitionMatroid>(part_of, capacities);
}

MatroidPtr make_graphic(int n_vertices,
                        const std::vector<std::pair<int, int>>& edges) {
  return std::make_shared<GraphicMatroid>(n_vertices, edges);
}

MatroidPtr make_explicit(int n, const std::vector<ElementSet>& independent) {
  return std::make_shared<ExplicitMatroid>(n, independent);
}

MatroidPtr contract(MatroidPtr m, ElementSet s) {
  if (!m->is_independent(s))
    throw DependentContractionError("contracted set must be independent");
  return std::make_shared<ContractedMatroid>(std::move(m), s);
}

std::optional<PartitionView> as_partition(const MatroidOracle& m) {
  auto* p = dynamic_cast<const PartitionMatroid*>(&m);
  if (!p) return std::nullopt;
  return PartitionView{&p->part_of(), &p->capacities()};
}

int ExchangeMap::target_of(int b) const {
  for (auto [bb, e] : assignments)
    if (bb == b) return e;
  throw BadParamsError("element is not in the mapped set");
}

bool ExchangeMap::is_bijection() const {
  for (auto [b, e] : assignments)
    if (e < 0) return false;
  return true;
}

ExchangeMap exchange_map(const MatroidOracle& m, ElementSet i_set,
                         ElementSet j_set) {
  if (!m.is_independent(i_set) || !m.is_independent(j_set))
    throw DependentInputError("exchange_map requires independent inputs");

  // Equal sizes: work in the rank-|I| truncation, where no element is
  // addable on its own, so the whole of J \ I must be matched into I \ J.
  const bool equal_size = i_set.count() == j_set.count();
  const int cap = i_set.count();
  auto indep = [&](ElementSet s) {
    if (equal_size && s.count() > cap) return false;
    return m.is_independent(s);
  };

  std::vector<int> from = j_set.minus(i_set).ids();
  std::vector<int> into = i_set.minus(j_set).ids();

  ExchangeMap out;
  std::vector<int> pending;
  for (int b : from) {
    if (indep(i_set.with(b))) {
      out.assignments.emplace_back(b, -1);
    } else {
      pending.push_back(b);
    }
  }

  // Bipartite matching pending -> into, edge (b, e) iff (I - e) + b stays
  // independent.  Kuhn's algorithm with ascending-id adjacency keeps the
  // result deterministic and breaks ties toward the lowest element id.
  std::vector<std::vector<int>> adj(pending.size());
  for (size_t bi = 0; bi < pending.size(); ++bi)
    for (size_t ei = 0; ei < into.size(); ++ei)
      if (indep(i_set.without(into[ei]).with(pending[bi])))
        adj[bi].push_back(static_cast<int>(ei));

  std::vector<int> match_of_e(into.size(), -1);
  std::vector<char> visited;
  auto augment = [&](auto&& self, int bi) -> bool {
    for (int ei : adj[bi]) {
      if (visited[ei]) continue;
      visited[ei] = 1;
      if (match_of_e[ei] < 0 || self(self, match_of_e[ei])) {
        match_of_e[ei] = bi;
        return true;
      }
    }
    return false;
  };
  for (size_t bi = 0; bi < pending.size(); ++bi) {
    visited.assign(into.size(), 0);
    if (!augment(augment, static_cast<int>(bi)))
      throw InternalContradictionError(
          "no saturating exchange assignment exists; the independence "
          "oracle is not a matroid");
  }
  for (size_t ei = 0; ei < into.size(); ++ei)
    if (match_of_e[ei] >= 0)
      out.assignments.emplace_back(pending[match_of_e[ei]], into[ei]);

  std::sort(out.assignments.begin(), out.assignments.end());
  return out;
}

namespace {

// Matroid-union augmentation over two copies of m.  Grows disjoint
// independent sets until |S1| + |S2| reaches 2 * rank(V) or no augmenting
// path remains.
std::optional<std::pair<ElementSet, ElementSet>> two_bases_by_augmentation(
    const MatroidOracle& m) {
  const int n = m.n();
  const int target = 2 * m.full_rank();
  ElementSet side[2];

  auto free_mask = [&] { return m.ground().all().minus(side[0] | side[1]); };

  int rounds_cap = n * n + 4;
  while (side[0].count() + side[1].count() < target) {
    if (--rounds_cap < 0)
      throw InternalContradictionError(
          "matroid-union search exceeded its augmentation budget");

    // BFS over the exchange digraph from every free element.  parent[] and
    // via[] record the path; sink = an element directly addable to a side.
    std::vector<int> parent(n, -2), via(n, -1);
    std::deque<int> queue;
    for (int e : BitRange(free_mask())) {
      parent[e] = -1;
      queue.push_back(e);
    }
    int sink = -1, sink_side = -1;
    while (!queue.empty() && sink < 0) {
      int x = queue.front();
      queue.pop_front();
      for (int i = 0; i < 2 && sink < 0; ++i) {
        if (side[i].contains(x)) continue;
        if (m.is_independent(side[i].with(x))) {
          sink = x;
          sink_side = i;
          break;
        }
        for (int z : BitRange(side[i])) {
          if (parent[z] != -2) continue;
          if (m.is_independent(side[i].without(z).with(x))) {
            parent[z] = x;
            via[z] = i;
            queue.push_back(z);
          }
        }
      }
    }
    if (sink < 0) return std::nullopt;  // union is maximal, short of 2r

    // Walk back from the sink applying the displacements.
    side[sink_side] = side[sink_side].with(sink);
    int cur = sink;
    while (parent[cur] >= 0) {
      int prev = parent[cur];
      int i = via[cur];
      side[i] = side[i].without(cur).with(prev);
      cur = prev;
    }
    if (!m.is_independent(side[0]) || !m.is_independent(side[1]) ||
        side[0].intersects(side[1]))
      throw InternalContradictionError(
          "augmentation produced an invalid configuration");
  }
  return std::make_pair(side[0], side[1]);
}

}  // namespace

std::optional<std::pair<ElementSet, ElementSet>> find_two_disjoint_bases(
    const MatroidOracle& m) {
  if (auto* u = dynamic_cast<const UniformMatroid*>(&m)) {
    int r = std::min(u->r(), m.n());
    if (2 * r > m.n()) return std::nullopt;
    ElementSet b1, b2;
    for (int e = 0; e < r; ++e) b1 = b1.with(e);
    for (int e = r; e < 2 * r; ++e) b2 = b2.with(e);
    return std::make_pair(b1, b2);
  }
  if (auto view = as_partition(m)) {
    const auto& part_of = *view->part_of;
    const auto& caps = *view->capacities;
    std::vector<std::vector<int>> members(caps.size());
    for (int e = 0; e < m.n(); ++e) members[part_of[e]].push_back(e);
    ElementSet b1, b2;
    for (size_t p = 0; p < caps.size(); ++p) {
      int eff = std::min<int>(caps[p], static_cast<int>(members[p].size()));
      // A base takes eff elements from part p, so two disjoint bases need
      // 2*eff distinct ones.
      if (static_cast<int>(members[p].size()) < 2 * eff) return std::nullopt;
      for (int i = 0; i < eff; ++i) b1 = b1.with(members[p][i]);
      for (int i = eff; i < 2 * eff; ++i) b2 = b2.with(members[p][i]);
    }
    return std::make_pair(b1, b2);
  }
  return two_bases_by_augmentation(m);
}

}  // namespace submax
