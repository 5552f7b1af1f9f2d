#include "submax/harness.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>

#include "submax/rng.hpp"

namespace submax {

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(),
                  nullptr))
    throw Error("sha256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xF]);
  }
  return out;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SUBMAX_SEED")) {
    char* end = nullptr;
    std::uint64_t v = std::strtoull(env, &end, 10);
    if (end && *end == '\0') return v;
  }
  return 1;
}

InstanceFile::InstanceFile(Json doc) : doc_(std::move(doc)) {
  for (const char* key : {"n", "function", "constraints"})
    if (!doc_.contains(key))
      throw BadParamsError(std::string("instance is missing '") + key + "'");
  if (n() < 1) throw BadParamsError("instance must have n >= 1");
}

InstanceFile InstanceFile::parse(const std::string& text) {
  Json j = Json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw BadParamsError("instance is not valid JSON");
  return InstanceFile(std::move(j));
}

std::string InstanceFile::name() const {
  return doc_.value("name", std::string("unnamed"));
}

int InstanceFile::n() const { return doc_.at("n").get<int>(); }

std::string InstanceFile::constraint_type() const {
  return doc_.at("constraints").at("type").get<std::string>();
}

OraclePtr InstanceFile::build_oracle() const {
  const Json& fn = doc_.at("function");
  const std::string kind = fn.at("kind").get<std::string>();
  if (kind == "cut_undirected" || kind == "cut_directed") {
    std::vector<WeightedEdge> edges;
    for (const auto& e : fn.at("edges"))
      edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(),
                       e.at(2).get<double>()});
    return build_cut(n(), edges, kind == "cut_directed");
  }
  if (kind == "coverage") {
    std::vector<std::vector<int>> sets;
    for (const auto& s : fn.at("sets"))
      sets.push_back(s.get<std::vector<int>>());
    return build_coverage(n(), sets,
                          fn.at("universe_weights").get<std::vector<double>>());
  }
  if (kind == "facility_location") {
    return build_facility_location(
        fn.at("profits").get<std::vector<std::vector<double>>>());
  }
  if (kind == "modular")
    return build_modular(fn.at("weights").get<std::vector<double>>());
  if (kind == "explicit_table")
    return build_explicit_table(n(),
                                fn.at("values").get<std::vector<double>>());
  throw BadParamsError("unknown function kind: " + kind);
}

namespace {

MatroidPtr matroid_from_json(int n, const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "uniform") return make_uniform(n, j.at("rank").get<int>());
  if (kind == "partition")
    return make_partition(j.at("part_of").get<std::vector<int>>(),
                          j.at("capacities").get<std::vector<int>>());
  if (kind == "graphic") {
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges"))
      edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    return make_graphic(j.at("vertices").get<int>(), edges);
  }
  if (kind == "explicit") {
    std::vector<ElementSet> family;
    for (const auto& m : j.at("independent"))
      family.push_back(ElementSet{m.get<SetMask>()});
    return make_explicit(n, family);
  }
  throw BadParamsError("unknown matroid kind: " + kind);
}

Json matroid_to_json(const MatroidPtr& m);  // defined by generators below

}  // namespace

std::vector<MatroidPtr> InstanceFile::build_matroids() const {
  if (constraint_type() != "matroids")
    throw KindMismatchError("instance has no matroid list");
  std::vector<MatroidPtr> out;
  for (const auto& j : doc_.at("constraints").at("matroids"))
    out.push_back(matroid_from_json(n(), j));
  return out;
}

KnapsackSystem InstanceFile::build_knapsacks() const {
  if (constraint_type() != "knapsacks")
    throw KindMismatchError("instance has no knapsack system");
  return KnapsackSystem(doc_.at("constraints")
                            .at("weights")
                            .get<std::vector<std::vector<double>>>());
}

BaseConstraint InstanceFile::build_base_constraint() const {
  if (constraint_type() != "base")
    throw KindMismatchError("instance has no base constraint");
  return make_base_constraint(
      matroid_from_json(n(), doc_.at("constraints").at("matroid")));
}

int InstanceFile::cardinality() const {
  if (constraint_type() != "cardinality")
    throw KindMismatchError("instance has no cardinality constraint");
  return doc_.at("constraints").at("c").get<int>();
}

FeasibilityPredicate InstanceFile::build_feasibility() const {
  const std::string type = constraint_type();
  if (type == "matroids") return feas_matroid_intersection(build_matroids());
  if (type == "knapsacks") return feas_knapsack(build_knapsacks());
  if (type == "base") return feas_base(build_base_constraint());
  if (type == "cardinality") return feas_cardinality(cardinality());
  throw BadParamsError("unknown constraint type: " + type);
}

InstanceFile gen_greedy_tight(int k, int p) {
  if (k < 1 || p < 2) throw BadParamsError("greedy-tight needs k >= 1, p >= 2");
  const int universe = p * (k + 1) + 2;
  std::vector<double> weights(universe, 1.0);

  // Family order: S0, S1..Sk, T1, T2.
  std::vector<std::vector<int>> sets;
  std::vector<int> s0;
  for (int e = 0; e <= p; ++e) s0.push_back(e);
  sets.push_back(s0);
  for (int i = 1; i <= k; ++i) {
    std::vector<int> si;
    for (int e = p * i + 1; e <= p * (i + 1); ++e) si.push_back(e);
    sets.push_back(si);
  }
  std::vector<int> t1;
  for (int e = 0; e <= p - 1; ++e) t1.push_back(e);
  sets.push_back(t1);
  sets.push_back({p});

  const int n = k + 3;
  Json matroids = Json::array();
  for (int j = 1; j <= k; ++j) {
    // Part 0 holds {S0, Sj}; every other family member is its own part.
    std::vector<int> part_of(n);
    int next_part = 1;
    for (int e = 0; e < n; ++e)
      part_of[e] = (e == 0 || e == j) ? 0 : next_part++;
    std::vector<int> caps(next_part, 1);
    matroids.push_back(
        {{"kind", "partition"}, {"part_of", part_of}, {"capacities", caps}});
  }

  Json doc{
      {"n", n},
      {"name",
       "greedy-tight-k" + std::to_string(k) + "-p" + std::to_string(p)},
      {"function",
       {{"kind", "coverage"},
        {"sets", sets},
        {"universe_weights", weights}}},
      {"constraints", {{"type", "matroids"}, {"matroids", matroids}}},
      {"metadata",
       {{"generator", "greedy-tight"}, {"k", k}, {"p", p},
        {"universe_size", universe},
        {"coverable", p * (k + 1) + 1}}}};
  return InstanceFile(std::move(doc));
}

InstanceFile gen_swap_trap(int n_side, int t) {
  if (n_side < 1 || t < 2) throw BadParamsError("swap-trap needs n>=1, t>=2");
  const int n = 2 * n_side;
  Json edges = Json::array();
  // Forward multiplicities: 1 on the diagonal, then round-robin over the
  // other columns capped at 2, which keeps the V side swap-locally optimal
  // whenever t <= 2 n_side - 1.
  for (int i = 0; i < n_side; ++i) {
    std::vector<int> mult(n_side, 0);
    mult[i] = 1;
    int remaining = t - 1;
    int cap = 2;
    while (remaining > 0) {
      bool placed = false;
      for (int j = 0; j < n_side && remaining > 0; ++j) {
        if (j == i || mult[j] >= cap) continue;
        ++mult[j];
        --remaining;
        placed = true;
      }
      if (!placed) ++cap;  // t too large for the cap; keep distributing
    }
    for (int j = 0; j < n_side; ++j)
      if (mult[j] > 0)
        edges.push_back({i, n_side + j, static_cast<double>(mult[j])});
  }
  for (int j = 0; j < n_side; ++j)
    edges.push_back({n_side + j, j, 1.0});

  Json doc{
      {"n", n},
      {"name",
       "swap-trap-" + std::to_string(n_side) + "x" + std::to_string(t)},
      {"function", {{"kind", "cut_directed"}, {"edges", edges}}},
      {"constraints",
       {{"type", "base"},
        {"matroid", {{"kind", "uniform"}, {"rank", n_side}}}}},
      {"metadata",
       {{"generator", "swap-trap"}, {"n_side", n_side}, {"t", t}}}};
  return InstanceFile(std::move(doc));
}

InstanceFile gen_random(const RandomSpec& spec) {
  if (spec.n < 1 || spec.n > 64 || spec.k < 1 || spec.density < 0 ||
      spec.density > 1)
    throw BadParamsError("bad random-instance parameters");
  SeqRng gen(spec.seed, 7);

  Json function;
  const int n = spec.n;
  if (spec.kind == "cut-undirected" || spec.kind == "cut-directed") {
    Json edges = Json::array();
    bool directed = spec.kind == "cut-directed";
    for (int u = 0; u < n; ++u)
      for (int v = directed ? 0 : u + 1; v < n; ++v) {
        if (v == u) continue;
        if (gen.uniform01() < spec.density)
          edges.push_back({u, v, static_cast<double>(1 + gen.below(4))});
      }
    function = {{"kind", directed ? "cut_directed" : "cut_undirected"},
                {"edges", edges}};
  } else if (spec.kind == "coverage") {
    const int universe = n + 4;
    Json sets = Json::array();
    for (int i = 0; i < n; ++i) {
      std::vector<int> covered{i % universe};
      for (int u = 0; u < universe; ++u)
        if (u != i % universe && gen.uniform01() < spec.density)
          covered.push_back(u);
      sets.push_back(covered);
    }
    function = {{"kind", "coverage"},
                {"sets", sets},
                {"universe_weights", std::vector<double>(universe, 1.0)}};
  } else if (spec.kind == "facility") {
    const int clients = std::max(2, n / 2 + 1);
    std::vector<std::vector<double>> profits(clients,
                                             std::vector<double>(n, 0.0));
    for (auto& row : profits)
      for (double& v : row)
        v = gen.uniform01() < spec.density ? gen.uniform(0.0, 5.0) : 0.0;
    function = {{"kind", "facility_location"}, {"profits", profits}};
  } else if (spec.kind == "modular") {
    std::vector<double> weights(n);
    for (double& w : weights) w = gen.uniform(0.5, 5.0);
    function = {{"kind", "modular"}, {"weights", weights}};
  } else {
    throw BadParamsError("unknown random kind: " + spec.kind);
  }

  Json constraints;
  if (spec.constraint == "matroids" || spec.constraint == "partition") {
    Json matroids = Json::array();
    for (int j = 0; j < spec.k; ++j) {
      bool partition = spec.constraint == "partition" || (j % 2 == 1);
      if (!partition) {
        int rank = 1 + static_cast<int>(gen.below(std::max(1, n / 2)));
        matroids.push_back({{"kind", "uniform"}, {"rank", rank}});
      } else {
        int chunk = 2 + static_cast<int>(gen.below(2));
        std::vector<int> part_of(n);
        for (int e = 0; e < n; ++e)
          part_of[e] =
              static_cast<int>((e + j + gen.below(2)) % ((n + chunk - 1) / chunk));
        int parts = *std::max_element(part_of.begin(), part_of.end()) + 1;
        std::vector<int> caps(parts);
        for (int& c : caps) c = 1 + static_cast<int>(gen.below(2));
        matroids.push_back({{"kind", "partition"},
                            {"part_of", part_of},
                            {"capacities", caps}});
      }
    }
    constraints = {{"type", "matroids"}, {"matroids", matroids}};
  } else if (spec.constraint == "knapsacks" ||
             spec.constraint == "light-knapsacks") {
    if (spec.weight_lo < 0 || spec.weight_hi > 1 ||
        spec.weight_lo > spec.weight_hi)
      throw BadParamsError("knapsack weight range must sit inside [0, 1]");
    std::vector<std::vector<double>> weights(spec.k, std::vector<double>(n));
    for (auto& row : weights)
      for (double& w : row) w = gen.uniform(spec.weight_lo, spec.weight_hi);
    constraints = {{"type", "knapsacks"}, {"weights", weights}};
  } else if (spec.constraint == "base") {
    int rank = 1 + static_cast<int>(gen.below(std::max(1, n / 2)));
    constraints = {{"type", "base"},
                   {"matroid", {{"kind", "uniform"}, {"rank", rank}}}};
  } else if (spec.constraint == "cardinality") {
    constraints = {{"type", "cardinality"},
                   {"c", static_cast<int>(gen.below(n + 1))}};
  } else {
    throw BadParamsError("unknown constraint family: " + spec.constraint);
  }

  Json doc{{"n", n},
           {"name", spec.kind + "-" + spec.constraint + "-n" +
                        std::to_string(n) + "-k" + std::to_string(spec.k) +
                        "-s" + std::to_string(spec.seed)},
           {"function", function},
           {"constraints", constraints},
           {"metadata",
            {{"generator", "random"},
             {"kind", spec.kind},
             {"constraint", spec.constraint},
             {"density", spec.density},
             {"k", spec.k},
             {"seed", spec.seed}}}};
  return InstanceFile(std::move(doc));
}

Json RunConfig::to_json() const {
  return Json{{"algorithm", algorithm}, {"params", params}, {"seed", seed}};
}

Json RunRecord::to_json(bool include_wall) const {
  Json j{{"instance", instance_fingerprint},
         {"instance_name", instance_name},
         {"algorithm", algorithm},
         {"config", config},
         {"seed", seed},
         {"solution", solution},
         {"value", value},
         {"oracle_calls",
          {{"requests", calls.requests}, {"distinct", calls.distinct}}},
         {"certificates", certificates},
         {"all_certificates_pass", all_certificates_pass}};
  if (include_wall) j["wall_ms"] = wall_ms;
  return j;
}

namespace {

SearchConfig search_config_from(const Json& params) {
  SearchConfig cfg;
  cfg.epsilon = params.value("epsilon", 0.05);
  cfg.scaling_exponent = params.value("scaling_exponent", 4);
  cfg.p = params.value("p", 1);
  cfg.move_cap = params.value("move_cap", std::uint64_t{0});
  if (params.value("full_enumeration", false))
    cfg.exchange_mode = SearchConfig::ExchangeMode::kFullEnumeration;
  return cfg;
}

FracSearchConfig frac_config_from(const Json& params, std::uint64_t seed) {
  FracSearchConfig cfg;
  cfg.zeta = params.value("zeta", 0.0);
  cfg.faithful_grid = params.value("faithful_grid", false);
  cfg.epsilon = params.value("frac_epsilon", 0.0);
  cfg.delta_outer = params.value("delta_outer", 0.1);
  cfg.eta = params.value("eta", 0.1);
  cfg.heavy_delta = params.value("heavy_delta", 0.0);
  cfg.heavy_cap = params.value("heavy_cap", 4);
  cfg.eps_round = params.value("eps_round", -1.0);
  cfg.trials = params.value("trials", std::uint64_t{200});
  cfg.seed = seed;
  if (params.value("polish_full_grid", false)) cfg.polish_full_grid = true;
  cfg.exact_max_fractional = params.value("exact_max_fractional", 18);
  cfg.mc_samples = params.value("mc_samples", std::uint64_t{20000});
  return cfg;
}

Json cert_json(const CertReport& c) {
  return Json{{"name", c.name},
              {"pass", c.pass},
              {"worst_slack", c.worst_slack},
              {"checked", c.checked}};
}

// Attaches the local-optimum lemma certificate matching the engine that
// produced `rep`, for this report and every nested iteration.
void attach_lemma_certs(Json& certs, const SubmodularOracle& f,
                        const SolutionReport& rep,
                        const std::vector<MatroidPtr>& ms,
                        const SearchConfig& scfg, int p_used) {
  if (f.n() > 14) return;
  std::span<const MatroidPtr> span_ms(ms);
  auto attach_one = [&](const SolutionReport& r) {
    if (r.engine == "local-search" || r.engine == "symmetric-local-search") {
      certs.push_back(cert_json(certify_matroid_local_lemma(
          f, r.solution, span_ms, scfg.epsilon, r.ground_subset)));
    } else if (r.engine == "p-exchange") {
      certs.push_back(cert_json(certify_partition_lemma(
          f, r.solution, span_ms, p_used, scfg.epsilon, r.ground_subset)));
    }
  };
  if (rep.iterations.empty()) {
    attach_one(rep);
  } else {
    for (const auto& it : rep.iterations) attach_one(it);
  }
}

// Improving-move accounting for every nested local-search run.
void attach_move_bound(Json& certs, int n, const SolutionReport& rep) {
  std::uint64_t worst_moves = 0, bound = 0;
  bool pass = true;
  auto visit = [&](const SolutionReport& r, auto&& self) -> void {
    if (r.engine == "local-search" || r.engine == "symmetric-local-search") {
      std::uint64_t b = move_count_bound(n, r.threshold_factor);
      worst_moves = std::max<std::uint64_t>(worst_moves, r.moves.size());
      bound = std::max(bound, b);
      if (r.moves.size() > b) pass = false;
    }
    for (const auto& it : r.iterations) self(it, self);
  };
  visit(rep, visit);
  if (bound > 0)
    certs.push_back(Json{{"name", "move-bound"},
                         {"pass", pass},
                         {"max_moves", worst_moves},
                         {"bound", bound}});
}

}  // namespace

RunRecord run_one(const InstanceFile& instance, const RunConfig& config,
                  bool certify) {
  const auto t0 = std::chrono::steady_clock::now();
  OraclePtr f = instance.build_oracle();
  const std::string& alg = config.algorithm;
  const std::string ctype = instance.constraint_type();
  const Json& params = config.params;
  SearchConfig scfg = search_config_from(params);

  auto require = [&](const char* needed) {
    if (ctype != needed)
      throw KindMismatchError("algorithm '" + alg + "' needs a '" + needed +
                              "' constraint block, instance has '" + ctype +
                              "'");
  };

  SolutionReport rep;
  std::vector<MatroidPtr> ms;
  int p_used = scfg.p;
  if (alg == "local-search" || alg == "repeated-local-search" ||
      alg == "symmetric" || alg == "p-exchange" || alg == "partition" ||
      alg == "greedy") {
    require("matroids");
    ms = instance.build_matroids();
    std::span<const MatroidPtr> span_ms(ms);
    if (alg == "local-search")
      rep = local_search(*f, f->ground().all(), span_ms, scfg);
    else if (alg == "repeated-local-search")
      rep = repeated_local_search(*f, span_ms, scfg);
    else if (alg == "symmetric")
      rep = symmetric_local_search(*f, span_ms, scfg);
    else if (alg == "p-exchange")
      rep = p_exchange_search(*f, span_ms, scfg);
    else if (alg == "partition") {
      double eps = params.value("epsilon", 1.0);
      bool monotone = params.value("monotone", false);
      p_used = 1 + static_cast<int>(
                       std::ceil(2.0 * static_cast<double>(ms.size()) / eps));
      scfg.epsilon = eps;
      scfg.p = p_used;
      rep = partition_search(*f, span_ms, eps, monotone);
    } else
      rep = greedy_baseline(*f, span_ms);
  } else if (alg == "swap-base" || alg == "two-base") {
    require("base");
    BaseConstraint bc = instance.build_base_constraint();
    rep = alg == "swap-base" ? swap_base_search(*f, bc, scfg)
                             : two_base_search(*f, bc, scfg);
  } else if (alg == "exact-cardinality") {
    require("cardinality");
    rep = exact_cardinality_search(*f, instance.cardinality(), scfg);
  } else if (alg == "knapsack") {
    require("knapsacks");
    KnapsackSystem ks = instance.build_knapsacks();
    rep = knapsack_solver(*f, ks, params.value("eta", 0.1),
                          frac_config_from(params, config.seed));
  } else {
    throw BadParamsError("unknown algorithm: " + alg);
  }

  RunRecord record;
  record.instance_name = instance.name();
  record.instance_fingerprint = instance.fingerprint();
  record.algorithm = alg;
  record.config = config.to_json();
  record.seed = config.seed;
  record.solution = rep.solution.ids();
  record.value = rep.value;
  record.calls = rep.calls;

  if (certify) {
    Json certs = Json::array();
    FeasibilityPredicate feas = instance.build_feasibility();
    certs.push_back(Json{{"name", "feasibility"},
                          {"pass", feas(rep.solution)}});
    if (instance.n() <= 22) {
      RatioReport ratio = measure_ratio(
          rep.value, *f, feas, params.value("ratio_threshold", 0.0));
      certs.push_back(Json{{"name", "ratio"},
                           {"pass", ratio.pass},
                           {"opt", ratio.opt},
                           {"ratio", ratio.ratio},
                           {"threshold", ratio.threshold}});
    }
    if (!ms.empty()) attach_lemma_certs(certs, *f, rep, ms, scfg, p_used);
    if (alg == "swap-base" && instance.n() <= 14) {
      std::vector<MatroidPtr> single{instance.build_base_constraint().matroid};
      certs.push_back(cert_json(certify_matroid_local_lemma(
          *f, rep.solution, single, scfg.epsilon, f->ground().all(),
          /*swap_only=*/true)));
    }
    attach_move_bound(certs, instance.n(), rep);
    record.certificates = certs;
    for (const auto& c : certs)
      if (!c.at("pass").get<bool>()) record.all_certificates_pass = false;
  }

  record.report = std::move(rep);
  record.wall_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
  return record;
}

std::vector<RunRecord> run_experiment(const std::vector<InstanceFile>& instances,
                                      const std::vector<RunConfig>& configs,
                                      bool certify) {
  std::vector<RunRecord> records;
  records.reserve(instances.size() * configs.size());
  for (const auto& instance : instances)
    for (const auto& config : configs)
      records.push_back(run_one(instance, config, certify));
  return records;
}

}  // namespace submax
