#include "tracecluster/condritrac.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <limits>

#include "json.hpp"
#include "tracecluster/parallel.hpp"
#include "tracecluster/random.hpp"

namespace tracecluster {

void CondritracConfig::validate() const {
  if (k < 1) throw Error(ErrorKind::kInvalidConfig, "k must be >= 1");
  if (!(cvt >= 0.0 && cvt <= 1.0)) throw Error(ErrorKind::kInvalidConfig, "cvt must lie in [0, 1]");
  if (!(tvt >= 0.0 && tvt <= 1.0)) throw Error(ErrorKind::kInvalidConfig, "tvt must lie in [0, 1]");
  if (!(discovery.dependency_threshold >= 0.0 && discovery.dependency_threshold <= 1.0)) {
    throw Error(ErrorKind::kInvalidConfig, "dependency threshold must lie in [0, 1]");
  }
}

namespace {

constexpr std::size_t kUnplaced = std::numeric_limits<std::size_t>::max();

FollowsCounts counts_of(const GroupedEventLog& g, const std::vector<std::size_t>& unit) {
  FollowsCounts counts;
  for (std::size_t v : unit) counts.add(g.variant(v).activities, g.variant(v).multiplicity());
  return counts;
}

/// Cluster index of every placed variant.
std::vector<std::size_t> placement(const CondritracState& state, std::size_t n) {
  std::vector<std::size_t> where(n, kUnplaced);
  for (std::size_t c = 0; c < state.clusters.size(); ++c) {
    for (std::size_t v : state.clusters[c]) where[v] = c;
  }
  return where;
}

/// Clusters holding a cannot-link partner of some member of `unit`.
std::vector<bool> blocked_clusters(const VariantConstraintSet& vcs, const std::vector<std::size_t>& unit,
                                   const std::vector<std::size_t>& where, std::size_t cluster_count) {
  std::vector<bool> blocked(cluster_count, false);
  for (std::size_t u : unit) {
    for (std::size_t partner : vcs.cannot_link_neighbours()[u]) {
      if (where[partner] != kUnplaced) blocked[where[partner]] = true;
    }
  }
  return blocked;
}

/// Best candidate by cluster value, then trace value, then lowest index.
long long select_best(const std::vector<CandidateEvaluation>& candidates) {
  long long best = -1;
  double best_cmv = -1.0;
  double best_tmv = -1.0;
  for (const auto& e : candidates) {
    if (e.skipped || !e.passes_thresholds) continue;
    if (e.cmv > best_cmv || (e.cmv == best_cmv && e.tmv > best_tmv)) {
      best = static_cast<long long>(e.cluster);
      best_cmv = e.cmv;
      best_tmv = e.tmv;
    }
  }
  return best;
}

void place(const GroupedEventLog& g, CondritracState& state, std::vector<std::size_t>& where,
           std::size_t cluster, const std::vector<std::size_t>& unit) {
  for (std::size_t v : unit) {
    state.clusters[cluster].push_back(v);
    state.cluster_counts[cluster].add(g.variant(v).activities, g.variant(v).multiplicity());
    where[v] = cluster;
    state.trace.records[v].cluster = cluster;
  }
}

void remove_from_remaining(CondritracState& state, const std::vector<std::size_t>& unit) {
  auto& r = state.remaining;
  r.erase(std::remove_if(r.begin(), r.end(),
                         [&](std::size_t v) { return std::binary_search(unit.begin(), unit.end(), v); }),
          r.end());
}

}  // namespace

CondritracState phase1_initialize(const GroupedEventLog& g, const VariantConstraintSet& vcs,
                                  const CondritracConfig& config) {
  config.validate();
  const std::size_t n = g.support();
  if (vcs.variant_count() != n) {
    throw Error(ErrorKind::kDomainMismatch, "constraints were lifted onto a different log");
  }
  if (vcs.component_count() < config.k) {
    throw Error(ErrorKind::kInfeasibleK,
                fmt::format("k = {} but only {} must-link units exist", config.k, vcs.component_count()));
  }

  CondritracState state;
  state.remaining.resize(n);
  for (std::size_t v = 0; v < n; ++v) state.remaining[v] = v;
  state.trace.records.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    auto& record = state.trace.records[v];
    record.variant = v;
    record.representative = v;
    record.unit = vcs.connected(v);
  }
  std::vector<std::size_t> where(n, kUnplaced);

  auto seed_cluster = [&](std::size_t s, SeedOrigin origin) {
    const auto& unit = vcs.connected(s);
    state.clusters.emplace_back();
    state.cluster_counts.emplace_back();
    for (std::size_t v : unit) {
      state.trace.records[v].phase = 1;
      state.trace.records[v].representative = s;
      state.trace.records[v].seed = origin;
    }
    place(g, state, where, state.clusters.size() - 1, unit);
    remove_from_remaining(state, unit);
  };

  state.trace.clique = k_bounded_max_clique(vcs, config.k, config.clique);
  for (std::size_t s : state.trace.clique) seed_cluster(s, SeedOrigin::kClique);

  Rng rng(derive_seed(config.seed, 0x5eed));
  while (state.clusters.size() < config.k) {
    if (state.remaining.empty()) {
      throw Error(ErrorKind::kInfeasibleK, "ran out of variants while seeding clusters");
    }
    seed_cluster(state.remaining[uniform_index(rng, state.remaining.size())], SeedOrigin::kRandom);
  }
  return state;
}

void phase2_assign(const GroupedEventLog& g, const VariantConstraintSet& vcs,
                   const CondritracConfig& config, CondritracState& state) {
  std::vector<std::size_t> order = state.remaining;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return g.variant(a).multiplicity() > g.variant(b).multiplicity();
  });
  std::vector<std::size_t> where = placement(state, g.support());
  std::vector<bool> done(g.support(), false);

  for (std::size_t t : order) {
    if (done[t]) continue;
    const std::vector<std::size_t>& unit = vcs.connected(t);
    const FollowsCounts unit_counts = counts_of(g, unit);
    const std::size_t cluster_count = state.clusters.size();
    const std::vector<bool> blocked = blocked_clusters(vcs, unit, where, cluster_count);

    std::vector<CandidateEvaluation> candidates(cluster_count);
    parallel_for(cluster_count, config.jobs, [&](std::size_t c) {
      CandidateEvaluation& e = candidates[c];
      e.cluster = c;
      if (blocked[c]) {
        e.skipped = true;
        return;
      }
      FollowsCounts merged = state.cluster_counts[c];
      merged.add(unit_counts);
      const ProcessModel model = discover(merged, config.discovery);
      e.tmv = conformance(model, unit_counts).f1;
      e.cmv = conformance(model, merged).f1;
      e.passes_thresholds = e.tmv >= config.tvt && e.cmv >= config.cvt;
    });
    const long long best = select_best(candidates);

    for (std::size_t v : unit) {
      auto& record = state.trace.records[v];
      record.phase = 2;
      record.representative = t;
      done[v] = true;
    }
    auto& record = state.trace.records[t];
    record.phase2 = std::move(candidates);
    record.phase2_result = best;
    if (best >= 0) {
      place(g, state, where, static_cast<std::size_t>(best), unit);
    } else {
      state.unassignable.push_back(t);
    }
    remove_from_remaining(state, unit);
  }
}

ClusteringSolution phase3_resolve(const GroupedEventLog& g, const VariantConstraintSet& vcs,
                                  const CondritracConfig& config, CondritracState& state) {
  std::vector<std::size_t> where = placement(state, g.support());
  if (config.separate_unassignable) {
    if (!state.unassignable.empty()) {
      state.clusters.emplace_back();
      state.cluster_counts.emplace_back();
      for (std::size_t t : state.unassignable) {
        for (std::size_t v : vcs.connected(t)) state.trace.records[v].phase = 3;
        place(g, state, where, state.clusters.size() - 1, vcs.connected(t));
      }
    }
  } else {
    std::vector<ProcessModel> models;
    models.reserve(state.clusters.size());
    for (const auto& counts : state.cluster_counts) models.push_back(discover(counts, config.discovery));

    for (std::size_t t : state.unassignable) {
      const std::vector<std::size_t>& unit = vcs.connected(t);
      const FollowsCounts unit_counts = counts_of(g, unit);
      const std::size_t cluster_count = state.clusters.size();
      const std::vector<bool> blocked = blocked_clusters(vcs, unit, where, cluster_count);

      std::vector<CandidateEvaluation> candidates(cluster_count);
      parallel_for(cluster_count, config.jobs, [&](std::size_t c) {
        CandidateEvaluation& e = candidates[c];
        e.cluster = c;
        if (blocked[c]) {
          e.skipped = true;
          return;
        }
        FollowsCounts merged = state.cluster_counts[c];
        merged.add(unit_counts);
        e.tmv = conformance(models[c], unit_counts).f1;
        e.cmv = conformance(models[c], merged).f1;
        e.passes_thresholds = true;
      });
      long long best = select_best(candidates);
      auto& record = state.trace.records[t];
      if (best < 0) {
        // every cluster holds a cannot-link partner
        record.overflow = true;
        state.clusters.emplace_back();
        state.cluster_counts.emplace_back();
        models.push_back(discover(unit_counts, config.discovery));
        best = static_cast<long long>(state.clusters.size() - 1);
      }
      record.phase3 = std::move(candidates);
      for (std::size_t v : unit) state.trace.records[v].phase = 3;
      place(g, state, where, static_cast<std::size_t>(best), unit);
    }
  }

  std::vector<std::size_t> assignment(g.support(), kUnplaced);
  for (std::size_t c = 0; c < state.clusters.size(); ++c) {
    for (std::size_t v : state.clusters[c]) assignment[v] = c;
  }
  return ClusteringSolution(state.clusters.size(), std::move(assignment), "ConDriTraC");
}

CondritracResult condritrac(const GroupedEventLog& g, const VariantConstraintSet& vcs,
                            const CondritracConfig& config) {
  CondritracState state = phase1_initialize(g, vcs, config);
  phase2_assign(g, vcs, config, state);
  ClusteringSolution solution = phase3_resolve(g, vcs, config, state);
  return {std::move(solution), std::move(state.trace)};
}

CondritracResult condritrac(const GroupedEventLog& g, const ConstraintSet& cs,
                            const CondritracConfig& config) {
  return condritrac(g, lift(cs, g, true), config);
}

namespace {

nlohmann::json candidates_json(const std::vector<CandidateEvaluation>& candidates) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : candidates) {
    nlohmann::json j{{"cluster", e.cluster}, {"skipped", e.skipped}};
    if (!e.skipped) {
      j["tmv"] = e.tmv;
      j["cmv"] = e.cmv;
      j["passes_thresholds"] = e.passes_thresholds;
    }
    out.push_back(std::move(j));
  }
  return out;
}

const char* origin_name(SeedOrigin origin) {
  switch (origin) {
    case SeedOrigin::kClique: return "clique";
    case SeedOrigin::kRandom: return "random";
    case SeedOrigin::kNone: break;
  }
  return nullptr;
}

}  // namespace

std::string to_json(const AssignmentTrace& trace, const CondritracConfig& config) {
  nlohmann::json j;
  j["k"] = config.k;
  j["cvt"] = config.cvt;
  j["tvt"] = config.tvt;
  j["dependency_threshold"] = config.discovery.dependency_threshold;
  j["separate_unassignable"] = config.separate_unassignable;
  j["seed"] = config.seed;
  j["clique"] = trace.clique;
  j["records"] = nlohmann::json::array();
  for (const auto& r : trace.records) {
    nlohmann::json record{{"variant", r.variant},
                          {"representative", r.representative},
                          {"unit", r.unit},
                          {"phase", r.phase},
                          {"phase2", candidates_json(r.phase2)},
                          {"phase3", candidates_json(r.phase3)},
                          {"cluster", r.cluster}};
    record["phase2_result"] = r.phase2_result ? nlohmann::json(*r.phase2_result) : nlohmann::json();
    if (const char* origin = origin_name(r.seed)) record["seed"] = origin;
    if (r.overflow) record["overflow"] = true;
    j["records"].push_back(std::move(record));
  }
  return j.dump(1) + "\n";
}

}  // namespace tracecluster
