#include "tracecluster/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fmt/format.h>
#include <numeric>
#include <sstream>

#include "tracecluster/csv.hpp"
#include "tracecluster/random.hpp"

namespace tracecluster {

TracePair unordered_pair(std::string a, std::string b) {
  return a < b ? TracePair{std::move(a), std::move(b)} : TracePair{std::move(b), std::move(a)};
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  // smaller index stays the root
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

/// Shortest must-link path from `from` to `to`, empty if none.
std::vector<std::string> must_link_path(const std::set<TracePair>& ml, const std::string& from,
                                        const std::string& to) {
  std::map<std::string, std::vector<std::string>> adjacency;
  for (const auto& [a, b] : ml) {
    adjacency[a].push_back(b);
    adjacency[b].push_back(a);
  }
  std::map<std::string, std::string> previous{{from, from}};
  std::deque<std::string> queue{from};
  while (!queue.empty()) {
    const std::string current = queue.front();
    queue.pop_front();
    if (current == to) break;
    for (const auto& next : adjacency[current]) {
      if (previous.emplace(next, current).second) queue.push_back(next);
    }
  }
  if (!previous.contains(to)) return {};
  std::vector<std::string> path{to};
  while (path.back() != from) path.push_back(previous[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

// ---------------------------------------------------------------- validation

void ValidationReport::throw_if_invalid() const {
  if (issues.empty()) return;
  throw Error(issues.front().kind, issues.front().message);
}

ValidationReport validate(const ConstraintSet& cs) {
  ValidationReport report;
  for (const auto* pairs : {&cs.must_links, &cs.cannot_links}) {
    for (const auto& p : *pairs) {
      if (p.first == p.second) {
        report.issues.push_back({ErrorKind::kSelfConstraint, p, {}, "self constraint on '" + p.first + "'"});
      }
    }
  }
  for (const auto& p : cs.cannot_links) {
    if (p.first == p.second) continue;
    std::vector<std::string> path = must_link_path(cs.must_links, p.first, p.second);
    if (path.empty()) continue;
    std::string joined;
    for (const auto& id : path) joined += (joined.empty() ? "" : " - ") + id;
    report.issues.push_back({ErrorKind::kMlClConflict, p, std::move(path),
                             fmt::format("cannot-link {{{}, {}}} contradicts must-link path {}",
                                         p.first, p.second, joined)});
  }
  return report;
}

ValidationReport validate(const ConstraintSet& cs, const EventLog& log) {
  ValidationReport report;
  std::set<std::string> reported;
  for (const auto* pairs : {&cs.must_links, &cs.cannot_links}) {
    for (const auto& p : *pairs) {
      for (const auto& id : {p.first, p.second}) {
        if (log.find(id) == EventLog::npos && reported.insert(id).second) {
          report.issues.push_back({ErrorKind::kUnknownTraceId, p, {}, "unknown trace id '" + id + "'"});
        }
      }
    }
  }
  ValidationReport structural = validate(cs);
  report.issues.insert(report.issues.end(), structural.issues.begin(), structural.issues.end());
  return report;
}

// ----------------------------------------------------------------- extension

ExtendedConstraintSet extend(const ConstraintSet& cs) {
  const ValidationReport report = validate(cs);
  if (!report.ok()) throw Error(ErrorKind::kInvalidInput, report.issues.front().message);

  std::set<std::string> id_set;
  for (const auto* pairs : {&cs.must_links, &cs.cannot_links}) {
    for (const auto& [a, b] : *pairs) {
      id_set.insert(a);
      id_set.insert(b);
    }
  }
  const std::vector<std::string> ids(id_set.begin(), id_set.end());
  auto index = [&](const std::string& id) {
    return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };

  DisjointSets sets(ids.size());
  for (const auto& [a, b] : cs.must_links) sets.unite(index(a), index(b));

  ExtendedConstraintSet out;
  out.source_ = cs;
  std::map<std::size_t, std::size_t> root_component;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    auto [it, inserted] = root_component.emplace(sets.find(i), out.members_.size());
    if (inserted) out.members_.emplace_back();
    out.members_[it->second].push_back(ids[i]);
    out.component_.emplace(ids[i], it->second);
  }
  for (const auto& members : out.members_) {
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) out.ml_plus_.emplace(members[i], members[j]);
    }
  }
  for (const auto& [a, b] : cs.cannot_links) {
    for (const auto& x : out.members_[out.component_.at(a)]) {
      for (const auto& y : out.members_[out.component_.at(b)]) out.cl_plus_.insert(unordered_pair(x, y));
    }
  }
  return out;
}

std::vector<std::string> ExtendedConstraintSet::connected(const std::string& id) const {
  const auto it = component_.find(id);
  if (it == component_.end()) return {id};
  return members_[it->second];
}

std::vector<std::string> ExtendedConstraintSet::constrained_ids() const {
  std::vector<std::string> out;
  out.reserve(component_.size());
  for (const auto& [id, component] : component_) out.push_back(id);
  return out;
}

std::vector<std::string> connected_traces(const std::string& trace_id,
                                          const ExtendedConstraintSet& ecs, const EventLog& log) {
  if (log.find(trace_id) == EventLog::npos) {
    throw Error(ErrorKind::kUnknownTraceId, "unknown trace id '" + trace_id + "'");
  }
  return ecs.connected(trace_id);
}

// ---------------------------------------------------------------------- lift

VariantConstraintSet::VariantConstraintSet(std::size_t variant_count)
    : component_(variant_count), members_(variant_count), cl_neighbours_(variant_count) {
  for (std::size_t v = 0; v < variant_count; ++v) {
    component_[v] = v;
    members_[v] = {v};
  }
}

bool VariantConstraintSet::cannot_link(std::size_t a, std::size_t b) const {
  const auto& neighbours = cl_neighbours_.at(a);
  return std::binary_search(neighbours.begin(), neighbours.end(), b);
}

VariantConstraintSet lift(const ConstraintSet& cs, const GroupedEventLog& g, bool extended) {
  const EventLog& log = g.source();
  validate(cs, log).throw_if_invalid();

  auto variant = [&](const std::string& id) { return g.variant_of(id); };
  const std::size_t n = g.support();

  std::set<IndexPair> raw_ml;
  std::set<IndexPair> raw_cl;
  for (const auto& [a, b] : cs.must_links) {
    const std::size_t va = variant(a), vb = variant(b);
    if (va != vb) raw_ml.insert(unordered_pair(va, vb));
  }
  for (const auto& [a, b] : cs.cannot_links) {
    const std::size_t va = variant(a), vb = variant(b);
    if (va == vb) {
      throw Error(ErrorKind::kIntraVariantCannotLink,
                  fmt::format("cannot-link {{{}, {}}} joins two traces of variant {}", a, b, va));
    }
    raw_cl.insert(unordered_pair(va, vb));
  }

  DisjointSets sets(n);
  for (const auto& [a, b] : raw_ml) sets.unite(a, b);

  VariantConstraintSet out(0);
  out.component_.assign(n, 0);
  out.cl_neighbours_.assign(n, {});
  std::vector<std::size_t> root_component(n, static_cast<std::size_t>(-1));
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t& c = root_component[sets.find(v)];
    if (c == static_cast<std::size_t>(-1)) {
      c = out.members_.size();
      out.members_.emplace_back();
    }
    out.members_[c].push_back(v);
    out.component_[v] = c;
  }

  std::set<IndexPair> closed_cl;
  for (const auto& [a, b] : raw_cl) {
    if (out.component_[a] == out.component_[b]) {
      throw Error(ErrorKind::kMlClConflict,
                  fmt::format("cannot-link between variants {} and {} contradicts their must-links", a, b));
    }
    for (std::size_t x : out.members_[out.component_[a]]) {
      for (std::size_t y : out.members_[out.component_[b]]) closed_cl.insert(unordered_pair(x, y));
    }
  }
  for (const auto& [a, b] : closed_cl) {
    out.cl_neighbours_[a].push_back(b);
    out.cl_neighbours_[b].push_back(a);
  }
  for (auto& neighbours : out.cl_neighbours_) std::sort(neighbours.begin(), neighbours.end());

  if (extended) {
    for (const auto& members : out.members_) {
      for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) out.ml_pairs_.emplace(members[i], members[j]);
      }
    }
    out.cl_pairs_ = std::move(closed_cl);
  } else {
    out.ml_pairs_ = std::move(raw_ml);
    out.cl_pairs_ = std::move(raw_cl);
  }
  return out;
}

// -------------------------------------------------------------- clique search

namespace {

class CliqueSearch {
 public:
  CliqueSearch(std::vector<std::vector<bool>> adjacent, std::size_t k)
      : adjacent_(std::move(adjacent)), k_(k) {}

  // Returns true once a clique of size k has been recorded.
  bool expand(std::vector<std::size_t>& clique, const std::vector<std::size_t>& candidates) {
    if (clique.size() > best_.size()) {
      best_ = clique;
      if (best_.size() == k_) return true;
    }
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (clique.size() + (candidates.size() - i) <= best_.size()) return false;
      const std::size_t v = candidates[i];
      std::vector<std::size_t> next;
      for (std::size_t j = i + 1; j < candidates.size(); ++j) {
        if (adjacent_[v][candidates[j]]) next.push_back(candidates[j]);
      }
      clique.push_back(v);
      const bool done = expand(clique, next);
      clique.pop_back();
      if (done) return true;
    }
    return false;
  }

  const std::vector<std::size_t>& best() const { return best_; }

 private:
  std::vector<std::vector<bool>> adjacent_;
  std::size_t k_;
  std::vector<std::size_t> best_;
};

}  // namespace

std::vector<std::size_t> k_bounded_max_clique(std::size_t vertex_count,
                                              const std::vector<IndexPair>& edges, std::size_t k,
                                              const CliqueOptions& options) {
  if (k == 0) throw Error(ErrorKind::kKOutOfRange, "clique bound k must be >= 1");
  std::vector<std::vector<std::size_t>> neighbours(vertex_count);
  for (const auto& [a, b] : edges) {
    if (a >= vertex_count || b >= vertex_count) {
      throw Error(ErrorKind::kIndexOutOfRange, "edge endpoint outside the vertex range");
    }
    if (a == b) continue;
    neighbours[a].push_back(b);
    neighbours[b].push_back(a);
  }
  std::vector<std::size_t> order;
  for (std::size_t v = 0; v < vertex_count; ++v) {
    auto& list = neighbours[v];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    if (!list.empty()) order.push_back(v);
  }
  if (order.empty()) return {};
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return neighbours[a].size() > neighbours[b].size();
  });

  auto adjacent_to = [&](std::size_t a, std::size_t b) {
    return std::binary_search(neighbours[a].begin(), neighbours[a].end(), b);
  };

  std::vector<std::size_t> result;
  if (order.size() > options.greedy_above) {
    for (std::size_t v : order) {
      if (result.size() == k) break;
      if (std::all_of(result.begin(), result.end(), [&](std::size_t u) { return adjacent_to(u, v); })) {
        result.push_back(v);
      }
    }
  } else {
    // positions in `order` index the dense adjacency used by the search
    const std::size_t m = order.size();
    std::vector<std::vector<bool>> adjacent(m, std::vector<bool>(m, false));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) adjacent[i][j] = i != j && adjacent_to(order[i], order[j]);
    }
    CliqueSearch search(std::move(adjacent), k);
    std::vector<std::size_t> clique;
    std::vector<std::size_t> candidates(m);
    std::iota(candidates.begin(), candidates.end(), 0);
    search.expand(clique, candidates);
    for (std::size_t position : search.best()) result.push_back(order[position]);
  }
  std::sort(result.begin(), result.end());
  return result;
}

std::vector<std::size_t> k_bounded_max_clique(const VariantConstraintSet& vcs, std::size_t k,
                                              const CliqueOptions& options) {
  std::vector<IndexPair> edges;
  const auto& neighbours = vcs.cannot_link_neighbours();
  for (std::size_t a = 0; a < neighbours.size(); ++a) {
    for (std::size_t b : neighbours[a]) {
      if (a < b) edges.emplace_back(a, b);
    }
  }
  return k_bounded_max_clique(vcs.variant_count(), edges, k, options);
}

std::vector<std::string> k_bounded_max_clique(const ExtendedConstraintSet& ecs, std::size_t k,
                                              const CliqueOptions& options) {
  const std::vector<std::string> ids = ecs.constrained_ids();
  auto index = [&](const std::string& id) {
    return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };
  std::vector<IndexPair> edges;
  for (const auto& [a, b] : ecs.cl_plus()) edges.emplace_back(index(a), index(b));
  std::vector<std::string> out;
  for (std::size_t v : k_bounded_max_clique(ids.size(), edges, k, options)) out.push_back(ids[v]);
  return out;
}

// -------------------------------------------------------------- generation

std::size_t constraint_budget(double fraction, std::size_t support) {
  return static_cast<std::size_t>(std::floor(fraction * static_cast<double>(support) + 0.5 + 1e-9));
}

namespace {

std::uint64_t pairs_of(std::uint64_t n) { return n * (n - (n > 0 ? 1 : 0)) / 2; }

}  // namespace

ConstraintSet generate_constraints(const GroupedEventLog& g, const ClusteringSolution& truth,
                                   double fraction, std::uint64_t seed, PairSampling sampling) {
  if (!(fraction > 0.0)) throw Error(ErrorKind::kInvalidInput, "constraint fraction must be > 0");
  if (truth.size() != g.support()) {
    throw Error(ErrorKind::kDomainMismatch, "ground truth does not match the log's variants");
  }
  if (truth.k() < 2) {
    throw Error(ErrorKind::kInfeasibleSampling, "a single-cluster ground truth admits no cannot-links");
  }
  const std::size_t budget = constraint_budget(fraction, g.support());
  const std::size_t ml_target = (budget + 1) / 2;
  const std::size_t cl_target = budget / 2;

  const std::vector<std::size_t> trace_cluster = truth.trace_assignment(g);
  const std::size_t trace_count = trace_cluster.size();
  std::vector<std::vector<std::size_t>> cluster_traces(truth.k());
  for (std::size_t t = 0; t < trace_count; ++t) cluster_traces[trace_cluster[t]].push_back(t);

  std::uint64_t ml_available = 0;
  std::uint64_t same_cluster_pairs = 0;
  std::vector<std::size_t> ml_eligible;
  for (const auto& traces : cluster_traces) {
    std::map<std::size_t, std::uint64_t> per_variant;
    for (std::size_t t : traces) ++per_variant[g.variant_of_trace(t)];
    std::uint64_t same_variant = 0;
    for (const auto& [v, m] : per_variant) same_variant += pairs_of(m);
    same_cluster_pairs += pairs_of(traces.size());
    ml_available += pairs_of(traces.size()) - same_variant;
    if (per_variant.size() >= 2) ml_eligible.insert(ml_eligible.end(), traces.begin(), traces.end());
  }
  std::sort(ml_eligible.begin(), ml_eligible.end());
  const std::uint64_t cl_available = pairs_of(trace_count) - same_cluster_pairs;
  if (ml_target > ml_available || cl_target > cl_available) {
    throw Error(ErrorKind::kInfeasibleSampling,
                fmt::format("{} must-links / {} cannot-links requested, {} / {} distinct pairs exist",
                            ml_target, cl_target, ml_available, cl_available));
  }

  const auto& traces = g.source().traces();
  ConstraintSet cs;
  if (sampling == PairSampling::kTraces) {
    Rng ml_rng(derive_seed(seed, 1));
    while (cs.must_links.size() < ml_target) {
      const std::size_t x = ml_eligible[uniform_index(ml_rng, ml_eligible.size())];
      const auto& peers = cluster_traces[trace_cluster[x]];
      const std::size_t y = peers[uniform_index(ml_rng, peers.size())];
      if (g.variant_of_trace(x) == g.variant_of_trace(y)) continue;
      cs.add_must_link(traces[x].trace_id, traces[y].trace_id);
    }
    Rng cl_rng(derive_seed(seed, 2));
    while (cs.cannot_links.size() < cl_target) {
      const std::size_t x = uniform_index(cl_rng, trace_count);
      const std::size_t y = uniform_index(cl_rng, trace_count);
      if (trace_cluster[x] == trace_cluster[y]) continue;
      cs.add_cannot_link(traces[x].trace_id, traces[y].trace_id);
    }
    return cs;
  }

  // distinct process instances first, then one of their traces
  std::vector<std::vector<std::size_t>> cluster_variants(truth.k());
  for (std::size_t v = 0; v < g.support(); ++v) cluster_variants[truth.cluster_of(v)].push_back(v);
  std::vector<std::size_t> ml_variants;
  for (const auto& members : cluster_variants) {
    if (members.size() >= 2) ml_variants.insert(ml_variants.end(), members.begin(), members.end());
  }
  std::sort(ml_variants.begin(), ml_variants.end());
  auto member = [&](Rng& rng, std::size_t v) -> const std::string& {
    const auto& ts = g.variant(v).member_traces;
    return traces[ts[uniform_index(rng, ts.size())]].trace_id;
  };
  Rng ml_rng(derive_seed(seed, 1));
  while (cs.must_links.size() < ml_target) {
    const std::size_t x = ml_variants[uniform_index(ml_rng, ml_variants.size())];
    const auto& peers = cluster_variants[truth.cluster_of(x)];
    const std::size_t y = peers[uniform_index(ml_rng, peers.size())];
    if (x == y) continue;
    const std::string& a = member(ml_rng, x);
    cs.add_must_link(a, member(ml_rng, y));
  }
  Rng cl_rng(derive_seed(seed, 2));
  while (cs.cannot_links.size() < cl_target) {
    const std::size_t x = uniform_index(cl_rng, g.support());
    const std::size_t y = uniform_index(cl_rng, g.support());
    if (truth.cluster_of(x) == truth.cluster_of(y)) continue;
    const std::string& a = member(cl_rng, x);
    cs.add_cannot_link(a, member(cl_rng, y));
  }
  return cs;
}

// ---------------------------------------------------------------------- files

ConstraintSet parse_constraints(std::string_view text) {
  ConstraintSet cs;
  std::size_t line_number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> fields;
    std::size_t field_start = 0;
    while (true) {
      const std::size_t tab = line.find('\t', field_start);
      fields.emplace_back(line.substr(field_start, tab - field_start));
      if (tab == std::string_view::npos) break;
      field_start = tab + 1;
    }
    if (fields.size() != 3 || fields[1].empty() || fields[2].empty() ||
        (fields[0] != "ML" && fields[0] != "CL")) {
      throw Error(ErrorKind::kInvalidInput, fmt::format("constraint line {} is malformed", line_number));
    }
    if (fields[0] == "ML") {
      cs.add_must_link(fields[1], fields[2]);
    } else {
      cs.add_cannot_link(fields[1], fields[2]);
    }
  }
  return cs;
}

ConstraintSet read_constraints(const std::filesystem::path& path) {
  return parse_constraints(csv::read_file(path));
}

std::string format_constraints(const ConstraintSet& cs) {
  std::string out;
  for (const auto& [a, b] : cs.must_links) out += "ML\t" + a + "\t" + b + "\n";
  for (const auto& [a, b] : cs.cannot_links) out += "CL\t" + a + "\t" + b + "\n";
  return out;
}

}  // namespace tracecluster
