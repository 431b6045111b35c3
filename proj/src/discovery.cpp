#include "tracecluster/discovery.hpp"

#include <algorithm>
#include <fmt/format.h>
#include "json.hpp"

#include "tracecluster/error.hpp"

namespace tracecluster {

SubLog make_sublog(const GroupedEventLog& g, std::span<const std::size_t> variants) {
  SubLog out;
  out.reserve(variants.size());
  for (std::size_t v : variants) {
    const Variant& variant = g.variant(v);
    out.push_back({variant.activities, variant.multiplicity()});
  }
  return out;
}

// ----------------------------------------------------------------- counting

FollowsCounts::FollowsCounts(const SubLog& sublog) {
  for (const auto& s : sublog) add(s.activities, s.weight);
}

void FollowsCounts::add(std::span<const ActivityId> sequence, std::uint64_t weight) {
  if (sequence.empty() || weight == 0) return;
  sequences_ += weight;
  starts_[sequence.front()] += weight;
  ends_[sequence.back()] += weight;
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    frequency_[sequence[i]] += weight;
    if (i + 1 < sequence.size()) follows_[{sequence[i], sequence[i + 1]}] += weight;
  }
}

void FollowsCounts::add(const FollowsCounts& other) {
  sequences_ += other.sequences_;
  for (const auto& [a, n] : other.frequency_) frequency_[a] += n;
  for (const auto& [a, n] : other.starts_) starts_[a] += n;
  for (const auto& [a, n] : other.ends_) ends_[a] += n;
  for (const auto& [p, n] : other.follows_) follows_[p] += n;
}

// ---------------------------------------------------------------- discovery

namespace {

std::uint64_t count_of(const std::map<ActivityPair, std::uint64_t>& m, ActivityPair p) {
  const auto it = m.find(p);
  return it == m.end() ? 0 : it->second;
}

template <typename Map>
auto outgoing(const Map& m, ActivityId from) {
  return std::pair{m.lower_bound({from, 0}), m.lower_bound({from + 1, 0})};
}

}  // namespace

double dependency(const FollowsCounts& counts, ActivityId from, ActivityId to) {
  const double forward = static_cast<double>(count_of(counts.follows(), {from, to}));
  if (from == to) return forward / (forward + 1.0);
  const double backward = static_cast<double>(count_of(counts.follows(), {to, from}));
  return std::max(0.0, (forward - backward) / (forward + backward + 1.0));
}

ProcessModel discover(const FollowsCounts& counts, const DiscoveryConfig& config) {
  if (counts.empty()) throw Error(ErrorKind::kEmptyLog, "cannot discover a model from an empty sublog");
  ProcessModel model;
  model.dependency_threshold = config.dependency_threshold;
  for (const auto& [a, n] : counts.activity_frequency()) model.activities.insert(a);
  for (const auto& [a, n] : counts.start_counts()) model.start_activities.insert(a);
  for (const auto& [a, n] : counts.end_counts()) model.end_activities.insert(a);

  for (const auto& [arc, n] : counts.follows()) {
    if (dependency(counts, arc.first, arc.second) >= config.dependency_threshold) model.arcs.emplace(arc, n);
  }
  // keep every activity connected to its most frequent successor
  const auto& follows = counts.follows();
  for (auto it = follows.begin(); it != follows.end();) {
    const ActivityId from = it->first.first;
    auto best = it;
    for (; it != follows.end() && it->first.first == from; ++it) {
      if (it->second > best->second) best = it;
    }
    model.arcs.emplace(best->first, best->second);
  }
  return model;
}

ProcessModel discover(const SubLog& sublog, const DiscoveryConfig& config) {
  return discover(FollowsCounts(sublog), config);
}

// -------------------------------------------------------------- conformance

double replay_recall(const ProcessModel& model, const FollowsCounts& counts) {
  std::uint64_t permitted = 0;
  std::uint64_t total = 0;
  for (const auto& [a, n] : counts.start_counts()) {
    total += n;
    if (model.start_activities.contains(a)) permitted += n;
  }
  for (const auto& [a, n] : counts.end_counts()) {
    total += n;
    if (model.end_activities.contains(a)) permitted += n;
  }
  for (const auto& [arc, n] : counts.follows()) {
    total += n;
    if (model.arcs.contains(arc)) permitted += n;
  }
  if (total == 0) return 0.0;
  return static_cast<double>(permitted) / static_cast<double>(total);
}

double replay_recall(const ProcessModel& model, const SubLog& sublog) {
  return replay_recall(model, FollowsCounts(sublog));
}

double escaping_precision(const ProcessModel& model, const FollowsCounts& counts) {
  double weighted = 0.0;
  double weight_sum = 0.0;
  for (const auto& [a, frequency] : counts.activity_frequency()) {
    if (!model.activities.contains(a)) continue;
    const auto [first, last] = outgoing(model.arcs, a);
    std::size_t permitted = 0;
    std::size_t used = 0;
    for (auto it = first; it != last; ++it) {
      ++permitted;
      if (count_of(counts.follows(), it->first) > 0) ++used;
    }
    if (permitted == 0) continue;
    const double w = static_cast<double>(frequency);
    weighted += w * (static_cast<double>(used) / static_cast<double>(permitted));
    weight_sum += w;
  }
  if (weight_sum == 0.0) return 1.0;
  return std::clamp(weighted / weight_sum, 0.0, 1.0);
}

double escaping_precision(const ProcessModel& model, const SubLog& sublog) {
  return escaping_precision(model, FollowsCounts(sublog));
}

double f1_score(double precision, double recall) {
  if (precision + recall <= 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

ConformanceResult conformance(const ProcessModel& model, const FollowsCounts& counts) {
  ConformanceResult r;
  r.recall = replay_recall(model, counts);
  r.precision = escaping_precision(model, counts);
  r.f1 = f1_score(r.precision, r.recall);
  return r;
}

ConformanceResult f1(const ProcessModel& model, const SubLog& sublog) {
  return conformance(model, FollowsCounts(sublog));
}

// ------------------------------------------------------------------ export

namespace {

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out + "\"";
}

}  // namespace

std::string to_dot(const ProcessModel& model, const std::vector<std::string>& activity_names) {
  std::string out = "digraph process {\n  rankdir=LR;\n";
  out += "  \"__start\" [shape=circle,label=\"\"];\n  \"__end\" [shape=doublecircle,label=\"\"];\n";
  for (ActivityId a : model.activities) {
    out += fmt::format("  a{} [shape=box,label={}];\n", a, dot_quote(activity_names.at(a)));
  }
  for (ActivityId a : model.start_activities) out += fmt::format("  \"__start\" -> a{};\n", a);
  for (const auto& [arc, n] : model.arcs) {
    out += fmt::format("  a{} -> a{} [label=\"{}\"];\n", arc.first, arc.second, n);
  }
  for (ActivityId a : model.end_activities) out += fmt::format("  a{} -> \"__end\";\n", a);
  return out + "}\n";
}

std::string to_json(const ProcessModel& model, const std::vector<std::string>& activity_names) {
  nlohmann::json j;
  j["dependency_threshold"] = model.dependency_threshold;
  j["activities"] = nlohmann::json::array();
  for (ActivityId a : model.activities) j["activities"].push_back(activity_names.at(a));
  j["start"] = nlohmann::json::array();
  for (ActivityId a : model.start_activities) j["start"].push_back(activity_names.at(a));
  j["end"] = nlohmann::json::array();
  for (ActivityId a : model.end_activities) j["end"].push_back(activity_names.at(a));
  j["arcs"] = nlohmann::json::array();
  for (const auto& [arc, n] : model.arcs) {
    j["arcs"].push_back({{"from", activity_names.at(arc.first)},
                         {"to", activity_names.at(arc.second)},
                         {"frequency", n}});
  }
  return j.dump(2);
}

}  // namespace tracecluster
