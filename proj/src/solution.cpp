#include "tracecluster/solution.hpp"

#include <fmt/format.h>
#include <unordered_map>

#include "tracecluster/error.hpp"

namespace tracecluster {

ClusteringSolution::ClusteringSolution(std::size_t k, std::vector<std::size_t> assignment,
                                       std::string method)
    : k_(k), assignment_(std::move(assignment)), method_(std::move(method)) {
  std::vector<bool> used(k_, false);
  for (std::size_t v = 0; v < assignment_.size(); ++v) {
    if (assignment_[v] >= k_) {
      throw Error(ErrorKind::kIndexOutOfRange,
                  fmt::format("variant {} assigned to cluster {} of {}", v, assignment_[v], k_));
    }
    used[assignment_[v]] = true;
  }
  for (std::size_t c = 0; c < k_; ++c) {
    if (!used[c]) throw Error(ErrorKind::kEmptyCluster, fmt::format("cluster {} is empty", c));
  }
}

std::vector<std::vector<std::size_t>> ClusteringSolution::clusters() const {
  std::vector<std::vector<std::size_t>> out(k_);
  for (std::size_t v = 0; v < assignment_.size(); ++v) out[assignment_[v]].push_back(v);
  return out;
}

std::vector<std::size_t> ClusteringSolution::trace_assignment(const GroupedEventLog& g) const {
  if (g.support() != assignment_.size()) {
    throw Error(ErrorKind::kDomainMismatch, "solution and log have different variant counts");
  }
  std::vector<std::size_t> out(g.trace_count());
  for (std::size_t t = 0; t < out.size(); ++t) out[t] = assignment_[g.variant_of_trace(t)];
  return out;
}

ClusteringSolution canonical(const ClusteringSolution& s) {
  std::vector<std::size_t> relabel(s.k(), static_cast<std::size_t>(-1));
  std::size_t next = 0;
  std::vector<std::size_t> out(s.size());
  for (std::size_t v = 0; v < s.size(); ++v) {
    std::size_t& label = relabel[s.cluster_of(v)];
    if (label == static_cast<std::size_t>(-1)) label = next++;
    out[v] = label;
  }
  return ClusteringSolution(s.k(), std::move(out), s.method());
}

ClusteringSolution solution_from_trace_labels(const GroupedEventLog& g,
                                              const std::vector<std::string>& labels,
                                              std::string method) {
  if (labels.size() != g.trace_count()) {
    throw Error(ErrorKind::kDomainMismatch,
                fmt::format("{} labels for {} traces", labels.size(), g.trace_count()));
  }
  std::unordered_map<std::string, std::size_t> label_ids;
  std::vector<std::size_t> trace_labels(labels.size());
  for (std::size_t t = 0; t < labels.size(); ++t) {
    trace_labels[t] = label_ids.emplace(labels[t], label_ids.size()).first->second;
  }
  std::vector<std::size_t> assignment(g.support());
  for (std::size_t v = 0; v < g.support(); ++v) {
    std::vector<std::size_t> votes(label_ids.size(), 0);
    for (std::size_t t : g.variant(v).member_traces) ++votes[trace_labels[t]];
    std::size_t best = trace_labels[g.variant(v).member_traces.front()];
    for (std::size_t t : g.variant(v).member_traces) {
      if (votes[trace_labels[t]] > votes[best]) best = trace_labels[t];
    }
    assignment[v] = best;
  }
  // drop labels that lost every vote
  std::vector<std::size_t> compact(label_ids.size(), static_cast<std::size_t>(-1));
  std::size_t k = 0;
  for (std::size_t t = 0; t < trace_labels.size(); ++t) {
    const std::size_t l = assignment[g.variant_of_trace(t)];
    if (compact[l] == static_cast<std::size_t>(-1)) compact[l] = k++;
  }
  for (auto& a : assignment) a = compact[a];
  return ClusteringSolution(k, std::move(assignment), std::move(method));
}

}  // namespace tracecluster
