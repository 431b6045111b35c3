#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tracecluster/log_model.hpp"

namespace tracecluster {

struct WeightedSequence {
  std::span<const ActivityId> activities;
  std::uint64_t weight = 1;
};

/// A multiset of activity sequences, e.g. the variants of one cluster.
using SubLog = std::vector<WeightedSequence>;

/// Variants of `g` with their multiplicities.
SubLog make_sublog(const GroupedEventLog& g, std::span<const std::size_t> variants);

using ActivityPair = std::pair<ActivityId, ActivityId>;

/// Weighted directly-follows statistics of a sublog. Discovery and both
/// conformance metrics depend on a sublog only through these counts, which
/// makes them additive over unions of sublogs.
class FollowsCounts {
 public:
  FollowsCounts() = default;
  explicit FollowsCounts(const SubLog& sublog);

  void add(std::span<const ActivityId> sequence, std::uint64_t weight);
  void add(const FollowsCounts& other);

  bool empty() const noexcept { return sequences_ == 0; }
  std::uint64_t sequences() const noexcept { return sequences_; }
  const std::map<ActivityId, std::uint64_t>& activity_frequency() const noexcept { return frequency_; }
  const std::map<ActivityId, std::uint64_t>& start_counts() const noexcept { return starts_; }
  const std::map<ActivityId, std::uint64_t>& end_counts() const noexcept { return ends_; }
  const std::map<ActivityPair, std::uint64_t>& follows() const noexcept { return follows_; }

 private:
  std::uint64_t sequences_ = 0;
  std::map<ActivityId, std::uint64_t> frequency_;
  std::map<ActivityId, std::uint64_t> starts_;
  std::map<ActivityId, std::uint64_t> ends_;
  std::map<ActivityPair, std::uint64_t> follows_;
};

/// Directly-follows model with dependency-filtered arcs.
struct ProcessModel {
  std::set<ActivityId> activities;
  /// Retained arcs with their observed frequency.
  std::map<ActivityPair, std::uint64_t> arcs;
  std::set<ActivityId> start_activities;
  std::set<ActivityId> end_activities;
  double dependency_threshold = 0.9;

  bool permits(ActivityId from, ActivityId to) const { return arcs.contains({from, to}); }
};

struct DiscoveryConfig {
  double dependency_threshold = 0.9;
};

/// Dependency of a -> b: (|a>b| - |b>a|) / (|a>b| + |b>a| + 1) for a != b and
/// |a>a| / (|a>a| + 1) for a self-loop, clamped below at 0.
double dependency(const FollowsCounts& counts, ActivityId from, ActivityId to);

/// Keeps every observed arc whose dependency reaches the threshold, plus the
/// most frequent outgoing arc of each activity (lowest target id on ties).
/// Start and end sets are all observed first and last activities.
/// Throws kEmptyLog.
ProcessModel discover(const FollowsCounts& counts, const DiscoveryConfig& config = {});
ProcessModel discover(const SubLog& sublog, const DiscoveryConfig& config = {});

/// Weighted fraction of directly-follows steps (including the virtual start
/// and end steps) that the model permits.
double replay_recall(const ProcessModel& model, const FollowsCounts& counts);
double replay_recall(const ProcessModel& model, const SubLog& sublog);

/// Average over model activities observed in the sublog, weighted by their
/// frequency, of |observed successors| / |permitted successors|. Activities
/// without permitted successors are left out; 1 when none remain.
double escaping_precision(const ProcessModel& model, const FollowsCounts& counts);
double escaping_precision(const ProcessModel& model, const SubLog& sublog);

struct ConformanceResult {
  double recall = 0.0;
  double precision = 0.0;
  double f1 = 0.0;
};

/// Harmonic mean, 0 when both are 0.
double f1_score(double precision, double recall);

ConformanceResult conformance(const ProcessModel& model, const FollowsCounts& counts);
ConformanceResult f1(const ProcessModel& model, const SubLog& sublog);

/// Graphviz digraph with activity labels and arc frequencies.
std::string to_dot(const ProcessModel& model, const std::vector<std::string>& activity_names);
/// JSON object with activities, arcs, start/end sets and the threshold.
std::string to_json(const ProcessModel& model, const std::vector<std::string>& activity_names);

}  // namespace tracecluster
