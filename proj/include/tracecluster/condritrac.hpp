#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tracecluster/constraints.hpp"
#include "tracecluster/discovery.hpp"
#include "tracecluster/solution.hpp"

namespace tracecluster {

struct CondritracConfig {
  std::size_t k = 2;
  /// Cluster value threshold: minimum F1 of the candidate cluster.
  double cvt = 0.5;
  /// Trace value threshold: minimum F1 of the traces being added.
  double tvt = 0.25;
  /// Put traces that fail every threshold into an extra surplus cluster
  /// instead of the best existing cluster.
  bool separate_unassignable = false;
  std::uint64_t seed = 0;
  DiscoveryConfig discovery;
  CliqueOptions clique;
  /// Workers used to score candidate clusters; results do not depend on it.
  unsigned jobs = 1;

  /// Throws kInvalidConfig.
  void validate() const;
};

struct CandidateEvaluation {
  std::size_t cluster = 0;
  /// The cluster holds a cannot-link partner of the unit.
  bool skipped = false;
  double tmv = 0.0;
  double cmv = 0.0;
  bool passes_thresholds = false;
};

enum class SeedOrigin { kNone, kClique, kRandom };

/// What happened to one variant. Variants of a must-link unit share the
/// record of the unit's representative (the variant that was processed);
/// only the representative carries candidate evaluations.
struct AssignmentRecord {
  std::size_t variant = 0;
  std::size_t representative = 0;
  std::vector<std::size_t> unit;
  int phase = 0;
  SeedOrigin seed = SeedOrigin::kNone;
  std::vector<CandidateEvaluation> phase2;
  /// Chosen cluster in phase 2, -1 when unassignable; unset for variants
  /// that were not a phase-2 representative.
  std::optional<long long> phase2_result;
  std::vector<CandidateEvaluation> phase3;
  /// Phase 3 found no cluster free of cannot-link partners and opened a new one.
  bool overflow = false;
  std::size_t cluster = 0;
};

struct AssignmentTrace {
  std::vector<std::size_t> clique;
  std::vector<AssignmentRecord> records;
};

/// Intermediate clustering shared by the three phases.
struct CondritracState {
  std::vector<std::vector<std::size_t>> clusters;
  std::vector<FollowsCounts> cluster_counts;
  /// Variants not yet placed, ascending.
  std::vector<std::size_t> remaining;
  /// Representatives of the units that failed the thresholds, in order.
  std::vector<std::size_t> unassignable;
  AssignmentTrace trace;
};

/// Seeds one cluster per member of a k-bounded maximal cannot-link clique
/// (with its must-link unit) and fills up to k clusters with the units of
/// randomly drawn remaining variants. Throws kInfeasibleK when the log has
/// fewer than k must-link units.
CondritracState phase1_initialize(const GroupedEventLog& g, const VariantConstraintSet& vcs,
                                  const CondritracConfig& config);

/// Assigns remaining units in order of decreasing multiplicity (ties by
/// variant index) to the cluster with the best cluster value, subject to the
/// thresholds and cannot-links.
void phase2_assign(const GroupedEventLog& g, const VariantConstraintSet& vcs,
                   const CondritracConfig& config, CondritracState& state);

/// Places the unassignable units, either into a surplus cluster or into the
/// best compatible cluster scored against the models fixed after phase 2.
ClusteringSolution phase3_resolve(const GroupedEventLog& g, const VariantConstraintSet& vcs,
                                  const CondritracConfig& config, CondritracState& state);

struct CondritracResult {
  ClusteringSolution solution;
  AssignmentTrace trace;
};

CondritracResult condritrac(const GroupedEventLog& g, const VariantConstraintSet& vcs,
                            const CondritracConfig& config);

/// Lifts `cs` (extended) onto the variants of `g` and runs all phases.
CondritracResult condritrac(const GroupedEventLog& g, const ConstraintSet& cs,
                            const CondritracConfig& config);

std::string to_json(const AssignmentTrace& trace, const CondritracConfig& config);

}  // namespace tracecluster
