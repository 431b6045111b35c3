#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tracecluster/condritrac.hpp"
#include "tracecluster/config.hpp"
#include "tracecluster/constrained_ahc.hpp"
#include "tracecluster/evaluation.hpp"

namespace tracecluster {

// ------------------------------------------------------------ synthetic logs

struct ClusterSkeleton {
  std::vector<std::string> backbone;
  /// Labels a branching step may take instead of its backbone activity.
  std::vector<std::string> alternatives;
  double branch_probability = 0.15;
  double skip_probability = 0.1;
  /// Probability of repeating the previous two steps after a step.
  double loop_probability = 0.05;
};

struct SyntheticLogSpec {
  std::size_t k_true = 5;
  std::size_t traces_per_cluster = 100;
  /// Explicit skeletons; when empty, k_true skeletons are drawn from the
  /// parameters below.
  std::vector<ClusterSkeleton> clusters;

  /// Activities every drawn backbone may use.
  std::size_t shared_activities = 8;
  /// Activities private to each drawn cluster.
  std::size_t private_activities = 3;
  std::size_t backbone_length = 8;
  /// Chance that a backbone position uses a shared activity.
  double shared_fraction = 0.6;
  std::size_t alternatives_per_cluster = 3;
  double branch_probability = 0.15;
  double skip_probability = 0.1;
  double loop_probability = 0.05;

  /// Per-event chance of deleting the event and, independently, of inserting
  /// a random activity after it.
  double noise = 0.02;
  std::uint64_t seed = 0;

  /// Throws kInvalidSpec.
  void validate() const;
  /// Reads `synth.*` keys; missing keys keep their defaults.
  static SyntheticLogSpec from_config(const KeyValueConfig& config);
};

struct SyntheticLog {
  EventLog log;
  /// Generating cluster of every trace, in log order.
  std::vector<std::size_t> trace_cluster;
};

/// Samples traces_per_cluster traces from each skeleton, shuffles them and
/// names them case_00000, ... A sequence already produced by another cluster
/// is redrawn, so every variant belongs to exactly one planted cluster.
/// Deterministic in spec.seed. Throws kInvalidSpec.
SyntheticLog generate_log(const SyntheticLogSpec& spec);

/// Variant-level ground truth for a grouped synthetic log.
ClusteringSolution ground_truth(const GroupedEventLog& g, const std::vector<std::size_t>& trace_cluster);

// -------------------------------------------------------------- techniques

struct Technique {
  enum class Family { kWard, kCondritrac };
  Family family = Family::kWard;
  SimilarityMethod similarity;

  /// "GED", "kgram:3" / "3-gram", "MRA", "condritrac" / "ConDriTraC"
  /// (case-insensitive). Throws kInvalidConfig.
  static Technique parse(const std::string& text);
  /// Display name, constrained or not: "GED"/"ConGED", ..., "ConDriTraC".
  std::string name(bool constrained) const;
};

// ------------------------------------------------------------------- sweeps

struct SweepConfig {
  std::vector<Technique> techniques;
  std::vector<double> percentages{1.0, 5.0, 10.0};
  std::vector<std::size_t> ks{5};
  std::vector<std::uint64_t> seeds{1};
  double cvt = 0.5;
  double tvt = 0.25;
  bool separate_unassignable = false;
  DiscoveryConfig discovery;
  AdjustOptions adjust;
  bool trace_level_jaccard = false;
  /// Adds a wall_ms metric per cell; makes the table timing-dependent.
  bool record_time = false;
  unsigned jobs = 1;

  /// Keys: techniques, percentages, ks, seeds, cvt, tvt, separate_unassignable,
  /// dependency_threshold, scale_count, trace_level_jaccard, record_time, jobs.
  /// `synth.*` keys are allowed and ignored here.
  static SweepConfig from_config(const KeyValueConfig& config);
};

struct ResultRow {
  std::string technique;
  double percentage = 0.0;
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::string metric;
  double value = 0.0;
};

struct CellFailure {
  std::string technique;
  double percentage = 0.0;
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::string message;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
  std::vector<CellFailure> failures;
};

/// Runs every (technique, k, seed) unconstrained once (percentage 0) and
/// with the constraints generated from the ground truth for each percentage.
/// Rows per cell: f1_wa, jaccard, and for constrained cells the violation
/// percentages of their own set (ml_violated_pct, cl_violated_pct); every
/// cell also reports violations against each generated set as
/// ml_violated_pct@P / cl_violated_pct@P. Failed cells are recorded and the
/// sweep continues. Row order is the sweep order, whatever `jobs` is.
ExperimentResult run_experiment(const GroupedEventLog& g, const ClusteringSolution& truth,
                                const SweepConfig& config);

/// Long format: technique,percentage,k,seed,metric,value
std::string format_results_csv(const ExperimentResult& result);
/// Medians over seeds per (technique, percentage, k, metric) plus failures.
std::string summary_json(const ExperimentResult& result, const SweepConfig& config);

double median(std::vector<double> values);

}  // namespace tracecluster
