#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tracecluster/constraints.hpp"
#include "tracecluster/discovery.hpp"
#include "tracecluster/solution.hpp"

namespace tracecluster {

/// What n_i counts in the weighted average.
enum class SizeWeighting { kTraces, kVariants };

struct ClusterQuality {
  std::size_t cluster = 0;
  std::size_t traces = 0;
  std::size_t variants = 0;
  ConformanceResult conformance;
};

struct WeightedF1 {
  double value = 0.0;
  std::vector<ClusterQuality> clusters;
};

/// Discovers one model per cluster and averages the clusters' F1 weighted by
/// their size. Throws kEmptyCluster (through ClusteringSolution) and
/// kDomainMismatch when the solution does not cover `g`.
WeightedF1 weighted_f1(const ClusteringSolution& solution, const GroupedEventLog& g,
                       const DiscoveryConfig& discovery = {},
                       SizeWeighting weighting = SizeWeighting::kTraces, unsigned jobs = 1);

/// F1 of one model discovered on the whole log.
double unclustered_f1(const GroupedEventLog& g, const DiscoveryConfig& discovery = {});

/// ek / tc. Throws kDivisionByZero unless tc > 0.
double relative_improvement(double ek, double tc);
/// "improvement", "equal" or "deterioration".
std::string improvement_label(double ri);

/// Pair-counting Jaccard index n11 / (n11 + n10 + n01) over variants; 1 when
/// neither partition puts any two instances together. Throws kDomainMismatch.
double jaccard_index(const ClusteringSolution& a, const ClusteringSolution& b);
/// Same over traces: every variant counts with its multiplicity.
double jaccard_index(const ClusteringSolution& a, const ClusteringSolution& b, const GroupedEventLog& g);

struct ViolationRates {
  std::size_t ml_total = 0;
  std::size_t ml_violated = 0;
  std::size_t cl_total = 0;
  std::size_t cl_violated = 0;

  /// Percentages in [0, 100]; 0 for an empty set.
  double ml_percent() const noexcept {
    return ml_total == 0 ? 0.0 : 100.0 * static_cast<double>(ml_violated) / static_cast<double>(ml_total);
  }
  double cl_percent() const noexcept {
    return cl_total == 0 ? 0.0 : 100.0 * static_cast<double>(cl_violated) / static_cast<double>(cl_total);
  }
};

/// Violations of the constraints exactly as given (no transitive closure).
/// Throws kUnknownTraceId.
ViolationRates violation_percentages(const ClusteringSolution& solution, const GroupedEventLog& g,
                                     const ConstraintSet& cs);

struct NamedSolution {
  std::string technique;
  ClusteringSolution solution;
};
struct NamedConstraints {
  std::string name;
  ConstraintSet constraints;
};

struct InformativenessRow {
  std::string technique;
  std::string constraint_set;
  ViolationRates rates;
};

/// Violation rates of every solution against every constraint set, solutions
/// outermost.
std::vector<InformativenessRow> informativeness_report(const std::vector<NamedSolution>& solutions,
                                                       const GroupedEventLog& g,
                                                       const std::vector<NamedConstraints>& sets);
std::string format_informativeness_csv(const std::vector<InformativenessRow>& rows);

struct EvaluationOptions {
  DiscoveryConfig discovery;
  SizeWeighting weighting = SizeWeighting::kTraces;
  std::optional<double> baseline_f1;
  std::optional<ClusteringSolution> ground_truth;
  bool trace_level_jaccard = false;
  std::vector<NamedConstraints> constraint_sets;
  unsigned jobs = 1;
};

struct EvaluationReport {
  std::string method;
  std::size_t k = 0;
  WeightedF1 f1;
  std::optional<double> relative_improvement;
  std::optional<std::string> improvement_label;
  std::optional<double> jaccard;
  std::vector<std::pair<std::string, ViolationRates>> violations;
};

EvaluationReport evaluate(const ClusteringSolution& solution, const GroupedEventLog& g,
                          const EvaluationOptions& options = {});

std::string to_json(const EvaluationReport& report);
/// Flat CSV header / row: method,k,f1_wa,ri,jaccard, then ml/cl percentages
/// per constraint set.
std::string csv_header(const EvaluationReport& report);
std::string csv_row(const EvaluationReport& report);

}  // namespace tracecluster
