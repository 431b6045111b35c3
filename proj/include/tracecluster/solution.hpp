#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tracecluster/log_model.hpp"

namespace tracecluster {

/// A partition of the variants of a grouped log into k non-empty clusters.
/// Traces inherit the cluster of their variant.
class ClusteringSolution {
 public:
  ClusteringSolution() = default;

  /// Throws kEmptyCluster if a label in [0, k) is unused and kIndexOutOfRange
  /// if a label is >= k.
  ClusteringSolution(std::size_t k, std::vector<std::size_t> assignment, std::string method);

  std::size_t k() const noexcept { return k_; }
  std::size_t size() const noexcept { return assignment_.size(); }
  const std::vector<std::size_t>& assignment() const noexcept { return assignment_; }
  std::size_t cluster_of(std::size_t variant) const { return assignment_.at(variant); }
  const std::string& method() const noexcept { return method_; }

  /// Members of every cluster, each ascending.
  std::vector<std::vector<std::size_t>> clusters() const;

  /// Per-trace labels of the source log of `g`.
  std::vector<std::size_t> trace_assignment(const GroupedEventLog& g) const;

 private:
  std::size_t k_ = 0;
  std::vector<std::size_t> assignment_;
  std::string method_;
};

/// Relabels clusters in order of their smallest member so that equal
/// partitions compare equal.
ClusteringSolution canonical(const ClusteringSolution& s);

/// Builds a variant-level solution from per-trace labels (in log order).
/// When the traces of one variant carry different labels the variant takes
/// the most frequent one, ties going to the label seen first. Label strings
/// are numbered in order of first appearance.
ClusteringSolution solution_from_trace_labels(const GroupedEventLog& g,
                                              const std::vector<std::string>& labels,
                                              std::string method);

}  // namespace tracecluster
