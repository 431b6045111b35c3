#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tracecluster/constraints.hpp"
#include "tracecluster/similarity.hpp"
#include "tracecluster/solution.hpp"

namespace tracecluster {

/// One agglomeration step. Clusters are named by their smallest member
/// index, so `left` < `right` and the merged cluster keeps the name `left`.
struct Merge {
  std::size_t left;
  std::size_t right;
  /// Increase of the within-cluster sum of squares caused by the merge.
  double height;
  bool operator==(const Merge&) const = default;
};

struct Dendrogram {
  std::size_t leaves = 0;
  std::vector<Merge> merges;
};

struct AdjustOptions {
  /// Cannot-link distance is max(m) * count / 2. When zero, count is the
  /// matrix size (supp(G)); set it to |L| to scale by traces instead.
  std::size_t scale_count = 0;
};

/// Must-link pairs become 0, cannot-link pairs max(m) * n / 2; every other
/// cell is copied unchanged. Throws kIndexOutOfRange.
DistanceMatrix adjust_matrix(const DistanceMatrix& m, const VariantConstraintSet& vcs,
                             const AdjustOptions& options = {});

struct WardResult {
  ClusteringSolution solution;
  Dendrogram dendrogram;
};

/// Greedy agglomerative clustering with Ward linkage: distances are squared,
/// updated with the Lance-Williams recurrence, and the pair with the smallest
/// dissimilarity is merged, ties going to the lexicographically smallest
/// (left, right). Stops when k clusters remain; clusters are numbered by
/// their smallest variant. Throws kKOutOfRange unless 1 <= k <= n.
WardResult ward_ahc(const DistanceMatrix& m, std::size_t k, std::string method = "AHC");

struct ConstrainedClusterOptions {
  SimilarityMethod similarity = SimilarityMethod::ged();
  AdjustOptions adjust;
  unsigned jobs = 1;
};

/// "ConGED", "Con3-gram", "ConMRA" when constrained, else the bare names.
std::string technique_name(const SimilarityMethod& method, bool constrained);

/// distance_matrix -> adjust_matrix -> ward_ahc. With an empty constraint set
/// the adjustment is skipped and the solution carries the unconstrained tag.
WardResult constrained_cluster(const GroupedEventLog& g, const VariantConstraintSet& vcs,
                               std::size_t k, const ConstrainedClusterOptions& options = {});

/// Same pipeline on a precomputed raw matrix.
WardResult constrained_cluster(const DistanceMatrix& raw, const VariantConstraintSet& vcs,
                               std::size_t k, const SimilarityMethod& method,
                               const AdjustOptions& adjust = {});

}  // namespace tracecluster
