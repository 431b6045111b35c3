#include "tracecluster/constrained_ahc.hpp"

#include <fmt/format.h>
#include <limits>

#include "tracecluster/error.hpp"

namespace tracecluster {

DistanceMatrix adjust_matrix(const DistanceMatrix& m, const VariantConstraintSet& vcs,
                             const AdjustOptions& options) {
  const std::size_t n = m.size();
  if (vcs.variant_count() != n) {
    throw Error(ErrorKind::kIndexOutOfRange,
                fmt::format("constraints over {} variants, matrix of size {}", vcs.variant_count(), n));
  }
  const double source_max = m.raw_max();
  const double count = static_cast<double>(options.scale_count ? options.scale_count : n);
  const double far = source_max * count / 2.0;

  DistanceMatrix out = m;
  out.set_kind(DistanceMatrix::Kind::kConstraintAdjusted);
  out.set_raw_max(source_max);
  for (const auto& [a, b] : vcs.must_link_pairs()) {
    if (b >= n) throw Error(ErrorKind::kIndexOutOfRange, fmt::format("variant {} out of range", b));
    out.set(a, b, 0.0);
  }
  for (const auto& [a, b] : vcs.cannot_link_pairs()) {
    if (b >= n) throw Error(ErrorKind::kIndexOutOfRange, fmt::format("variant {} out of range", b));
    out.set(a, b, far);
  }
  return out;
}

WardResult ward_ahc(const DistanceMatrix& m, std::size_t k, std::string method) {
  const std::size_t n = m.size();
  if (k < 1 || k > n) throw Error(ErrorKind::kKOutOfRange, fmt::format("k = {} with {} variants", k, n));

  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = m(i, j) * m(i, j);
  }
  auto at = [&](std::size_t i, std::size_t j) -> double& { return d[i * n + j]; };

  std::vector<double> weight(n, 1.0);
  std::vector<bool> active(n, true);
  std::vector<std::vector<std::size_t>> members(n);
  for (std::size_t i = 0; i < n; ++i) members[i] = {i};

  // nearest active partner with a larger index, smallest index on ties
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> nearest(n, kNone);
  std::vector<double> nearest_distance(n, std::numeric_limits<double>::infinity());
  auto refresh = [&](std::size_t i) {
    nearest[i] = kNone;
    nearest_distance[i] = std::numeric_limits<double>::infinity();
    for (std::size_t j = i + 1; j < n; ++j) {
      if (active[j] && at(i, j) < nearest_distance[i]) {
        nearest[i] = j;
        nearest_distance[i] = at(i, j);
      }
    }
  };
  for (std::size_t i = 0; i < n; ++i) refresh(i);

  WardResult result;
  result.dendrogram.leaves = n;
  for (std::size_t step = 0; step + k < n; ++step) {
    std::size_t left = kNone;
    for (std::size_t i = 0; i < n; ++i) {
      if (active[i] && nearest[i] != kNone &&
          (left == kNone || nearest_distance[i] < nearest_distance[left])) {
        left = i;
      }
    }
    const std::size_t right = nearest[left];
    const double joined = at(left, right);
    result.dendrogram.merges.push_back({left, right, joined / 2.0});

    const double wl = weight[left], wr = weight[right];
    for (std::size_t x = 0; x < n; ++x) {
      if (!active[x] || x == left || x == right) continue;
      const double wx = weight[x];
      const double updated = ((wl + wx) * at(x, left) + (wr + wx) * at(x, right) - wx * joined) /
                             (wl + wr + wx);
      at(x, left) = updated;
      at(left, x) = updated;
    }
    active[right] = false;
    weight[left] += wr;
    members[left].insert(members[left].end(), members[right].begin(), members[right].end());
    members[right].clear();

    for (std::size_t x = 0; x < n; ++x) {
      if (!active[x]) continue;
      if (x == left || nearest[x] == left || nearest[x] == right) {
        refresh(x);
      } else if (x < left && (at(x, left) < nearest_distance[x] ||
                              (at(x, left) == nearest_distance[x] && left < nearest[x]))) {
        nearest[x] = left;
        nearest_distance[x] = at(x, left);
      }
    }
  }

  std::vector<std::size_t> assignment(n);
  std::size_t cluster = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!active[i]) continue;
    for (std::size_t v : members[i]) assignment[v] = cluster;
    ++cluster;
  }
  result.solution = ClusteringSolution(k, std::move(assignment), std::move(method));
  return result;
}

std::string technique_name(const SimilarityMethod& method, bool constrained) {
  return (constrained ? "Con" : "") + method.name();
}

WardResult constrained_cluster(const DistanceMatrix& raw, const VariantConstraintSet& vcs,
                               std::size_t k, const SimilarityMethod& method,
                               const AdjustOptions& adjust) {
  if (vcs.empty()) return ward_ahc(raw, k, technique_name(method, false));
  return ward_ahc(adjust_matrix(raw, vcs, adjust), k, technique_name(method, true));
}

WardResult constrained_cluster(const GroupedEventLog& g, const VariantConstraintSet& vcs,
                               std::size_t k, const ConstrainedClusterOptions& options) {
  const DistanceMatrix raw = distance_matrix(g, options.similarity, options.jobs);
  return constrained_cluster(raw, vcs, k, options.similarity, options.adjust);
}

}  // namespace tracecluster
