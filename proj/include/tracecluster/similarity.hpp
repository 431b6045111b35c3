#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tracecluster/log_model.hpp"

namespace tracecluster {

/// Unit-cost Levenshtein distance over activity sequences.
std::size_t ged(std::span<const ActivityId> a, std::span<const ActivityId> b);

/// Dense per-variant counts over a feature space shared by the whole log.
struct FeatureSpace {
  /// Human-readable feature names, e.g. "a|b|c" for a 3-gram or "{a,b}" for
  /// a repeat alphabet.
  std::vector<std::string> names;
  /// vectors[v][f] = count of feature f in variant v.
  std::vector<std::vector<double>> vectors;

  std::size_t dimension() const noexcept { return names.size(); }
};

/// Contiguous k-grams of every variant, features sorted by activity id tuple.
FeatureSpace kgram_features(const GroupedEventLog& g, std::size_t k);

/// A repeated substring of the concatenated variants, with every start
/// position (variant, offset).
struct Repeat {
  std::vector<ActivityId> sequence;
  std::vector<std::pair<std::size_t, std::size_t>> occurrences;
};

/// Maximal repeats of the variant sequences joined with unique separators:
/// substrings occurring at least twice that are neither always preceded by
/// the same symbol nor always followed by the same symbol (sequence
/// boundaries count as unique symbols). Computed with a suffix array and LCP
/// intervals; sorted by sequence.
std::vector<Repeat> maximal_repeats(const std::vector<std::vector<ActivityId>>& sequences);

/// Maximal Repeat Alphabet features: each distinct alphabet (set of
/// activities) of a maximal repeat is a feature; its count in a variant is
/// the number of positions where some repeat with that alphabet starts.
FeatureSpace mra_features(const GroupedEventLog& g);

enum class VectorMetric { kEuclidean, kManhattan };

/// Throws kDimensionMismatch.
double vector_distance(std::span<const double> u, std::span<const double> v, VectorMetric metric);

/// Symmetric n x n matrix with zero diagonal, stored dense row-major.
class DistanceMatrix {
 public:
  enum class Kind { kRaw, kConstraintAdjusted };

  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n, Kind kind = Kind::kRaw) : n_(n), kind_(kind), data_(n * n, 0.0) {}

  std::size_t size() const noexcept { return n_; }
  Kind kind() const noexcept { return kind_; }
  void set_kind(Kind kind) noexcept { kind_ = kind; }

  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  /// Writes both (i,j) and (j,i).
  void set(std::size_t i, std::size_t j, double value) {
    data_[i * n_ + j] = value;
    data_[j * n_ + i] = value;
  }
  double max() const;
  bool operator==(const DistanceMatrix&) const = default;

  /// Largest entry of the raw matrix an adjusted matrix was derived from;
  /// equals max() for raw matrices.
  double raw_max() const { return kind_ == Kind::kRaw ? max() : raw_max_; }
  void set_raw_max(double value) noexcept { raw_max_ = value; }

 private:
  std::size_t n_ = 0;
  Kind kind_ = Kind::kRaw;
  std::vector<double> data_;
  double raw_max_ = 0.0;
};

struct SimilarityMethod {
  enum class Kind { kGed, kKGram, kMra };
  Kind kind = Kind::kGed;
  std::size_t gram = 3;
  VectorMetric metric = VectorMetric::kEuclidean;

  static SimilarityMethod ged() { return {Kind::kGed, 0, VectorMetric::kEuclidean}; }
  static SimilarityMethod kgram(std::size_t k, VectorMetric m = VectorMetric::kEuclidean) {
    return {Kind::kKGram, k, m};
  }
  static SimilarityMethod mra(VectorMetric m = VectorMetric::kEuclidean) { return {Kind::kMra, 0, m}; }

  /// "GED", "3-gram", "MRA".
  std::string name() const;
};

/// Pairwise variant distances; upper triangle computed on `jobs` threads and
/// mirrored. Requires supp(G) >= 2.
DistanceMatrix distance_matrix(const GroupedEventLog& g, const SimilarityMethod& method,
                               unsigned jobs = 1);

/// Upper triangle as CSV: header "i,0,1,...", row i lists d(i,j) for j > i.
std::string format_matrix_csv(const DistanceMatrix& m);

}  // namespace tracecluster
