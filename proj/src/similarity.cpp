#include "tracecluster/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <map>
#include <numeric>
#include <set>

#include "tracecluster/error.hpp"
#include "tracecluster/parallel.hpp"

namespace tracecluster {

std::size_t ged(std::span<const ActivityId> a, std::span<const ActivityId> b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diagonal = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t above = row[j];
      row[j] = std::min({above + 1, row[j - 1] + 1, diagonal + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diagonal = above;
    }
  }
  return row[b.size()];
}

// -------------------------------------------------------------------- k-grams

namespace {

std::string joined_name(const GroupedEventLog& g, std::span<const ActivityId> ids, const char* open,
                        const char* separator, const char* close) {
  std::string out = open;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += separator;
    out += g.activity_names()[ids[i]];
  }
  return out + close;
}

}  // namespace

FeatureSpace kgram_features(const GroupedEventLog& g, std::size_t k) {
  if (k == 0) throw Error(ErrorKind::kInvalidInput, "k-gram length must be >= 1");
  std::map<std::vector<ActivityId>, std::size_t> index;
  for (const Variant& v : g.variants()) {
    for (std::size_t p = 0; p + k <= v.activities.size(); ++p) {
      index.emplace(std::vector<ActivityId>(v.activities.begin() + p, v.activities.begin() + p + k), 0);
    }
  }
  FeatureSpace space;
  for (auto& [gram, position] : index) {
    position = space.names.size();
    space.names.push_back(joined_name(g, gram, "", "|", ""));
  }
  space.vectors.assign(g.support(), std::vector<double>(space.dimension(), 0.0));
  for (std::size_t vi = 0; vi < g.support(); ++vi) {
    const auto& acts = g.variant(vi).activities;
    for (std::size_t p = 0; p + k <= acts.size(); ++p) {
      const std::vector<ActivityId> gram(acts.begin() + p, acts.begin() + p + k);
      space.vectors[vi][index.at(gram)] += 1.0;
    }
  }
  return space;
}

// ----------------------------------------------------------- maximal repeats

namespace {

/// Prefix-doubling suffix array over integer symbols.
std::vector<std::size_t> suffix_array(const std::vector<std::size_t>& s) {
  const std::size_t n = s.size();
  std::vector<std::size_t> sa(n), rank(s.begin(), s.end()), next(n);
  std::iota(sa.begin(), sa.end(), 0);
  for (std::size_t step = 1;; step *= 2) {
    auto key = [&](std::size_t i) {
      return std::pair<std::size_t, std::size_t>{rank[i], i + step < n ? rank[i + step] + 1 : 0};
    };
    std::sort(sa.begin(), sa.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
    next[sa[0]] = 0;
    for (std::size_t i = 1; i < n; ++i) next[sa[i]] = next[sa[i - 1]] + (key(sa[i - 1]) < key(sa[i]) ? 1 : 0);
    rank.swap(next);
    if (rank[sa[n - 1]] == n - 1) break;
  }
  return sa;
}

/// Kasai: lcp[i] = LCP(suffix sa[i-1], suffix sa[i]); lcp[0] = 0.
std::vector<std::size_t> lcp_array(const std::vector<std::size_t>& s, const std::vector<std::size_t>& sa) {
  const std::size_t n = s.size();
  std::vector<std::size_t> rank(n), lcp(n, 0);
  for (std::size_t i = 0; i < n; ++i) rank[sa[i]] = i;
  std::size_t h = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (rank[i] == 0) {
      h = 0;
      continue;
    }
    const std::size_t j = sa[rank[i] - 1];
    while (i + h < n && j + h < n && s[i + h] == s[j + h]) ++h;
    lcp[rank[i]] = h;
    if (h > 0) --h;
  }
  return lcp;
}

}  // namespace

std::vector<Repeat> maximal_repeats(const std::vector<std::vector<ActivityId>>& sequences) {
  std::size_t alphabet = 0;
  for (const auto& seq : sequences) {
    for (ActivityId a : seq) alphabet = std::max<std::size_t>(alphabet, a + 1);
  }
  // symbols >= alphabet are the per-sequence separators
  std::vector<std::size_t> text;
  std::vector<std::size_t> owner;
  std::vector<std::size_t> offset;
  for (std::size_t v = 0; v < sequences.size(); ++v) {
    for (std::size_t p = 0; p < sequences[v].size(); ++p) {
      text.push_back(sequences[v][p]);
      owner.push_back(v);
      offset.push_back(p);
    }
    text.push_back(alphabet + v);
    owner.push_back(v);
    offset.push_back(sequences[v].size());
  }
  if (text.empty()) return {};
  auto is_separator = [&](std::size_t pos) { return text[pos] >= alphabet; };

  const std::vector<std::size_t> sa = suffix_array(text);
  const std::vector<std::size_t> lcp = lcp_array(text, sa);

  std::vector<Repeat> repeats;
  auto report = [&](std::size_t length, std::size_t lb, std::size_t rb) {
    bool left_maximal = false;
    std::size_t left = 0;
    for (std::size_t i = lb; i <= rb && !left_maximal; ++i) {
      const std::size_t pos = sa[i];
      if (pos == 0 || is_separator(pos - 1)) {
        left_maximal = true;
      } else if (i == lb) {
        left = text[pos - 1];
      } else if (text[pos - 1] != left) {
        left_maximal = true;
      }
    }
    if (!left_maximal) return;
    Repeat r;
    const std::size_t start = sa[lb];
    for (std::size_t p = 0; p < length; ++p) r.sequence.push_back(static_cast<ActivityId>(text[start + p]));
    for (std::size_t i = lb; i <= rb; ++i) r.occurrences.emplace_back(owner[sa[i]], offset[sa[i]]);
    std::sort(r.occurrences.begin(), r.occurrences.end());
    repeats.push_back(std::move(r));
  };

  // bottom-up traversal of lcp-intervals
  struct Interval {
    std::size_t lcp;
    std::size_t lb;
  };
  std::vector<Interval> stack{{0, 0}};
  const std::size_t n = text.size();
  for (std::size_t i = 1; i <= n; ++i) {
    const std::size_t current = i < n ? lcp[i] : 0;
    std::size_t lb = i - 1;
    while (current < stack.back().lcp) {
      const Interval top = stack.back();
      stack.pop_back();
      report(top.lcp, top.lb, i - 1);
      lb = top.lb;
    }
    if (current > stack.back().lcp) stack.push_back({current, lb});
  }

  std::sort(repeats.begin(), repeats.end(),
            [](const Repeat& a, const Repeat& b) { return a.sequence < b.sequence; });
  return repeats;
}

FeatureSpace mra_features(const GroupedEventLog& g) {
  if (g.support() == 0) throw Error(ErrorKind::kEmptyLog, "no variants");
  std::vector<std::vector<ActivityId>> sequences;
  sequences.reserve(g.support());
  for (const Variant& v : g.variants()) sequences.push_back(v.activities);

  std::map<std::vector<ActivityId>, std::set<std::pair<std::size_t, std::size_t>>> starts;
  for (const Repeat& r : maximal_repeats(sequences)) {
    std::vector<ActivityId> alphabet(r.sequence);
    std::sort(alphabet.begin(), alphabet.end());
    alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
    auto& positions = starts[alphabet];
    positions.insert(r.occurrences.begin(), r.occurrences.end());
  }

  FeatureSpace space;
  space.vectors.assign(g.support(), std::vector<double>(starts.size(), 0.0));
  for (const auto& [alphabet, positions] : starts) {
    const std::size_t f = space.names.size();
    space.names.push_back(joined_name(g, alphabet, "{", ",", "}"));
    for (const auto& [variant, offset] : positions) space.vectors[variant][f] += 1.0;
  }
  return space;
}

// ------------------------------------------------------------------ distances

double vector_distance(std::span<const double> u, std::span<const double> v, VectorMetric metric) {
  if (u.size() != v.size()) {
    throw Error(ErrorKind::kDimensionMismatch, fmt::format("{} vs {} dimensions", u.size(), v.size()));
  }
  double sum = 0.0;
  if (metric == VectorMetric::kEuclidean) {
    for (std::size_t i = 0; i < u.size(); ++i) sum += (u[i] - v[i]) * (u[i] - v[i]);
    return std::sqrt(sum);
  }
  for (std::size_t i = 0; i < u.size(); ++i) sum += std::abs(u[i] - v[i]);
  return sum;
}

double DistanceMatrix::max() const {
  double best = 0.0;
  for (double d : data_) best = std::max(best, d);
  return best;
}

std::string SimilarityMethod::name() const {
  switch (kind) {
    case Kind::kGed: return "GED";
    case Kind::kKGram: return fmt::format("{}-gram", gram);
    case Kind::kMra: return "MRA";
  }
  return "?";
}

DistanceMatrix distance_matrix(const GroupedEventLog& g, const SimilarityMethod& method, unsigned jobs) {
  const std::size_t n = g.support();
  if (n < 2) throw Error(ErrorKind::kInvalidInput, "distance matrix needs at least two variants");
  DistanceMatrix m(n);
  if (method.kind == SimilarityMethod::Kind::kGed) {
    parallel_for(n, jobs, [&](std::size_t i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        m.set(i, j, static_cast<double>(ged(g.variant(i).activities, g.variant(j).activities)));
      }
    });
    return m;
  }
  const FeatureSpace space =
      method.kind == SimilarityMethod::Kind::kKGram ? kgram_features(g, method.gram) : mra_features(g);
  parallel_for(n, jobs, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      m.set(i, j, vector_distance(space.vectors[i], space.vectors[j], method.metric));
    }
  });
  return m;
}

std::string format_matrix_csv(const DistanceMatrix& m) {
  std::string out = "i";
  for (std::size_t j = 0; j < m.size(); ++j) out += fmt::format(",{}", j);
  out += '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    out += fmt::format("{}", i);
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j > i) {
        out += fmt::format(",{}", m(i, j));
      } else {
        out += ',';
      }
    }
    out += '\n';
  }
  return out;
}

}  // namespace tracecluster
