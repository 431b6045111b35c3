#pragma once
// Shared fixtures and hand-rolled random generators for the test binaries.

#include <filesystem>
#include <string>
#include <vector>

#include "tracecluster/log_model.hpp"
#include "tracecluster/random.hpp"
#include "tracecluster/solution.hpp"

namespace testing {

using namespace tracecluster;

inline std::filesystem::path data_dir() { return TRACECLUSTER_TEST_DATA; }

/// A log with one trace per entry of `sequences` (labels are single
/// characters), ids t0, t1, ...
inline EventLog log_from(const std::vector<std::string>& sequences) {
  std::vector<Trace> traces;
  const Timestamp origin = std::chrono::sys_days{std::chrono::year{2021} / 3 / 1};
  for (std::size_t i = 0; i < sequences.size(); ++i) {
    Trace t;
    t.trace_id = "t" + std::to_string(i);
    for (std::size_t e = 0; e < sequences[i].size(); ++e) {
      Event ev;
      ev.trace_id = t.trace_id;
      ev.activity = std::string(1, sequences[i][e]);
      ev.timestamp = origin + std::chrono::minutes(60 * i + e);
      t.events.push_back(std::move(ev));
    }
    traces.push_back(std::move(t));
  }
  return EventLog(std::move(traces));
}

inline std::vector<ActivityId> random_sequence(Rng& rng, std::size_t max_length, std::size_t alphabet,
                                               std::size_t min_length = 0) {
  const std::size_t length = min_length + uniform_index(rng, max_length - min_length + 1);
  std::vector<ActivityId> out(length);
  for (auto& a : out) a = static_cast<ActivityId>(uniform_index(rng, alphabet));
  return out;
}

inline std::string random_word(Rng& rng, std::size_t max_length, std::size_t alphabet,
                               std::size_t min_length = 1) {
  std::string out;
  for (ActivityId a : random_sequence(rng, max_length, alphabet, min_length)) out.push_back(static_cast<char>('a' + a));
  return out;
}

/// Random labels in [0, k) using every label at least once (n >= k).
inline std::vector<std::size_t> random_partition(Rng& rng, std::size_t n, std::size_t k) {
  std::vector<std::size_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = i < k ? i : uniform_index(rng, k);
  for (std::size_t i = n; i > 1; --i) std::swap(labels[i - 1], labels[uniform_index(rng, i)]);
  return labels;
}

inline ClusteringSolution random_solution(Rng& rng, std::size_t n, std::size_t k, std::string method = "random") {
  return ClusteringSolution(k, random_partition(rng, n, k), std::move(method));
}

}  // namespace testing
