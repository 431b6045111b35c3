#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "tracecluster/benchmark.hpp"
#include "tracecluster/config.hpp"

namespace tracecluster {

/// Version string embedded in every report.
std::string_view tool_version();

struct LogInput {
  std::filesystem::path path;
  /// "csv", "xes" or "auto" (by extension; .xes -> xes, anything else csv).
  std::string format = "auto";
  CsvMapping mapping;
  /// Empty: ISO-8601.
  std::string timestamp_format;
};

EventLog load_log(const LogInput& input);

/// Reads "trace_id,cluster" rows (the format of solution.csv and of ground
/// truth files) into a variant-level solution. Throws kInvalidInput when a
/// trace of `g` has no row and kUnknownTraceId for a row naming no trace.
ClusteringSolution read_trace_solution(const std::filesystem::path& path, const GroupedEventLog& g,
                                       std::string method);

struct RunConfig {
  LogInput log;
  std::optional<std::filesystem::path> constraints;
  std::optional<std::filesystem::path> ground_truth;
  /// GED | kgram:K | MRA | condritrac
  std::string method = "condritrac";
  std::size_t k = 2;
  double cvt = 0.5;
  double tvt = 0.25;
  bool separate_unassignable = false;
  double dependency_threshold = 0.9;
  std::size_t scale_count = 0;
  std::uint64_t seed = 0;
  /// 0: one worker per logical core.
  unsigned jobs = 0;
  std::filesystem::path output_dir = "out";

  /// Applies the keys of a config file: log, format, case_column,
  /// activity_column, timestamp_column, timestamp_format, constraints,
  /// ground_truth, method, k, cvt, tvt, separate_unassignable,
  /// dependency_threshold, scale_count, seed, jobs, output. Relative paths
  /// are taken relative to `base`.
  void apply(const KeyValueConfig& config, const std::filesystem::path& base = {});
};

/// Clusters the log and writes solution.csv, solution_variants.csv,
/// solution.json, report.json and, for ConDriTraC, assignment_trace.json
/// into cfg.output_dir. Returns the report.
EvaluationReport cmd_cluster(const RunConfig& cfg);

struct EvaluateConfig {
  LogInput log;
  std::filesystem::path solution;
  std::optional<std::filesystem::path> constraints;
  std::optional<std::filesystem::path> ground_truth;
  double dependency_threshold = 0.9;
  bool variant_weighted = false;
  bool trace_level_jaccard = false;
  unsigned jobs = 0;
};

/// report.json contents for an existing solution file.
std::string cmd_evaluate(const EvaluateConfig& cfg);

struct GenConstraintsConfig {
  LogInput log;
  std::filesystem::path ground_truth;
  /// In percent of supp(G).
  double percentage = 5.0;
  std::uint64_t seed = 0;
};

/// Constraint TSV.
std::string cmd_gen_constraints(const GenConstraintsConfig& cfg);

struct BenchmarkConfig {
  std::filesystem::path spec;
  /// Real log with ground truth; without it a synthetic log is generated
  /// from the spec's synth.* keys.
  std::optional<LogInput> log;
  std::optional<std::filesystem::path> ground_truth;
  std::filesystem::path output_dir = "bench";
  std::optional<unsigned> jobs;
  std::optional<std::uint64_t> seed;
};

/// Writes results.csv and summary.json.
ExperimentResult cmd_benchmark(const BenchmarkConfig& cfg);

/// Writes log.csv and truth.csv (trace_id,cluster).
void cmd_synth(const SyntheticLogSpec& spec, const std::filesystem::path& output_dir);

/// 2 for errors caused by the inputs or the configuration, 1 otherwise.
int exit_code_for(const Error& e);

/// Writes `text` to `path`, creating parent directories. Throws kIo.
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace tracecluster
