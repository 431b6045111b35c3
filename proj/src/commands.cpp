#include "tracecluster/commands.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <fstream>
#include <spdlog/spdlog.h>

#include "json.hpp"
#include "tracecluster/csv.hpp"
#include "tracecluster/error.hpp"

#ifndef TRACECLUSTER_VERSION
#define TRACECLUSTER_VERSION "0.0.0"
#endif

namespace tracecluster {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view tool_version() { return TRACECLUSTER_VERSION; }

EventLog load_log(const LogInput& input) {
  std::string format = input.format;
  if (format == "auto") {
    std::string ext = input.path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    format = ext == ".xes" ? "xes" : "csv";
  }
  if (format == "xes") return parse_xes(input.path);
  if (format == "csv") return parse_csv(input.path, input.mapping, input.timestamp_format);
  throw Error(ErrorKind::kInvalidConfig, fmt::format("unknown log format '{}'", input.format));
}

ClusteringSolution read_trace_solution(const fs::path& path, const GroupedEventLog& g, std::string method) {
  const auto records = csv::parse(csv::read_file(path));
  if (records.empty()) throw Error(ErrorKind::kInvalidInput, path.string() + ": empty file");
  const auto& header = records.front();
  if (header.size() < 2) {
    throw Error(ErrorKind::kMissingColumn, path.string() + ": expected columns trace_id,cluster");
  }
  const EventLog& log = g.source();
  std::vector<std::optional<std::string>> labels(log.size());
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& row = records[r];
    if (row.size() == 1 && row[0].empty()) continue;
    if (row.size() < 2) throw Error(ErrorKind::kMalformedCsv, fmt::format("{}: row {} is short", path.string(), r));
    const std::size_t t = log.find(row[0]);
    if (t == EventLog::npos) {
      throw Error(ErrorKind::kUnknownTraceId, fmt::format("{}: unknown trace id '{}'", path.string(), row[0]));
    }
    labels[t] = row[1];
  }
  std::vector<std::string> flat;
  flat.reserve(labels.size());
  for (std::size_t t = 0; t < labels.size(); ++t) {
    if (!labels[t]) {
      throw Error(ErrorKind::kInvalidInput,
                  fmt::format("{}: no cluster for trace '{}'", path.string(), log.traces()[t].trace_id));
    }
    flat.push_back(*labels[t]);
  }
  return solution_from_trace_labels(g, flat, std::move(method));
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
}

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::kDimensionMismatch:
    case ErrorKind::kIndexOutOfRange:
    case ErrorKind::kEmptyCluster:
    case ErrorKind::kDivisionByZero:
      return 1;
    default:
      return 2;
  }
}

// ------------------------------------------------------------------ cluster

void RunConfig::apply(const KeyValueConfig& config, const fs::path& base) {
  config.reject_unknown({"log", "format", "case_column", "activity_column", "timestamp_column",
                         "timestamp_format", "constraints", "ground_truth", "method", "k", "cvt", "tvt",
                         "separate_unassignable", "dependency_threshold", "scale_count", "seed", "jobs",
                         "output"});
  auto resolve = [&](const std::string& p) { return fs::path(p).is_absolute() ? fs::path(p) : base / p; };
  if (const auto v = config.get("log")) log.path = resolve(*v);
  if (const auto v = config.get("format")) log.format = *v;
  if (const auto v = config.get("case_column")) log.mapping.trace_id = *v;
  if (const auto v = config.get("activity_column")) log.mapping.activity = *v;
  if (const auto v = config.get("timestamp_column")) log.mapping.timestamp = *v;
  if (const auto v = config.get("timestamp_format")) log.timestamp_format = *v;
  if (const auto v = config.get("constraints")) constraints = resolve(*v);
  if (const auto v = config.get("ground_truth")) ground_truth = resolve(*v);
  if (const auto v = config.get("method")) method = *v;
  auto non_negative = [&](const char* key) {
    const auto v = *config.get_int(key);
    if (v < 0) throw Error(ErrorKind::kInvalidConfig, fmt::format("{} must not be negative", key));
    return static_cast<std::uint64_t>(v);
  };
  if (config.contains("k")) k = non_negative("k");
  if (const auto v = config.get_double("cvt")) cvt = *v;
  if (const auto v = config.get_double("tvt")) tvt = *v;
  if (const auto v = config.get_bool("separate_unassignable")) separate_unassignable = *v;
  if (const auto v = config.get_double("dependency_threshold")) dependency_threshold = *v;
  if (config.contains("scale_count")) scale_count = non_negative("scale_count");
  if (config.contains("seed")) seed = non_negative("seed");
  if (config.contains("jobs")) jobs = static_cast<unsigned>(non_negative("jobs"));
  if (const auto v = config.get("output")) output_dir = resolve(*v);
}

namespace {

json run_config_json(const RunConfig& cfg, const Technique& technique) {
  json j;
  j["log"] = cfg.log.path.string();
  j["format"] = cfg.log.format;
  j["case_column"] = cfg.log.mapping.trace_id;
  j["activity_column"] = cfg.log.mapping.activity;
  j["timestamp_column"] = cfg.log.mapping.timestamp;
  j["timestamp_format"] = cfg.log.timestamp_format;
  j["constraints"] = cfg.constraints ? json(cfg.constraints->string()) : json();
  j["ground_truth"] = cfg.ground_truth ? json(cfg.ground_truth->string()) : json();
  j["method"] = technique.family == Technique::Family::kCondritrac ? "condritrac" : technique.similarity.name();
  j["k"] = cfg.k;
  j["cvt"] = cfg.cvt;
  j["tvt"] = cfg.tvt;
  j["separate_unassignable"] = cfg.separate_unassignable;
  j["dependency_threshold"] = cfg.dependency_threshold;
  j["scale_count"] = cfg.scale_count;
  j["seed"] = cfg.seed;
  j["output"] = cfg.output_dir.string();
  return j;
}

std::string solution_csv(const ClusteringSolution& s, const GroupedEventLog& g) {
  std::string out = "trace_id,cluster\n";
  const auto labels = s.trace_assignment(g);
  for (std::size_t t = 0; t < labels.size(); ++t) {
    out += fmt::format("{},{}\n", csv::escape(g.source().traces()[t].trace_id), labels[t]);
  }
  return out;
}

std::string solution_variants_csv(const ClusteringSolution& s) {
  std::string out = "variant_index,cluster\n";
  for (std::size_t v = 0; v < s.size(); ++v) out += fmt::format("{},{}\n", v, s.cluster_of(v));
  return out;
}

std::string solution_json(const ClusteringSolution& s, const GroupedEventLog& g) {
  json j;
  j["method"] = s.method();
  j["k"] = s.k();
  j["clusters"] = json::array();
  for (const auto& members : s.clusters()) {
    std::size_t traces = 0;
    for (std::size_t v : members) traces += g.variant(v).multiplicity();
    j["clusters"].push_back({{"variants", members}, {"traces", traces}});
  }
  j["variants"] = json::array();
  for (std::size_t v = 0; v < s.size(); ++v) {
    std::vector<std::string> ids;
    for (std::size_t t : g.variant(v).member_traces) ids.push_back(g.source().traces()[t].trace_id);
    j["variants"].push_back({{"index", v},
                             {"cluster", s.cluster_of(v)},
                             {"activities", g.labels(v)},
                             {"multiplicity", g.variant(v).multiplicity()},
                             {"traces", ids}});
  }
  return j.dump(2) + "\n";
}

json log_json(const GroupedEventLog& g) {
  const LogStatistics st = log_statistics(g);
  return {{"traces", st.trace_count},
          {"variants", st.variant_count},
          {"activity_types", st.activity_type_count},
          {"average_trace_length", st.average_trace_length},
          {"min_trace_length", st.min_trace_length},
          {"max_trace_length", st.max_trace_length}};
}

}  // namespace

EvaluationReport cmd_cluster(const RunConfig& cfg) {
  const Technique technique = Technique::parse(cfg.method);
  spdlog::info("reading log {}", cfg.log.path.string());
  const EventLog log = load_log(cfg.log);
  const GroupedEventLog g(log);
  spdlog::info("{} traces, {} variants", g.trace_count(), g.support());

  ConstraintSet cs;
  if (cfg.constraints) cs = read_constraints(*cfg.constraints);
  validate(cs, log).throw_if_invalid();
  std::optional<ClusteringSolution> truth;
  if (cfg.ground_truth) truth = read_trace_solution(*cfg.ground_truth, g, "ground truth");

  const VariantConstraintSet vcs = lift(cs, g, true);
  DiscoveryConfig discovery{cfg.dependency_threshold};
  ClusteringSolution solution;
  std::optional<std::string> trace_json;
  if (technique.family == Technique::Family::kCondritrac) {
    CondritracConfig cc;
    cc.k = cfg.k;
    cc.cvt = cfg.cvt;
    cc.tvt = cfg.tvt;
    cc.separate_unassignable = cfg.separate_unassignable;
    cc.seed = cfg.seed;
    cc.discovery = discovery;
    cc.jobs = cfg.jobs;
    auto result = condritrac(g, vcs, cc);
    solution = std::move(result.solution);
    trace_json = to_json(result.trace, cc);
  } else {
    ConstrainedClusterOptions options;
    options.similarity = technique.similarity;
    options.adjust.scale_count = cfg.scale_count;
    options.jobs = cfg.jobs;
    solution = constrained_cluster(g, vcs, cfg.k, options).solution;
  }
  spdlog::info("{} produced {} clusters", solution.method(), solution.k());

  EvaluationOptions eo;
  eo.discovery = discovery;
  eo.baseline_f1 = unclustered_f1(g, discovery);
  eo.ground_truth = truth;
  eo.jobs = cfg.jobs;
  if (cfg.constraints) eo.constraint_sets.push_back({"constraints", cs});
  EvaluationReport report = evaluate(solution, g, eo);

  json r;
  r["tool"] = "tracecluster";
  r["version"] = tool_version();
  r["command"] = "cluster";
  r["config"] = run_config_json(cfg, technique);
  r["log"] = log_json(g);
  r["baseline"] = {{"kind", "unclustered"}, {"f1", *eo.baseline_f1}};
  r["evaluation"] = json::parse(to_json(report));

  write_file(cfg.output_dir / "solution.csv", solution_csv(solution, g));
  write_file(cfg.output_dir / "solution_variants.csv", solution_variants_csv(solution));
  write_file(cfg.output_dir / "solution.json", solution_json(solution, g));
  write_file(cfg.output_dir / "report.json", r.dump(2) + "\n");
  if (trace_json) write_file(cfg.output_dir / "assignment_trace.json", *trace_json);
  return report;
}

// ----------------------------------------------------------------- evaluate

std::string cmd_evaluate(const EvaluateConfig& cfg) {
  const EventLog log = load_log(cfg.log);
  const GroupedEventLog g(log);
  const ClusteringSolution solution = read_trace_solution(cfg.solution, g, cfg.solution.filename().string());
  EvaluationOptions eo;
  eo.discovery.dependency_threshold = cfg.dependency_threshold;
  eo.weighting = cfg.variant_weighted ? SizeWeighting::kVariants : SizeWeighting::kTraces;
  eo.baseline_f1 = unclustered_f1(g, eo.discovery);
  eo.trace_level_jaccard = cfg.trace_level_jaccard;
  eo.jobs = cfg.jobs;
  if (cfg.ground_truth) eo.ground_truth = read_trace_solution(*cfg.ground_truth, g, "ground truth");
  if (cfg.constraints) eo.constraint_sets.push_back({"constraints", read_constraints(*cfg.constraints)});
  const EvaluationReport report = evaluate(solution, g, eo);

  json r;
  r["tool"] = "tracecluster";
  r["version"] = tool_version();
  r["command"] = "evaluate";
  r["config"] = {{"log", cfg.log.path.string()},
                 {"solution", cfg.solution.string()},
                 {"constraints", cfg.constraints ? json(cfg.constraints->string()) : json()},
                 {"ground_truth", cfg.ground_truth ? json(cfg.ground_truth->string()) : json()},
                 {"dependency_threshold", cfg.dependency_threshold},
                 {"weighting", cfg.variant_weighted ? "variants" : "traces"},
                 {"jaccard_unit", cfg.trace_level_jaccard ? "traces" : "variants"}};
  r["log"] = log_json(g);
  r["baseline"] = {{"kind", "unclustered"}, {"f1", *eo.baseline_f1}};
  r["evaluation"] = json::parse(to_json(report));
  return r.dump(2) + "\n";
}

// ---------------------------------------------------------- gen-constraints

std::string cmd_gen_constraints(const GenConstraintsConfig& cfg) {
  if (!(cfg.percentage > 0.0 && cfg.percentage <= 100.0)) {
    throw Error(ErrorKind::kInvalidConfig, fmt::format("percentage {} out of (0, 100]", cfg.percentage));
  }
  const EventLog log = load_log(cfg.log);
  const GroupedEventLog g(log);
  const ClusteringSolution truth = read_trace_solution(cfg.ground_truth, g, "ground truth");
  return format_constraints(generate_constraints(g, truth, cfg.percentage / 100.0, cfg.seed));
}

// ---------------------------------------------------------------- benchmark

ExperimentResult cmd_benchmark(const BenchmarkConfig& cfg) {
  const KeyValueConfig file = KeyValueConfig::read(cfg.spec);
  SweepConfig sweep = SweepConfig::from_config(file);
  if (cfg.jobs) sweep.jobs = *cfg.jobs;

  EventLog log;
  std::vector<std::size_t> synthetic_truth;
  if (cfg.log) {
    if (!cfg.ground_truth) throw Error(ErrorKind::kInvalidConfig, "a real log needs --ground-truth");
    log = load_log(*cfg.log);
  } else {
    SyntheticLogSpec spec = SyntheticLogSpec::from_config(file);
    if (cfg.seed) spec.seed = *cfg.seed;
    SyntheticLog synthetic = generate_log(spec);
    log = std::move(synthetic.log);
    synthetic_truth = std::move(synthetic.trace_cluster);
  }
  const GroupedEventLog g(log);
  const ClusteringSolution truth =
      cfg.log ? read_trace_solution(*cfg.ground_truth, g, "ground truth") : ground_truth(g, synthetic_truth);
  spdlog::info("benchmark on {} traces / {} variants, {} true clusters", g.trace_count(), g.support(), truth.k());

  ExperimentResult result = run_experiment(g, truth, sweep);
  for (const auto& f : result.failures) {
    spdlog::warn("{} {}% k={} seed={} failed: {}", f.technique, f.percentage, f.k, f.seed, f.message);
  }
  write_file(cfg.output_dir / "results.csv", format_results_csv(result));
  write_file(cfg.output_dir / "summary.json", summary_json(result, sweep));
  return result;
}

void cmd_synth(const SyntheticLogSpec& spec, const fs::path& output_dir) {
  const SyntheticLog s = generate_log(spec);
  write_file(output_dir / "log.csv", format_csv(s.log));
  std::string truth = "trace_id,cluster\n";
  for (std::size_t t = 0; t < s.log.size(); ++t) {
    truth += fmt::format("{},{}\n", s.log.traces()[t].trace_id, s.trace_cluster[t]);
  }
  write_file(output_dir / "truth.csv", truth);
}

}  // namespace tracecluster
