// Command-line front end. Flags override values from --config, which
// override the built-in defaults.

#include <CLI11.hpp>
#include <cstdlib>
#include <fmt/format.h>
#include <iostream>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "tracecluster/commands.hpp"
#include "tracecluster/error.hpp"

namespace tc = tracecluster;

namespace {

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("tracecluster");
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* level = std::getenv("TRACECLUSTER_LOG_LEVEL")) {
    spdlog::set_level(spdlog::level::from_str(level));
  }
}

struct LogFlags {
  std::string path;
  std::string format = "auto";
  std::string case_column = "case_id";
  std::string activity_column = "activity";
  std::string timestamp_column = "timestamp";
  std::string timestamp_format;

  void add_to(CLI::App* app, bool required) {
    auto* opt = app->add_option("log", path, "Event log (.csv or .xes)");
    if (required) opt->required();
    app->add_option("--format", format, "csv, xes or auto")->check(CLI::IsMember({"csv", "xes", "auto"}));
    app->add_option("--case-column", case_column, "CSV column holding the trace id");
    app->add_option("--activity-column", activity_column, "CSV column holding the activity");
    app->add_option("--timestamp-column", timestamp_column, "CSV column holding the timestamp");
    app->add_option("--timestamp-format", timestamp_format,
                    "Pattern such as %Y-%m-%d %H:%M:%S (default: ISO-8601)");
  }

  tc::LogInput input() const {
    tc::LogInput in;
    in.path = path;
    in.format = format;
    in.mapping = {case_column, timestamp_column, activity_column};
    in.timestamp_format = timestamp_format;
    return in;
  }
};

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Expert-driven trace clustering for process event logs"};
  app.set_version_flag("--version", std::string(tc::tool_version()));
  app.require_subcommand(1);

  // ---- cluster
  auto* cluster = app.add_subcommand("cluster", "Cluster a log and write solution, report and trace");
  std::string cluster_config;
  LogFlags cluster_log;
  std::string constraints, ground_truth, method, output;
  std::size_t k = 0;
  double cvt = 0, tvt = 0, threshold = 0;
  std::size_t scale_count = 0;
  std::uint64_t seed = 0;
  unsigned jobs = 0;
  cluster->add_option("--config", cluster_config, "key = value file with defaults for this run");
  cluster_log.add_to(cluster, false);
  cluster->add_option("--constraints", constraints, "Constraint TSV (ML/CL, id, id)");
  cluster->add_option("--ground-truth", ground_truth, "trace_id,cluster CSV for the Jaccard index");
  cluster->add_option("--method", method, "GED | kgram:K | MRA | condritrac");
  cluster->add_option("--k", k, "Number of clusters");
  cluster->add_option("--cvt", cvt, "Cluster value threshold");
  cluster->add_option("--tvt", tvt, "Trace value threshold");
  auto* separate = cluster->add_flag("--separate-unassignable", "Surplus cluster for unassignable traces");
  cluster->add_option("--dependency-threshold", threshold, "Discovery dependency threshold");
  cluster->add_option("--scale-count", scale_count, "Count used for the cannot-link distance (0: supp)");
  cluster->add_option("--seed", seed, "Seed for every random choice");
  cluster->add_option("--jobs", jobs, "Worker threads (0: all cores)");
  cluster->add_option("-o,--output", output, "Output directory");

  // ---- evaluate
  auto* evaluate = app.add_subcommand("evaluate", "Evaluate an existing solution.csv");
  LogFlags eval_log;
  tc::EvaluateConfig eval_cfg;
  std::string eval_solution, eval_constraints, eval_truth, eval_output;
  eval_log.add_to(evaluate, true);
  evaluate->add_option("--solution", eval_solution, "trace_id,cluster CSV")->required();
  evaluate->add_option("--constraints", eval_constraints, "Constraint TSV");
  evaluate->add_option("--ground-truth", eval_truth, "trace_id,cluster CSV");
  evaluate->add_option("--dependency-threshold", eval_cfg.dependency_threshold, "Discovery dependency threshold");
  evaluate->add_flag("--variant-weighted", eval_cfg.variant_weighted, "Weight clusters by variants, not traces");
  evaluate->add_flag("--trace-jaccard", eval_cfg.trace_level_jaccard, "Jaccard index over traces");
  evaluate->add_option("--jobs", eval_cfg.jobs, "Worker threads (0: all cores)");
  evaluate->add_option("-o,--output", eval_output, "Report path (default: stdout)");

  // ---- gen-constraints
  auto* gen = app.add_subcommand("gen-constraints", "Sample constraints from a ground truth");
  LogFlags gen_log;
  tc::GenConstraintsConfig gen_cfg;
  std::string gen_truth, gen_output;
  gen_log.add_to(gen, true);
  gen->add_option("--ground-truth", gen_truth, "trace_id,cluster CSV")->required();
  gen->add_option("--percentage", gen_cfg.percentage, "Constraints as a percentage of the variants");
  gen->add_option("--seed", gen_cfg.seed, "Seed");
  gen->add_option("-o,--output", gen_output, "TSV path (default: stdout)");

  // ---- benchmark
  auto* bench = app.add_subcommand("benchmark", "Run a constraint sweep");
  std::string bench_spec, bench_truth, bench_output = "bench";
  LogFlags bench_log;
  unsigned bench_jobs = 0;
  std::uint64_t bench_seed = 0;
  bench->add_option("--spec", bench_spec, "Sweep config (key = value)")->required();
  bench_log.add_to(bench, false);
  bench->add_option("--ground-truth", bench_truth, "trace_id,cluster CSV for a real log");
  bench->add_option("--jobs", bench_jobs, "Worker threads (0: all cores)");
  bench->add_option("--seed", bench_seed, "Seed of the synthetic log");
  bench->add_option("-o,--output", bench_output, "Output directory");

  // ---- synth
  auto* synth = app.add_subcommand("synth", "Generate a synthetic log with planted clusters");
  std::string synth_config, synth_output = "synth";
  tc::SyntheticLogSpec synth_spec;
  synth->add_option("--config", synth_config, "key = value file with synth.* keys");
  synth->add_option("--clusters", synth_spec.k_true, "Planted clusters");
  synth->add_option("--traces-per-cluster", synth_spec.traces_per_cluster, "Traces per cluster");
  synth->add_option("--noise", synth_spec.noise, "Per-event insert/delete probability");
  synth->add_option("--seed", synth_spec.seed, "Seed");
  synth->add_option("-o,--output", synth_output, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cluster) {
      tc::RunConfig cfg;
      if (!cluster_config.empty()) {
        const std::filesystem::path path(cluster_config);
        cfg.apply(tc::KeyValueConfig::read(path), path.parent_path());
      }
      if (cluster->count("log")) cfg.log.path = cluster_log.path;
      if (cluster->count("--format")) cfg.log.format = cluster_log.format;
      if (cluster->count("--case-column")) cfg.log.mapping.trace_id = cluster_log.case_column;
      if (cluster->count("--activity-column")) cfg.log.mapping.activity = cluster_log.activity_column;
      if (cluster->count("--timestamp-column")) cfg.log.mapping.timestamp = cluster_log.timestamp_column;
      if (cluster->count("--timestamp-format")) cfg.log.timestamp_format = cluster_log.timestamp_format;
      if (cluster->count("--constraints")) cfg.constraints = constraints;
      if (cluster->count("--ground-truth")) cfg.ground_truth = ground_truth;
      if (cluster->count("--method")) cfg.method = method;
      if (cluster->count("--k")) cfg.k = k;
      if (cluster->count("--cvt")) cfg.cvt = cvt;
      if (cluster->count("--tvt")) cfg.tvt = tvt;
      if (separate->count()) cfg.separate_unassignable = true;
      if (cluster->count("--dependency-threshold")) cfg.dependency_threshold = threshold;
      if (cluster->count("--scale-count")) cfg.scale_count = scale_count;
      if (cluster->count("--seed")) cfg.seed = seed;
      if (cluster->count("--jobs")) cfg.jobs = jobs;
      if (cluster->count("--output")) cfg.output_dir = output;
      if (cfg.log.path.empty()) throw tc::Error(tc::ErrorKind::kInvalidConfig, "no log given");
      const auto report = tc::cmd_cluster(cfg);
      std::cout << fmt::format("{}: k={} F1^WA={:.4f}", report.method, report.k, report.f1.value);
      if (report.jaccard) std::cout << fmt::format(" JI={:.4f}", *report.jaccard);
      for (const auto& [name, v] : report.violations) {
        std::cout << fmt::format(" ML violated {:.1f}% CL violated {:.1f}%", v.ml_percent(), v.cl_percent());
      }
      std::cout << "\nwrote " << cfg.output_dir.string() << "\n";
    } else if (*evaluate) {
      eval_cfg.log = eval_log.input();
      eval_cfg.solution = eval_solution;
      if (!eval_constraints.empty()) eval_cfg.constraints = eval_constraints;
      if (!eval_truth.empty()) eval_cfg.ground_truth = eval_truth;
      const std::string report = tc::cmd_evaluate(eval_cfg);
      if (eval_output.empty()) {
        std::cout << report;
      } else {
        tc::write_file(eval_output, report);
      }
    } else if (*gen) {
      gen_cfg.log = gen_log.input();
      gen_cfg.ground_truth = gen_truth;
      const std::string tsv = tc::cmd_gen_constraints(gen_cfg);
      if (gen_output.empty()) {
        std::cout << tsv;
      } else {
        tc::write_file(gen_output, tsv);
      }
    } else if (*bench) {
      tc::BenchmarkConfig cfg;
      cfg.spec = bench_spec;
      if (!bench_log.path.empty()) cfg.log = bench_log.input();
      if (!bench_truth.empty()) cfg.ground_truth = bench_truth;
      cfg.output_dir = bench_output;
      if (bench->count("--jobs")) cfg.jobs = bench_jobs;
      if (bench->count("--seed")) cfg.seed = bench_seed;
      const auto result = tc::cmd_benchmark(cfg);
      std::cout << fmt::format("{} rows, {} failed cells; wrote {}\n", result.rows.size(), result.failures.size(),
                               cfg.output_dir.string());
    } else if (*synth) {
      tc::SyntheticLogSpec spec;
      if (!synth_config.empty()) spec = tc::SyntheticLogSpec::from_config(tc::KeyValueConfig::read(synth_config));
      if (synth->count("--clusters")) spec.k_true = synth_spec.k_true;
      if (synth->count("--traces-per-cluster")) spec.traces_per_cluster = synth_spec.traces_per_cluster;
      if (synth->count("--noise")) spec.noise = synth_spec.noise;
      if (synth->count("--seed")) spec.seed = synth_spec.seed;
      tc::cmd_synth(spec, synth_output);
      std::cout << "wrote " << synth_output << "\n";
    }
  } catch (const tc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return tc::exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
