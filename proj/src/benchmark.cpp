#include "tracecluster/benchmark.hpp"

#include <algorithm>
#include <chrono>
#include <fmt/format.h>
#include <map>
#include <set>

#include "json.hpp"
#include "tracecluster/csv.hpp"
#include "tracecluster/error.hpp"
#include "tracecluster/parallel.hpp"
#include "tracecluster/random.hpp"

namespace tracecluster {

// ------------------------------------------------------------ synthetic logs

namespace {

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

void check_probability(double p, const char* what) {
  if (!is_probability(p)) throw Error(ErrorKind::kInvalidSpec, fmt::format("{} = {} is not in [0, 1]", what, p));
}

std::vector<ClusterSkeleton> draw_skeletons(const SyntheticLogSpec& spec, Rng& rng) {
  std::vector<std::string> shared;
  for (std::size_t i = 0; i < spec.shared_activities; ++i) shared.push_back(fmt::format("S{:02}", i));

  std::vector<ClusterSkeleton> out;
  for (std::size_t c = 0; c < spec.k_true; ++c) {
    std::vector<std::string> own;
    for (std::size_t i = 0; i < spec.private_activities; ++i) own.push_back(fmt::format("P{}_{}", c, i));
    auto draw_label = [&]() -> const std::string& {
      const bool use_shared = own.empty() || (!shared.empty() && bernoulli(rng, spec.shared_fraction));
      const auto& pool = use_shared ? shared : own;
      return pool[uniform_index(rng, pool.size())];
    };
    ClusterSkeleton s;
    s.branch_probability = spec.branch_probability;
    s.skip_probability = spec.skip_probability;
    s.loop_probability = spec.loop_probability;
    for (std::size_t i = 0; i < spec.backbone_length; ++i) s.backbone.push_back(draw_label());
    for (std::size_t i = 0; i < spec.alternatives_per_cluster; ++i) s.alternatives.push_back(draw_label());
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<std::string> sample_trace(const ClusterSkeleton& s, double noise,
                                      const std::vector<std::string>& alphabet, Rng& rng) {
  std::vector<std::string> walk;
  for (std::size_t i = 0; i < s.backbone.size(); ++i) {
    if (bernoulli(rng, s.skip_probability)) continue;
    const bool branch = !s.alternatives.empty() && bernoulli(rng, s.branch_probability);
    walk.push_back(branch ? s.alternatives[uniform_index(rng, s.alternatives.size())] : s.backbone[i]);
    if (i > 0 && bernoulli(rng, s.loop_probability)) {
      walk.push_back(s.backbone[i - 1]);
      walk.push_back(s.backbone[i]);
    }
  }
  if (noise == 0.0) return walk;
  std::vector<std::string> out;
  for (const auto& a : walk) {
    if (!bernoulli(rng, noise)) out.push_back(a);
    if (bernoulli(rng, noise)) out.push_back(alphabet[uniform_index(rng, alphabet.size())]);
  }
  return out;
}

}  // namespace

void SyntheticLogSpec::validate() const {
  const std::size_t k = clusters.empty() ? k_true : clusters.size();
  if (k < 2) throw Error(ErrorKind::kInvalidSpec, "at least two planted clusters are required");
  if (!clusters.empty() && clusters.size() != k_true) {
    throw Error(ErrorKind::kInvalidSpec, "k_true does not match the number of skeletons");
  }
  if (traces_per_cluster == 0) throw Error(ErrorKind::kInvalidSpec, "traces_per_cluster must be positive");
  check_probability(noise, "noise");
  if (clusters.empty()) {
    if (backbone_length == 0) throw Error(ErrorKind::kInvalidSpec, "backbone_length must be positive");
    if (shared_activities + private_activities == 0) throw Error(ErrorKind::kInvalidSpec, "no activities");
    check_probability(shared_fraction, "shared_fraction");
    check_probability(branch_probability, "branch_probability");
    check_probability(skip_probability, "skip_probability");
    check_probability(loop_probability, "loop_probability");
  }
  for (const auto& s : clusters) {
    if (s.backbone.empty()) throw Error(ErrorKind::kInvalidSpec, "empty backbone");
    check_probability(s.branch_probability, "branch_probability");
    check_probability(s.skip_probability, "skip_probability");
    check_probability(s.loop_probability, "loop_probability");
  }
}

SyntheticLogSpec SyntheticLogSpec::from_config(const KeyValueConfig& config) {
  SyntheticLogSpec s;
  auto size = [&](const char* key, std::size_t& out) {
    if (const auto v = config.get_int(key)) {
      if (*v < 0) throw Error(ErrorKind::kInvalidSpec, fmt::format("{} must not be negative", key));
      out = static_cast<std::size_t>(*v);
    }
  };
  auto real = [&](const char* key, double& out) {
    if (const auto v = config.get_double(key)) out = *v;
  };
  size("synth.k_true", s.k_true);
  size("synth.traces_per_cluster", s.traces_per_cluster);
  size("synth.shared_activities", s.shared_activities);
  size("synth.private_activities", s.private_activities);
  size("synth.backbone_length", s.backbone_length);
  size("synth.alternatives_per_cluster", s.alternatives_per_cluster);
  real("synth.shared_fraction", s.shared_fraction);
  real("synth.branch_probability", s.branch_probability);
  real("synth.skip_probability", s.skip_probability);
  real("synth.loop_probability", s.loop_probability);
  real("synth.noise", s.noise);
  if (const auto v = config.get_int("synth.seed")) s.seed = static_cast<std::uint64_t>(*v);
  return s;
}

SyntheticLog generate_log(const SyntheticLogSpec& spec) {
  spec.validate();
  Rng skeleton_rng(derive_seed(spec.seed, 1));
  const std::vector<ClusterSkeleton> skeletons =
      spec.clusters.empty() ? draw_skeletons(spec, skeleton_rng) : spec.clusters;

  std::set<std::string> labels;
  for (const auto& s : skeletons) {
    labels.insert(s.backbone.begin(), s.backbone.end());
    labels.insert(s.alternatives.begin(), s.alternatives.end());
  }
  const std::vector<std::string> alphabet(labels.begin(), labels.end());

  Rng rng(derive_seed(spec.seed, 2));
  std::map<std::vector<std::string>, std::size_t> owner;
  std::vector<std::pair<std::size_t, std::vector<std::string>>> sampled;
  for (std::size_t c = 0; c < skeletons.size(); ++c) {
    for (std::size_t j = 0; j < spec.traces_per_cluster; ++j) {
      bool accepted = false;
      for (int attempt = 0; attempt < 1000 && !accepted; ++attempt) {
        auto seq = sample_trace(skeletons[c], spec.noise, alphabet, rng);
        if (seq.empty()) continue;
        const auto [it, inserted] = owner.emplace(seq, c);
        if (!inserted && it->second != c) continue;
        sampled.emplace_back(c, std::move(seq));
        accepted = true;
      }
      if (!accepted) {
        throw Error(ErrorKind::kInvalidSpec,
                    fmt::format("cluster {} keeps producing traces of other clusters", c));
      }
    }
  }
  for (std::size_t i = sampled.size(); i > 1; --i) {
    std::swap(sampled[i - 1], sampled[uniform_index(rng, i)]);
  }

  const Timestamp origin = std::chrono::sys_days{std::chrono::year{2020} / 1 / 1};
  SyntheticLog out;
  std::vector<Trace> traces;
  traces.reserve(sampled.size());
  for (std::size_t i = 0; i < sampled.size(); ++i) {
    Trace t;
    t.trace_id = fmt::format("case_{:05}", i);
    for (std::size_t e = 0; e < sampled[i].second.size(); ++e) {
      Event ev;
      ev.trace_id = t.trace_id;
      ev.activity = sampled[i].second[e];
      ev.timestamp = origin + std::chrono::hours(i) + std::chrono::minutes(e);
      t.events.push_back(std::move(ev));
    }
    traces.push_back(std::move(t));
    out.trace_cluster.push_back(sampled[i].first);
  }
  out.log = EventLog(std::move(traces));
  return out;
}

ClusteringSolution ground_truth(const GroupedEventLog& g, const std::vector<std::size_t>& trace_cluster) {
  if (trace_cluster.size() != g.trace_count()) {
    throw Error(ErrorKind::kDomainMismatch, "one label per trace is required");
  }
  std::vector<std::string> labels;
  labels.reserve(trace_cluster.size());
  for (std::size_t c : trace_cluster) labels.push_back(std::to_string(c));
  return solution_from_trace_labels(g, labels, "ground truth");
}

// -------------------------------------------------------------- techniques

Technique Technique::parse(const std::string& text) {
  std::string s = text;
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  Technique t;
  if (s == "ged") {
    t.similarity = SimilarityMethod::ged();
  } else if (s == "mra") {
    t.similarity = SimilarityMethod::mra();
  } else if (s == "condritrac") {
    t.family = Family::kCondritrac;
  } else {
    std::string digits;
    if (s.rfind("kgram:", 0) == 0) {
      digits = s.substr(6);
    } else if (s.size() > 5 && s.ends_with("-gram")) {
      digits = s.substr(0, s.size() - 5);
    }
    std::size_t k = 0;
    try {
      std::size_t used = 0;
      k = std::stoul(digits, &used);
      if (used != digits.size()) k = 0;
    } catch (const std::logic_error&) {
      k = 0;
    }
    if (k == 0) throw Error(ErrorKind::kInvalidConfig, fmt::format("unknown method '{}'", text));
    t.similarity = SimilarityMethod::kgram(k);
  }
  return t;
}

std::string Technique::name(bool constrained) const {
  if (family == Family::kCondritrac) return "ConDriTraC";
  return technique_name(similarity, constrained);
}

// ------------------------------------------------------------------- sweeps

SweepConfig SweepConfig::from_config(const KeyValueConfig& config) {
  std::vector<std::string> known{"techniques", "percentages", "ks", "seeds", "cvt", "tvt",
                                 "separate_unassignable", "dependency_threshold", "scale_count",
                                 "trace_level_jaccard", "record_time", "jobs"};
  for (const auto& [key, value] : config.values()) {
    if (key.rfind("synth.", 0) == 0) known.push_back(key);
  }
  config.reject_unknown(known);

  SweepConfig c;
  if (const auto v = config.get_list("techniques")) {
    for (const auto& t : *v) c.techniques.push_back(Technique::parse(t));
  } else {
    for (const char* t : {"GED", "3-gram", "MRA", "ConDriTraC"}) c.techniques.push_back(Technique::parse(t));
  }
  if (const auto v = config.get_double_list("percentages")) c.percentages = *v;
  auto positive_list = [&](const char* key) {
    std::vector<std::size_t> out;
    const auto values = config.get_int_list(key);
    for (auto x : *values) {
      if (x < 0) throw Error(ErrorKind::kInvalidConfig, fmt::format("{} must not be negative", key));
      out.push_back(static_cast<std::size_t>(x));
    }
    return out;
  };
  if (config.contains("ks")) c.ks = positive_list("ks");
  if (config.contains("seeds")) {
    c.seeds.clear();
    for (auto s : positive_list("seeds")) c.seeds.push_back(s);
  }
  if (const auto v = config.get_double("cvt")) c.cvt = *v;
  if (const auto v = config.get_double("tvt")) c.tvt = *v;
  if (const auto v = config.get_bool("separate_unassignable")) c.separate_unassignable = *v;
  if (const auto v = config.get_double("dependency_threshold")) c.discovery.dependency_threshold = *v;
  if (const auto v = config.get_int("scale_count")) c.adjust.scale_count = static_cast<std::size_t>(*v);
  if (const auto v = config.get_bool("trace_level_jaccard")) c.trace_level_jaccard = *v;
  if (const auto v = config.get_bool("record_time")) c.record_time = *v;
  if (const auto v = config.get_int("jobs")) c.jobs = static_cast<unsigned>(*v);
  for (double p : c.percentages) {
    if (!(p > 0.0 && p <= 100.0)) throw Error(ErrorKind::kInvalidConfig, fmt::format("percentage {} out of (0, 100]", p));
  }
  return c;
}

double median(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorKind::kInvalidInput, "median of nothing");
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size() / 2;
  return values.size() % 2 ? values[m] : 0.5 * (values[m - 1] + values[m]);
}

namespace {

struct Cell {
  std::size_t technique;
  std::size_t k;
  std::size_t seed;
  /// Index into percentages, or npos for the unconstrained run.
  std::size_t percentage;
};

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

std::string percent_tag(double p) { return fmt::format("{}", p); }

}  // namespace

ExperimentResult run_experiment(const GroupedEventLog& g, const ClusteringSolution& truth,
                                const SweepConfig& config) {
  if (truth.size() != g.support()) throw Error(ErrorKind::kDomainMismatch, "ground truth does not match the log");
  if (config.techniques.empty()) throw Error(ErrorKind::kInvalidConfig, "no techniques");

  // constraint sets, nested across percentages for each seed
  const std::size_t np = config.percentages.size();
  std::vector<std::vector<std::optional<ConstraintSet>>> sets(config.seeds.size(),
                                                             std::vector<std::optional<ConstraintSet>>(np));
  std::vector<std::vector<std::string>> set_errors(config.seeds.size(), std::vector<std::string>(np));
  for (std::size_t s = 0; s < config.seeds.size(); ++s) {
    for (std::size_t p = 0; p < np; ++p) {
      try {
        sets[s][p] = generate_constraints(g, truth, config.percentages[p] / 100.0, config.seeds[s]);
      } catch (const Error& e) {
        set_errors[s][p] = e.what();
      }
    }
  }

  std::vector<std::optional<DistanceMatrix>> raw(config.techniques.size());
  for (std::size_t t = 0; t < config.techniques.size(); ++t) {
    const Technique& tech = config.techniques[t];
    if (tech.family != Technique::Family::kWard) continue;
    for (std::size_t u = 0; u < t; ++u) {
      const Technique& prev = config.techniques[u];
      if (raw[u] && prev.similarity.name() == tech.similarity.name() &&
          prev.similarity.metric == tech.similarity.metric) {
        raw[t] = raw[u];
      }
    }
    if (!raw[t]) raw[t] = distance_matrix(g, tech.similarity, config.jobs);
  }

  std::vector<Cell> cells;
  for (std::size_t t = 0; t < config.techniques.size(); ++t) {
    for (std::size_t k = 0; k < config.ks.size(); ++k) {
      for (std::size_t s = 0; s < config.seeds.size(); ++s) {
        cells.push_back({t, k, s, kNone});
        for (std::size_t p = 0; p < np; ++p) cells.push_back({t, k, s, p});
      }
    }
  }

  struct Output {
    std::vector<ResultRow> rows;
    std::optional<CellFailure> failure;
  };
  std::vector<Output> outputs(cells.size());
  parallel_for(cells.size(), config.jobs, [&](std::size_t i) {
    const Cell& cell = cells[i];
    const Technique& tech = config.techniques[cell.technique];
    const bool constrained = cell.percentage != kNone;
    const std::size_t k = config.ks[cell.k];
    const std::uint64_t seed = config.seeds[cell.seed];
    const double pct = constrained ? config.percentages[cell.percentage] : 0.0;
    const std::string name = tech.name(constrained);
    Output& out = outputs[i];
    auto emit = [&](std::string metric, double value) {
      out.rows.push_back({name, pct, k, seed, std::move(metric), value});
    };
    try {
      if (constrained && !sets[cell.seed][cell.percentage]) {
        throw Error(ErrorKind::kInfeasibleSampling, set_errors[cell.seed][cell.percentage]);
      }
      const auto start = std::chrono::steady_clock::now();
      const VariantConstraintSet vcs =
          constrained ? lift(*sets[cell.seed][cell.percentage], g, true) : VariantConstraintSet(g.support());
      ClusteringSolution solution;
      if (tech.family == Technique::Family::kWard) {
        solution = constrained_cluster(*raw[cell.technique], vcs, k, tech.similarity, config.adjust).solution;
      } else {
        CondritracConfig cc;
        cc.k = k;
        cc.cvt = config.cvt;
        cc.tvt = config.tvt;
        cc.separate_unassignable = config.separate_unassignable;
        cc.seed = seed;
        cc.discovery = config.discovery;
        solution = condritrac(g, vcs, cc).solution;
      }
      const double wall_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

      emit("f1_wa", weighted_f1(solution, g, config.discovery).value);
      emit("jaccard", config.trace_level_jaccard ? jaccard_index(solution, truth, g) : jaccard_index(solution, truth));
      if (constrained) {
        const auto v = violation_percentages(solution, g, *sets[cell.seed][cell.percentage]);
        emit("ml_violated_pct", v.ml_percent());
        emit("cl_violated_pct", v.cl_percent());
      }
      for (std::size_t p = 0; p < np; ++p) {
        if (!sets[cell.seed][p]) continue;
        const auto v = violation_percentages(solution, g, *sets[cell.seed][p]);
        emit("ml_violated_pct@" + percent_tag(config.percentages[p]), v.ml_percent());
        emit("cl_violated_pct@" + percent_tag(config.percentages[p]), v.cl_percent());
      }
      emit("clusters", static_cast<double>(solution.k()));
      if (config.record_time) emit("wall_ms", wall_ms);
    } catch (const std::exception& e) {
      out.rows.clear();
      out.failure = CellFailure{name, pct, k, seed, e.what()};
    }
  });

  ExperimentResult result;
  for (auto& out : outputs) {
    for (auto& row : out.rows) result.rows.push_back(std::move(row));
    if (out.failure) result.failures.push_back(std::move(*out.failure));
  }
  return result;
}

std::string format_results_csv(const ExperimentResult& result) {
  std::string out = "technique,percentage,k,seed,metric,value\n";
  for (const auto& r : result.rows) {
    out += fmt::format("{},{},{},{},{},{}\n", csv::escape(r.technique), r.percentage, r.k, r.seed,
                       csv::escape(r.metric), r.value);
  }
  return out;
}

std::string summary_json(const ExperimentResult& result, const SweepConfig& config) {
  using Key = std::tuple<std::string, double, std::size_t, std::string>;
  std::vector<Key> order;
  std::map<Key, std::vector<double>> groups;
  for (const auto& r : result.rows) {
    Key key{r.technique, r.percentage, r.k, r.metric};
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(r.value);
  }
  nlohmann::json j;
  nlohmann::json cfg;
  cfg["techniques"] = nlohmann::json::array();
  for (const auto& t : config.techniques) cfg["techniques"].push_back(t.name(true));
  cfg["percentages"] = config.percentages;
  cfg["ks"] = config.ks;
  cfg["seeds"] = config.seeds;
  cfg["cvt"] = config.cvt;
  cfg["tvt"] = config.tvt;
  cfg["separate_unassignable"] = config.separate_unassignable;
  cfg["dependency_threshold"] = config.discovery.dependency_threshold;
  cfg["scale_count"] = config.adjust.scale_count;
  cfg["trace_level_jaccard"] = config.trace_level_jaccard;
  j["config"] = cfg;
  j["medians"] = nlohmann::json::array();
  for (const auto& key : order) {
    const auto& values = groups[key];
    j["medians"].push_back({{"technique", std::get<0>(key)},
                            {"percentage", std::get<1>(key)},
                            {"k", std::get<2>(key)},
                            {"metric", std::get<3>(key)},
                            {"runs", values.size()},
                            {"median", median(values)}});
  }
  j["failures"] = nlohmann::json::array();
  for (const auto& f : result.failures) {
    j["failures"].push_back({{"technique", f.technique},
                             {"percentage", f.percentage},
                             {"k", f.k},
                             {"seed", f.seed},
                             {"message", f.message}});
  }
  return j.dump(2) + "\n";
}

}  // namespace tracecluster
