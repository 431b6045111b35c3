#include "tracecluster/evaluation.hpp"

#include <fmt/format.h>
#include <map>

#include "json.hpp"
#include "tracecluster/csv.hpp"
#include "tracecluster/error.hpp"
#include "tracecluster/parallel.hpp"

namespace tracecluster {

WeightedF1 weighted_f1(const ClusteringSolution& solution, const GroupedEventLog& g,
                       const DiscoveryConfig& discovery, SizeWeighting weighting, unsigned jobs) {
  if (solution.size() != g.support()) {
    throw Error(ErrorKind::kDomainMismatch,
                fmt::format("solution covers {} variants, log has {}", solution.size(), g.support()));
  }
  const auto members = solution.clusters();
  WeightedF1 out;
  out.clusters.resize(members.size());
  parallel_for(members.size(), jobs, [&](std::size_t c) {
    if (members[c].empty()) throw Error(ErrorKind::kEmptyCluster, fmt::format("cluster {} is empty", c));
    ClusterQuality& q = out.clusters[c];
    q.cluster = c;
    q.variants = members[c].size();
    for (std::size_t v : members[c]) q.traces += g.variant(v).multiplicity();
    const FollowsCounts counts(make_sublog(g, members[c]));
    q.conformance = conformance(discover(counts, discovery), counts);
  });

  double weighted = 0.0;
  double total = 0.0;
  for (const auto& q : out.clusters) {
    const double n = static_cast<double>(weighting == SizeWeighting::kTraces ? q.traces : q.variants);
    weighted += n * q.conformance.f1;
    total += n;
  }
  out.value = total == 0.0 ? 0.0 : weighted / total;
  return out;
}

double unclustered_f1(const GroupedEventLog& g, const DiscoveryConfig& discovery) {
  std::vector<std::size_t> all(g.support());
  for (std::size_t v = 0; v < all.size(); ++v) all[v] = v;
  const FollowsCounts counts(make_sublog(g, all));
  return conformance(discover(counts, discovery), counts).f1;
}

double relative_improvement(double ek, double tc) {
  if (!(tc > 0.0)) throw Error(ErrorKind::kDivisionByZero, "baseline F1 must be positive");
  return ek / tc;
}

std::string improvement_label(double ri) {
  if (ri > 1.0) return "improvement";
  if (ri < 1.0) return "deterioration";
  return "equal";
}

// ----------------------------------------------------------------- jaccard

namespace {

double pairs(double n) { return n * (n - 1.0) / 2.0; }

double jaccard_weighted(const ClusteringSolution& a, const ClusteringSolution& b,
                        const std::vector<double>& weight) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::kDomainMismatch,
                fmt::format("partitions of {} and {} instances", a.size(), b.size()));
  }
  std::map<std::pair<std::size_t, std::size_t>, double> table;
  std::vector<double> rows(a.k(), 0.0), cols(b.k(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    table[{a.cluster_of(i), b.cluster_of(i)}] += weight[i];
    rows[a.cluster_of(i)] += weight[i];
    cols[b.cluster_of(i)] += weight[i];
  }
  double n11 = 0.0;
  for (const auto& [cell, n] : table) n11 += pairs(n);
  double together_a = 0.0, together_b = 0.0;
  for (double n : rows) together_a += pairs(n);
  for (double n : cols) together_b += pairs(n);
  // n11 + n10 + n01
  const double denom = together_a + together_b - n11;
  if (denom == 0.0) return 1.0;
  return n11 / denom;
}

}  // namespace

double jaccard_index(const ClusteringSolution& a, const ClusteringSolution& b) {
  return jaccard_weighted(a, b, std::vector<double>(a.size(), 1.0));
}

double jaccard_index(const ClusteringSolution& a, const ClusteringSolution& b, const GroupedEventLog& g) {
  if (a.size() != g.support()) throw Error(ErrorKind::kDomainMismatch, "solution does not match the log");
  std::vector<double> weight(g.support());
  for (std::size_t v = 0; v < weight.size(); ++v) weight[v] = static_cast<double>(g.variant(v).multiplicity());
  return jaccard_weighted(a, b, weight);
}

// --------------------------------------------------------------- violations

ViolationRates violation_percentages(const ClusteringSolution& solution, const GroupedEventLog& g,
                                     const ConstraintSet& cs) {
  if (solution.size() != g.support()) throw Error(ErrorKind::kDomainMismatch, "solution does not match the log");
  auto cluster = [&](const std::string& id) {
    const std::size_t v = g.variant_of(id);
    if (v == EventLog::npos) throw Error(ErrorKind::kUnknownTraceId, fmt::format("unknown trace id '{}'", id));
    return solution.cluster_of(v);
  };
  ViolationRates r;
  r.ml_total = cs.must_links.size();
  r.cl_total = cs.cannot_links.size();
  for (const auto& [a, b] : cs.must_links) r.ml_violated += cluster(a) != cluster(b);
  for (const auto& [a, b] : cs.cannot_links) r.cl_violated += cluster(a) == cluster(b);
  return r;
}

std::vector<InformativenessRow> informativeness_report(const std::vector<NamedSolution>& solutions,
                                                       const GroupedEventLog& g,
                                                       const std::vector<NamedConstraints>& sets) {
  std::vector<InformativenessRow> rows;
  for (const auto& s : solutions) {
    for (const auto& c : sets) {
      rows.push_back({s.technique, c.name, violation_percentages(s.solution, g, c.constraints)});
    }
  }
  return rows;
}

std::string format_informativeness_csv(const std::vector<InformativenessRow>& rows) {
  std::string out = "technique,constraint_set,ml_violated_pct,cl_violated_pct\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{}\n", csv::escape(r.technique), csv::escape(r.constraint_set),
                       r.rates.ml_percent(), r.rates.cl_percent());
  }
  return out;
}

// ------------------------------------------------------------------ reports

EvaluationReport evaluate(const ClusteringSolution& solution, const GroupedEventLog& g,
                          const EvaluationOptions& options) {
  EvaluationReport r;
  r.method = solution.method();
  r.k = solution.k();
  r.f1 = weighted_f1(solution, g, options.discovery, options.weighting, options.jobs);
  if (options.baseline_f1) {
    r.relative_improvement = relative_improvement(r.f1.value, *options.baseline_f1);
    r.improvement_label = improvement_label(*r.relative_improvement);
  }
  if (options.ground_truth) {
    r.jaccard = options.trace_level_jaccard ? jaccard_index(solution, *options.ground_truth, g)
                                            : jaccard_index(solution, *options.ground_truth);
  }
  for (const auto& c : options.constraint_sets) {
    r.violations.emplace_back(c.name, violation_percentages(solution, g, c.constraints));
  }
  return r;
}

std::string to_json(const EvaluationReport& report) {
  nlohmann::json j;
  j["method"] = report.method;
  j["k"] = report.k;
  j["f1_wa"] = report.f1.value;
  j["clusters"] = nlohmann::json::array();
  for (const auto& q : report.f1.clusters) {
    j["clusters"].push_back({{"cluster", q.cluster},
                             {"traces", q.traces},
                             {"variants", q.variants},
                             {"recall", q.conformance.recall},
                             {"precision", q.conformance.precision},
                             {"f1", q.conformance.f1}});
  }
  j["relative_improvement"] = report.relative_improvement ? nlohmann::json(*report.relative_improvement)
                                                          : nlohmann::json();
  j["improvement_label"] = report.improvement_label ? nlohmann::json(*report.improvement_label)
                                                    : nlohmann::json();
  j["jaccard"] = report.jaccard ? nlohmann::json(*report.jaccard) : nlohmann::json();
  j["violations"] = nlohmann::json::array();
  for (const auto& [name, v] : report.violations) {
    j["violations"].push_back({{"constraint_set", name},
                               {"ml_total", v.ml_total},
                               {"ml_violated", v.ml_violated},
                               {"ml_violated_pct", v.ml_percent()},
                               {"cl_total", v.cl_total},
                               {"cl_violated", v.cl_violated},
                               {"cl_violated_pct", v.cl_percent()}});
  }
  return j.dump(2);
}

std::string csv_header(const EvaluationReport& report) {
  std::string out = "method,k,f1_wa,ri,jaccard";
  for (const auto& [name, v] : report.violations) {
    out += fmt::format(",{},{}", csv::escape(name + "_ml_pct"), csv::escape(name + "_cl_pct"));
  }
  return out + "\n";
}

std::string csv_row(const EvaluationReport& report) {
  auto opt = [](const std::optional<double>& x) { return x ? fmt::format("{}", *x) : std::string(); };
  std::string out = fmt::format("{},{},{},{},{}", csv::escape(report.method), report.k, report.f1.value,
                                opt(report.relative_improvement), opt(report.jaccard));
  for (const auto& [name, v] : report.violations) out += fmt::format(",{},{}", v.ml_percent(), v.cl_percent());
  return out + "\n";
}

}  // namespace tracecluster
