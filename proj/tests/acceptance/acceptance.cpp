// Acceptance suite: one PASS/FAIL line per criterion.
//
// Exit status is 0 unless a criterion outside kKnownGaps fails; --strict
// turns every FAIL into a nonzero exit. --only N runs a single criterion.

#include <bit>
#include <chrono>
#include <cmath>
#include <cstring>
#include <fmt/format.h>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <spdlog/spdlog.h>
#include <unistd.h>

#include "golden.hpp"
#include "oracles.hpp"
#include "support.hpp"
#include "tracecluster/benchmark.hpp"
#include "tracecluster/commands.hpp"
#include "tracecluster/condritrac.hpp"
#include "tracecluster/constrained_ahc.hpp"
#include "tracecluster/error.hpp"
#include "tracecluster/evaluation.hpp"
#include "tracecluster/similarity.hpp"

using namespace tracecluster;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

// Criteria that fail on the pre-declared fixture for reasons recorded in the
// decisions ledger; they are reported but do not fail the build.
const std::set<int> kKnownGaps{5};

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// ------------------------------------------------------------------ fixture

// Planted-structure fixture shared by criteria 4-6: six clusters of 50
// traces, k = 6, seeds 1..20. Noise and the shared-activity fraction were
// fixed beforehand on seeds 101..105 so that unconstrained clusterings are
// neither perfect nor random (mean Jaccard index near 0.6).
constexpr std::size_t kPlanted = 6;
constexpr std::size_t kSeeds = 20;

SyntheticLogSpec planted_spec(std::uint64_t seed) {
  SyntheticLogSpec spec;
  spec.k_true = kPlanted;
  spec.traces_per_cluster = 50;
  spec.noise = 0.05;
  spec.shared_fraction = 0.9;
  spec.seed = seed;
  return spec;
}

struct PlantedRuns {
  // technique display name -> per-seed metric value
  std::map<std::string, std::vector<double>> jaccard, f1;
  std::map<std::string, std::vector<double>> ml_pct, cl_pct;  // against the 10% set
};

std::string key(const std::string& technique, double percentage) {
  return fmt::format("{}@{}", technique, percentage);
}

const PlantedRuns& planted_runs() {
  static const PlantedRuns runs = [] {
    PlantedRuns out;
    for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
      const SyntheticLog s = generate_log(planted_spec(seed));
      const GroupedEventLog g(s.log);
      const ClusteringSolution truth = ground_truth(g, s.trace_cluster);
      SweepConfig c;
      for (const char* t : {"GED", "3-gram", "MRA", "condritrac"}) c.techniques.push_back(Technique::parse(t));
      c.percentages = {1.0, 5.0, 10.0};
      c.ks = {kPlanted};
      c.seeds = {seed};
      const ExperimentResult r = run_experiment(g, truth, c);
      if (!r.failures.empty()) throw std::runtime_error("sweep cell failed: " + r.failures.front().message);
      for (const auto& row : r.rows) {
        const std::string k = key(row.technique, row.percentage);
        if (row.metric == "jaccard") out.jaccard[k].push_back(row.value);
        if (row.metric == "f1_wa") out.f1[k].push_back(row.value);
        if (row.metric == "ml_violated_pct@10") out.ml_pct[k].push_back(row.value);
        if (row.metric == "cl_violated_pct@10") out.cl_pct[k].push_back(row.value);
      }
    }
    return out;
  }();
  return runs;
}

// (unconstrained, constrained) display names
const std::vector<std::pair<std::string, std::string>> kPairs{
    {"GED", "ConGED"}, {"3-gram", "Con3-gram"}, {"MRA", "ConMRA"}, {"ConDriTraC", "ConDriTraC"}};

/// P(X >= successes) for X ~ Binomial(trials, 1/2).
double sign_test_p(std::size_t successes, std::size_t trials) {
  double p = 0.0;
  for (std::size_t x = successes; x <= trials; ++x) {
    p += std::exp(std::lgamma(trials + 1.0) - std::lgamma(x + 1.0) - std::lgamma(trials - x + 1.0) -
                  static_cast<double>(trials) * std::log(2.0));
  }
  return std::min(1.0, p);
}

// ---------------------------------------------------------------- criteria

Outcome criterion1() {
  const auto start = Clock::now();
  Rng rng(2024);
  std::size_t mismatches = 0;

  for (int i = 0; i < 200; ++i) {
    const auto a = testing::random_sequence(rng, 12, 4), b = testing::random_sequence(rng, 12, 4);
    mismatches += ged(a, b) != testing::ged_oracle(a, b);
  }
  const std::size_t ged_bad = mismatches;

  for (int i = 0; i < 100; ++i) {
    const std::size_t ids = 2 + testing::uniform_index(rng, 49);
    const ConstraintSet cs = testing::random_valid_constraints(rng, ids, 1 + testing::uniform_index(rng, 40),
                                                               1 + testing::uniform_index(rng, 6));
    const auto [ml, cl] = testing::closure_oracle(cs);
    const ExtendedConstraintSet ecs = extend(cs);
    mismatches += ecs.ml_plus() != ml || ecs.cl_plus() != cl;
  }
  const std::size_t closure_bad = mismatches - ged_bad;

  for (int i = 0; i < 300; ++i) {
    const std::size_t n = 1 + testing::uniform_index(rng, 15);
    const std::size_t k = 1 + testing::uniform_index(rng, 6);
    const double density = 0.1 + 0.8 * uniform_unit(rng);
    std::vector<IndexPair> edges;
    std::set<IndexPair> edge_set;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        if (bernoulli(rng, density)) {
          edges.emplace_back(a, b);
          edge_set.insert({a, b});
        }
      }
    }
    const auto found = k_bounded_max_clique(n, edges, k);
    bool ok = found.size() == std::min(k, testing::clique_number_oracle(n, edges));
    for (std::size_t x = 0; x < found.size(); ++x)
      for (std::size_t y = x + 1; y < found.size(); ++y) ok &= edge_set.contains({found[x], found[y]});
    mismatches += !ok;
  }
  const std::size_t clique_bad = mismatches - ged_bad - closure_bad;

  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 2 + testing::uniform_index(rng, 11);
    const DistanceMatrix m = testing::random_matrix(rng, n);
    const std::vector<Merge> got = ward_ahc(m, 1).dendrogram.merges;
    const std::vector<Merge> want = testing::naive_ward(m, 1);
    bool ok = got.size() == want.size();
    for (std::size_t s = 0; ok && s < got.size(); ++s) {
      ok = got[s].left == want[s].left && got[s].right == want[s].right &&
           std::abs(got[s].height - want[s].height) <= 1e-9 * std::max(1.0, want[s].height);
    }
    mismatches += !ok;
  }
  const std::size_t ward_bad = mismatches - ged_bad - closure_bad - clique_bad;

  for (int i = 0; i < 300; ++i) {
    const std::size_t n = 2 + testing::uniform_index(rng, 29);
    const auto a = testing::random_partition(rng, n, 1 + testing::uniform_index(rng, n));
    const auto b = testing::random_partition(rng, n, 1 + testing::uniform_index(rng, n));
    const ClusteringSolution sa(*std::max_element(a.begin(), a.end()) + 1, a, "a");
    const ClusteringSolution sb(*std::max_element(b.begin(), b.end()) + 1, b, "b");
    mismatches += std::abs(jaccard_index(sa, sb) - testing::jaccard_oracle(a, b, std::vector<std::size_t>(n, 1))) > 1e-12;
  }
  const std::size_t ji_bad = mismatches - ged_bad - closure_bad - clique_bad - ward_bad;

  const double elapsed = seconds_since(start);
  return {mismatches == 0 && elapsed < 60.0,
          fmt::format("mismatches: GED {}/200, closure {}/100, clique {}/300, Ward {}/200, JI {}/300; {:.1f} s (< 60)",
                      ged_bad, closure_bad, clique_bad, ward_bad, ji_bad, elapsed)};
}

Outcome criterion2() {
  Rng rng(77);
  std::size_t runs = 0, violated = 0, min_supp = 1000000, max_supp = 0;
  for (std::uint64_t seed = 1; runs < 60; ++seed) {
    SyntheticLogSpec spec;
    spec.k_true = 3 + seed % 4;
    spec.traces_per_cluster = 15 + testing::uniform_index(rng, 45);
    spec.seed = seed;
    const SyntheticLog s = generate_log(spec);
    const GroupedEventLog g(s.log);
    if (g.support() < 50 || g.support() > 300) continue;
    min_supp = std::min(min_supp, g.support());
    max_supp = std::max(max_supp, g.support());
    const ClusteringSolution truth = ground_truth(g, s.trace_cluster);
    for (double fraction : {0.01, 0.05, 0.10}) {
      const ConstraintSet cs = generate_constraints(g, truth, fraction, seed);
      CondritracConfig c;
      c.k = spec.k_true;
      c.seed = seed;
      const ClusteringSolution solution = condritrac(g, cs, c).solution;
      const ViolationRates raw = violation_percentages(solution, g, cs);
      const ViolationRates ext = violation_percentages(solution, g, extend(cs).as_constraint_set());
      violated += raw.ml_violated + raw.cl_violated + ext.ml_violated + ext.cl_violated;
      ++runs;
    }
  }
  return {violated == 0, fmt::format("{} runs, supp {}..{}, k 3..6, 1/5/10%: {} violated constraints (raw + extended)",
                                     runs, min_supp, max_supp, violated)};
}

Outcome criterion3() {
  Rng rng(3);
  std::size_t bad_cells = 0, constrained_cells = 0;
  for (int round = 0; round < 100; ++round) {
    const std::size_t n = 4 + testing::uniform_index(rng, 37);
    std::vector<std::string> seqs;
    for (std::size_t i = 0; i < n; ++i) seqs.push_back(std::string(i + 1, 'a'));  // t_i is variant i
    const EventLog log = testing::log_from(seqs);
    const GroupedEventLog g(log);
    const ConstraintSet cs = testing::random_valid_constraints(rng, n, testing::uniform_index(rng, n), 2 + round % 4);
    const auto [ml, cl] = testing::closure_oracle(cs);
    auto index = [](const std::string& id) { return std::stoul(id.substr(1)); };
    std::set<IndexPair> ml_cells, cl_cells;
    for (const auto& [a, b] : ml) ml_cells.insert(unordered_pair(index(a), index(b)));
    for (const auto& [a, b] : cl) cl_cells.insert(unordered_pair(index(a), index(b)));

    const DistanceMatrix m = testing::random_matrix(rng, n);
    const DistanceMatrix adjusted = adjust_matrix(m, lift(cs, g, true));
    const double cl_value = m.max() * static_cast<double>(n) / 2.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const IndexPair p = unordered_pair(i, j);
        double want = m(i, j);
        if (i != j && ml_cells.contains(p)) want = 0.0;
        if (i != j && cl_cells.contains(p)) want = cl_value;
        constrained_cells += i != j && (ml_cells.contains(p) || cl_cells.contains(p));
        // bit-identical, not merely close
        bad_cells += std::bit_cast<std::uint64_t>(want) != std::bit_cast<std::uint64_t>(adjusted(i, j));
      }
    }
  }
  return {bad_cells == 0,
          fmt::format("100 matrices, {} constrained cells: {} cells differ from ML+ -> 0, CL+ -> max*n/2, rest unchanged",
                      constrained_cells, bad_cells)};
}

Outcome criterion4() {
  // median over all unconstrained GED, 3-gram and MRA clusterings (3 x 20)
  const PlantedRuns& runs = planted_runs();
  std::vector<double> ml_all, cl_all;
  std::string detail;
  for (const char* t : {"GED", "3-gram", "MRA"}) {
    const auto& ml = runs.ml_pct.at(key(t, 0.0));
    const auto& cl = runs.cl_pct.at(key(t, 0.0));
    ml_all.insert(ml_all.end(), ml.begin(), ml.end());
    cl_all.insert(cl_all.end(), cl.begin(), cl.end());
    detail += fmt::format("{} {:.1f}/{:.1f}, ", t, median(ml), median(cl));
  }
  const bool pass = median(ml_all) > median(cl_all);
  detail = fmt::format("ML {:.1f}% vs CL {:.1f}% violated (per technique ML/CL: {}); ", median(ml_all),
                       median(cl_all), detail.substr(0, detail.size() - 2));

  // random k-partitions of the first planted log against its 10% set
  const SyntheticLog s = generate_log(planted_spec(1));
  const GroupedEventLog g(s.log);
  const ConstraintSet cs = generate_constraints(g, ground_truth(g, s.trace_cluster), 0.10, 1);
  Rng rng(4);
  double violated = 0, total = 0;
  for (int round = 0; round < 1000; ++round) {
    std::vector<std::size_t> labels(g.support());
    std::set<std::size_t> used;
    do {
      used.clear();
      for (auto& l : labels) used.insert(l = testing::uniform_index(rng, kPlanted));
    } while (used.size() < kPlanted);
    const ViolationRates r = violation_percentages(ClusteringSolution(kPlanted, labels, "random"), g, cs);
    violated += static_cast<double>(r.cl_violated);
    total += static_cast<double>(r.cl_total);
  }
  const double p = 1.0 / kPlanted, rate = violated / total;
  const double sigma = std::sqrt(p * (1.0 - p) / total);
  const bool mc = std::abs(rate - p) <= 3.0 * sigma;
  detail += fmt::format("random 6-partitions violate {:.4f} of CL vs 1/k = {:.4f} (3 sigma = {:.4f})", rate, p, 3 * sigma);
  return {pass && mc, detail};
}

Outcome criterion5() {
  const PlantedRuns& runs = planted_runs();
  bool pass = true;
  std::string detail;
  for (const auto& [plain, con] : kPairs) {
    const auto& u = runs.jaccard.at(key(plain, 0.0));
    const auto& c = runs.jaccard.at(key(con, 10.0));
    std::size_t wins = 0, losses = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      wins += c[i] > u[i];
      losses += c[i] < u[i];
    }
    const double mu = median(u), mc = median(c);
    const double p = sign_test_p(wins, wins + losses);
    const bool ok = mc >= mu && p < 0.05;
    pass &= ok;
    detail += fmt::format("{} {} JI {:.3f} -> {:.3f}, +{}/-{}/={} p={:.3f}; ", con, ok ? "ok" : "no", mu, mc, wins,
                          losses, u.size() - wins - losses, p);
  }
  detail.resize(detail.size() - 2);
  return {pass, detail};
}

Outcome criterion6() {
  const PlantedRuns& runs = planted_runs();
  bool pass = true;
  std::string detail;
  double worst = std::numeric_limits<double>::infinity();
  std::string worst_cell;
  for (const auto& [plain, con] : kPairs) {
    const double base = median(runs.f1.at(key(plain, 0.0)));
    for (double pct : {1.0, 5.0, 10.0}) {
      const double ratio = median(runs.f1.at(key(con, pct))) / base;
      pass &= ratio >= 0.9;
      if (ratio < worst) {
        worst = ratio;
        worst_cell = fmt::format("{} at {}%", con, pct);
      }
    }
    detail += fmt::format("{} F1 {:.3f} -> {:.3f}; ", con, base, median(runs.f1.at(key(con, 10.0))));
  }
  detail += fmt::format("lowest constrained/unconstrained median ratio {:.3f} ({}), bound 0.9", worst, worst_cell);
  return {pass, detail};
}

Outcome criterion7() {
  double worst = 0.0;
  std::size_t logs = 0;
  auto check = [&](const EventLog& log) {
    const GroupedEventLog g(log);
    const ClusteringSolution one(1, std::vector<std::size_t>(g.support(), 0), "all");
    worst = std::max(worst, std::abs(weighted_f1(one, g).value - unclustered_f1(g)));
    ++logs;
  };
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    SyntheticLogSpec spec;
    spec.k_true = 2 + seed % 5;
    spec.traces_per_cluster = 40;
    spec.seed = seed;
    check(generate_log(spec).log);
  }
  check(parse_csv(testing::data_dir() / "golden_log.csv", {}, "%Y-%m-%dT%H:%M:%S"));
  check(parse_csv(testing::data_dir() / "stats50.csv", {}, ""));
  return {worst <= 1e-12, fmt::format("{} logs, max |F1^WA(k=1) - F1(unclustered)| = {:.3g} (<= 1e-12)", logs, worst)};
}

/// A log with exactly `support` variants: the traces of the first `support`
/// variants of `s`, with their ground truth. Prefixes of one log keep the
/// variant length distribution fixed across sizes.
std::pair<EventLog, std::vector<std::size_t>> log_with_support(const SyntheticLog& s, std::size_t support) {
  const GroupedEventLog g(s.log);
  if (g.support() < support) throw std::runtime_error("planted log too small");
  std::vector<Trace> traces;
  std::vector<std::size_t> labels;
  for (std::size_t t = 0; t < s.log.size(); ++t) {
    if (g.variant_of_trace(t) < support) {
      traces.push_back(s.log.traces()[t]);
      labels.push_back(s.trace_cluster[t]);
    }
  }
  return {EventLog(std::move(traces)), labels};
}

double min_time(int repetitions, const std::function<void()>& f) {
  double best = std::numeric_limits<double>::infinity();
  for (int r = 0; r < repetitions; ++r) {
    const auto start = Clock::now();
    f();
    best = std::min(best, seconds_since(start));
  }
  return best;
}

Outcome criterion8() {
  const auto start = Clock::now();
  SyntheticLogSpec spec;
  spec.k_true = 4;
  spec.traces_per_cluster = 600;
  spec.seed = 8;
  const SyntheticLog planted = generate_log(spec);
  std::map<std::size_t, double> condritrac_t, matrix_t;
  for (std::size_t n : {100, 200, 400, 800, 1600}) {
    const auto [log, labels] = log_with_support(planted, n);
    const GroupedEventLog g(log);
    if (n <= 400) {
      const ConstraintSet cs = generate_constraints(g, ground_truth(g, labels), 0.05, 8);
      CondritracConfig c;
      c.k = 4;
      c.seed = 8;
      condritrac_t[n] = min_time(3, [&] { condritrac(g, cs, c); });
    }
    if (n >= 400) matrix_t[n] = min_time(3, [&] { distance_matrix(g, SimilarityMethod::ged()); });
  }
  const double c = 1.5 * condritrac_t[100] / std::pow(100.0, 2.5);
  bool pass = true;
  std::string detail = "ConDriTraC";
  for (const auto& [n, t] : condritrac_t) {
    const double bound = c * std::pow(static_cast<double>(n), 2.5);
    pass &= t <= bound;
    detail += fmt::format(" n={} {:.3f}s (bound {:.3f}s)", n, t, bound);
  }
  detail += "; GED matrix ratios";
  for (std::size_t n : {400, 800}) {
    const double ratio = matrix_t[2 * n] / matrix_t[n];
    pass &= ratio >= 3.0 && ratio <= 6.0;
    detail += fmt::format(" t({})/t({}) = {:.2f}", 2 * n, n, ratio);
  }
  const double elapsed = seconds_since(start);
  pass &= elapsed < 600.0;
  detail += fmt::format(" (band [3, 6]); {:.1f} s (< 600)", elapsed);
  return {pass, detail};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome criterion9() {
  const fs::path root = fs::temp_directory_path() / fmt::format("tracecluster_acceptance_{}", ::getpid());
  fs::create_directories(root);
  SyntheticLogSpec spec;
  spec.k_true = 4;
  spec.traces_per_cluster = 40;
  spec.seed = 9;
  cmd_synth(spec, root);
  GenConstraintsConfig gen;
  gen.log.path = root / "log.csv";
  gen.ground_truth = root / "truth.csv";
  gen.percentage = 10.0;
  gen.seed = 9;
  write_file(root / "constraints.tsv", cmd_gen_constraints(gen));

  std::size_t differing = 0, compared = 0;
  for (const char* method : {"GED", "kgram:3", "MRA", "condritrac"}) {
    std::optional<std::map<std::string, std::string>> reference;
    for (unsigned jobs : {1u, 4u}) {
      for (int run = 0; run < 3; ++run) {
        RunConfig cfg;
        cfg.log.path = root / "log.csv";
        cfg.constraints = root / "constraints.tsv";
        cfg.method = method;
        cfg.k = 4;
        cfg.seed = 9;
        cfg.jobs = jobs;
        cfg.output_dir = root / fmt::format("{}_{}_{}", method == std::string("kgram:3") ? "kgram3" : method, jobs, run);
        cmd_cluster(cfg);
        std::map<std::string, std::string> files;
        for (const char* f : {"solution.csv", "solution_variants.csv", "solution.json", "assignment_trace.json"}) {
          if (fs::exists(cfg.output_dir / f)) files[f] = slurp(cfg.output_dir / f);
        }
        if (!reference) {
          reference = files;
        } else {
          ++compared;
          differing += files != *reference;
        }
      }
    }
  }
  std::error_code ec;
  fs::remove_all(root, ec);
  return {differing == 0,
          fmt::format("4 methods x 3 runs x jobs {{1, 4}}: {} of {} repeat runs differ from the first", differing, compared)};
}

Outcome criterion10() {
  const EventLog log = parse_csv(testing::data_dir() / "golden_log.csv", {}, "%Y-%m-%dT%H:%M:%S");
  const GroupedEventLog g(log);
  const ConstraintSet cs = read_constraints(testing::data_dir() / "golden_constraints.tsv");
  CondritracConfig cfg;
  cfg.k = 3;
  cfg.cvt = 0.9;
  cfg.tvt = 0.75;
  cfg.discovery.dependency_threshold = 0.9;
  const CondritracResult r = condritrac(g, cs, cfg);
  const auto golden = nlohmann::json::parse(slurp(testing::data_dir() / "golden_trace.json"));
  const auto mismatches = testing::golden_mismatches(golden, nlohmann::json::parse(to_json(r.trace, cfg)));
  std::string detail = fmt::format("{}-variant fixture: {} mismatching fields", g.support(), mismatches.size());
  if (!mismatches.empty()) detail += " (first: " + mismatches.front() + ")";
  return {mismatches.empty(), detail};
}

}  // namespace

int main(int argc, char** argv) {
  spdlog::set_level(spdlog::level::warn);
  bool strict = false;
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--strict") == 0) {
      strict = true;
    } else if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--strict] [--only N]\n";
      return 2;
    }
  }

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"oracle equivalence", criterion1},
      {"ConDriTraC never violates a constraint", criterion2},
      {"constraint adjustment contract", criterion3},
      {"must-links are more informative", criterion4},
      {"constraints improve agreement with the truth", criterion5},
      {"quality is not degraded", criterion6},
      {"k = 1 equals the unclustered baseline", criterion7},
      {"scaling", criterion8},
      {"determinism", criterion9},
      {"golden assignment trace", criterion10},
  };

  int unexpected = 0, failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int number = static_cast<int>(i) + 1;
    if (only && only != number) continue;
    const auto start = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const bool gap = kKnownGaps.contains(number);
    std::cout << fmt::format("criterion {:>2} {} {}{}: {} [{:.1f} s]\n", number, o.pass ? "PASS" : "FAIL",
                             criteria[i].first, !o.pass && gap ? " (known gap)" : "", o.detail, seconds_since(start))
              << std::flush;
    if (!o.pass) {
      ++failed;
      unexpected += !gap;
    }
  }
  std::cout << fmt::format("{} failed, {} unexpected\n", failed, unexpected);
  return (strict ? failed : unexpected) > 0 ? 1 : 0;
}
