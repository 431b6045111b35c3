#include "doctest.h"

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "support.hpp"
#include "tracecluster/benchmark.hpp"
#include "tracecluster/constrained_ahc.hpp"
#include "tracecluster/error.hpp"
#include "tracecluster/evaluation.hpp"

using namespace tracecluster;
using testing::log_from;
using testing::naive_ward;
using testing::random_matrix;

namespace {

VariantConstraintSet constraints_on(const GroupedEventLog& g, std::initializer_list<std::pair<int, int>> ml,
                                    std::initializer_list<std::pair<int, int>> cl) {
  ConstraintSet cs;
  for (auto [a, b] : ml) cs.add_must_link("t" + std::to_string(a), "t" + std::to_string(b));
  for (auto [a, b] : cl) cs.add_cannot_link("t" + std::to_string(a), "t" + std::to_string(b));
  return lift(cs, g);
}

}  // namespace

TEST_CASE("adjustment by hand") {
  const EventLog log = log_from({"a", "b", "c", "d"});
  const GroupedEventLog g(log);
  DistanceMatrix m(4);
  m.set(0, 1, 3.0);
  m.set(0, 2, 10.0);
  m.set(0, 3, 4.0);
  m.set(1, 2, 5.0);
  m.set(1, 3, 6.0);
  m.set(2, 3, 7.0);

  const DistanceMatrix same = adjust_matrix(m, VariantConstraintSet(4));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(same(i, j) == m(i, j));

  const DistanceMatrix a = adjust_matrix(m, constraints_on(g, {{2, 3}}, {{0, 1}}));
  CHECK(a(0, 1) == 20.0);
  CHECK(a(1, 0) == 20.0);
  CHECK(a(2, 3) == 0.0);
  CHECK(a(0, 2) == 10.0);
  CHECK(a.kind() == DistanceMatrix::Kind::kConstraintAdjusted);
  CHECK(a.raw_max() == 10.0);
  // adjusting twice uses the raw maximum, not the inflated one
  CHECK(adjust_matrix(a, constraints_on(g, {{2, 3}}, {{0, 1}})) == a);

  CHECK(adjust_matrix(m, constraints_on(g, {}, {{0, 1}}), AdjustOptions{10})(0, 1) == 50.0);
  CHECK_THROWS_AS(adjust_matrix(m, VariantConstraintSet(3)), Error);
}

TEST_CASE("property: adjustment touches exactly the constrained cells") {
  Rng rng(17);
  for (int round = 0; round < 100; ++round) {
    const std::size_t n = 4 + testing::uniform_index(rng, 12);
    std::vector<std::string> seqs;
    for (std::size_t i = 0; i < n; ++i) seqs.push_back(std::string(i + 1, 'a'));
    const EventLog log = log_from(seqs);
    const GroupedEventLog g(log);
    const auto label = testing::random_partition(rng, n, 3);
    ConstraintSet cs;
    for (int c = 0; c < 6; ++c) {
      const auto x = testing::uniform_index(rng, n), y = testing::uniform_index(rng, n);
      if (x == y) continue;
      if (label[x] == label[y]) {
        cs.add_must_link("t" + std::to_string(x), "t" + std::to_string(y));
      } else {
        cs.add_cannot_link("t" + std::to_string(x), "t" + std::to_string(y));
      }
    }
    const VariantConstraintSet vcs = lift(cs, g);
    const DistanceMatrix m = random_matrix(rng, n);
    const DistanceMatrix a = adjust_matrix(m, vcs);
    const double far = m.max() * static_cast<double>(n) / 2.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const IndexPair p = unordered_pair(i, j);
        if (i != j && vcs.must_link_pairs().contains(p)) {
          CHECK(a(i, j) == 0.0);
        } else if (vcs.cannot_link_pairs().contains(p)) {
          CHECK(a(i, j) == far);
        } else {
          CHECK(std::bit_cast<std::uint64_t>(a(i, j)) == std::bit_cast<std::uint64_t>(m(i, j)));
        }
      }
    }
  }
}

TEST_CASE("degenerate cuts") {
  Rng rng(4);
  const DistanceMatrix m = random_matrix(rng, 6);
  const WardResult all = ward_ahc(m, 6);
  CHECK(all.dendrogram.merges.empty());
  CHECK(all.solution.assignment() == std::vector<std::size_t>{0, 1, 2, 3, 4, 5});
  const WardResult one = ward_ahc(m, 1);
  CHECK(one.dendrogram.merges.size() == 5);
  CHECK(one.solution.assignment() == std::vector<std::size_t>(6, 0));
  CHECK_THROWS_AS(ward_ahc(m, 0), Error);
  CHECK_THROWS_AS(ward_ahc(m, 7), Error);
}

TEST_CASE("ties go to the lexicographically smallest pair") {
  DistanceMatrix m(4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) m.set(i, j, 1.0);
  const WardResult r = ward_ahc(m, 1);
  REQUIRE(r.dendrogram.merges.size() == 3);
  CHECK(r.dendrogram.merges[0] == Merge{0, 1, 0.5});
  CHECK(r.dendrogram.merges[1].left == 0);
  CHECK(r.dendrogram.merges[1].right == 2);
}

TEST_CASE("property: merge sequence matches the naive oracle") {
  Rng rng(123);
  for (int round = 0; round < 200; ++round) {
    const std::size_t n = 2 + testing::uniform_index(rng, 11);
    const DistanceMatrix m = random_matrix(rng, n);
    const std::size_t k = 1 + testing::uniform_index(rng, n);
    const auto expected = naive_ward(m, k);
    const WardResult r = ward_ahc(m, k);
    REQUIRE(r.dendrogram.merges.size() == expected.size());
    for (std::size_t s = 0; s < expected.size(); ++s) {
      CHECK(r.dendrogram.merges[s].left == expected[s].left);
      CHECK(r.dendrogram.merges[s].right == expected[s].right);
      CHECK(r.dendrogram.merges[s].height == doctest::Approx(expected[s].height).epsilon(1e-9));
    }
    CHECK(r.solution.k() == k);
  }
}

TEST_CASE("separable planar points reach the optimal two-cluster split") {
  const std::vector<std::pair<double, double>> pts{{0, 0}, {1, 0}, {0, 1.5}, {1.2, 1}, {9, 9}, {10, 8}, {8.5, 10}, {10, 10}};
  const std::size_t n = pts.size();
  DistanceMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) m.set(i, j, std::hypot(pts[i].first - pts[j].first, pts[i].second - pts[j].second));

  auto sse = [&](const std::vector<std::size_t>& members) {
    double cx = 0, cy = 0;
    for (auto i : members) cx += pts[i].first, cy += pts[i].second;
    cx /= static_cast<double>(members.size());
    cy /= static_cast<double>(members.size());
    double s = 0;
    for (auto i : members) s += (pts[i].first - cx) * (pts[i].first - cx) + (pts[i].second - cy) * (pts[i].second - cy);
    return s;
  };
  double best = std::numeric_limits<double>::infinity();
  unsigned best_mask = 0;
  for (unsigned mask = 1; mask < (1u << (n - 1)); ++mask) {
    std::vector<std::size_t> a{n - 1}, b;
    for (std::size_t i = 0; i + 1 < n; ++i) (mask >> i & 1 ? b : a).push_back(i);
    const double total = sse(a) + sse(b);
    if (total < best) best = total, best_mask = mask;
  }
  const WardResult r = ward_ahc(m, 2);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    CHECK((r.solution.cluster_of(i) != r.solution.cluster_of(n - 1)) == static_cast<bool>(best_mask >> i & 1));
  }
  // heights are SSE increases: they add up to the SSE of the whole set
  const WardResult full = ward_ahc(m, 1);
  double heights = 0;
  for (const Merge& merge : full.dendrogram.merges) heights += merge.height;
  std::vector<std::size_t> everyone(n);
  std::iota(everyone.begin(), everyone.end(), 0);
  CHECK(heights == doctest::Approx(sse(everyone)).epsilon(1e-9));
}

TEST_CASE("names") {
  CHECK(technique_name(SimilarityMethod::ged(), true) == "ConGED");
  CHECK(technique_name(SimilarityMethod::kgram(3), true) == "Con3-gram");
  CHECK(technique_name(SimilarityMethod::mra(), false) == "MRA");
}

TEST_CASE("empty constraints reproduce the unconstrained pipeline") {
  const EventLog log = log_from({"abc", "abd", "xyz", "xy", "abcd", "xyzz"});
  const GroupedEventLog g(log);
  const WardResult plain = ward_ahc(distance_matrix(g, SimilarityMethod::ged()), 2, "GED");
  const WardResult via = constrained_cluster(g, VariantConstraintSet(g.support()), 2);
  CHECK(via.solution.assignment() == plain.solution.assignment());
  CHECK(via.solution.method() == "GED");
  CHECK(constrained_cluster(g, constraints_on(g, {{0, 2}}, {}), 2).solution.method() == "ConGED");
}

TEST_CASE("must-links survive on planted two-cluster logs") {
  int clean = 0, better_or_equal = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    SyntheticLogSpec spec;
    spec.k_true = 2;
    spec.traces_per_cluster = 60;
    spec.seed = seed;
    const SyntheticLog synthetic = generate_log(spec);
    const GroupedEventLog g(synthetic.log);
    const ClusteringSolution truth = ground_truth(g, synthetic.trace_cluster);
    const ConstraintSet cs = generate_constraints(g, truth, 0.10, seed);
    const DistanceMatrix raw = distance_matrix(g, SimilarityMethod::ged());
    const WardResult con = constrained_cluster(raw, lift(cs, g), 2, SimilarityMethod::ged());
    const WardResult plain = ward_ahc(raw, 2);
    clean += violation_percentages(con.solution, g, cs).ml_violated == 0;
    better_or_equal += jaccard_index(con.solution, truth) >= jaccard_index(plain.solution, truth);
  }
  CHECK(clean >= 19);
  CHECK(better_or_equal > 10);
}
