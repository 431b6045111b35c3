#include "doctest.h"

#include "tracecluster/benchmark.hpp"
#include "tracecluster/config.hpp"
#include "tracecluster/error.hpp"

using namespace tracecluster;

TEST_CASE("keys, sections, quotes and comments") {
  const KeyValueConfig c = KeyValueConfig::parse(
      "# sweep\n"
      "k = 4\n"
      "name = \"a # not a comment\"  # a comment\n"
      "\n"
      "[synth]\n"
      "noise = 0.05\n"
      "path = 'x y'\n");
  CHECK(c.get_int("k") == 4);
  CHECK(c.get("name") == "a # not a comment");
  CHECK(c.get_double("synth.noise") == 0.05);
  CHECK(c.get("synth.path") == "x y");
  CHECK_FALSE(c.get("noise").has_value());
  CHECK(c.values().size() == 4);
}

TEST_CASE("typed lookups") {
  const KeyValueConfig c = KeyValueConfig::parse(
      "flag = yes\noff = False\nn = 12\nx = 1.5e-1\nbad = 1x\n"
      "seeds = [1, 2, 5..7]\nps = 1, 5, 10\nnames = [GED, \"3-gram\"]\nempty = []\n");
  CHECK(c.get_bool("flag") == true);
  CHECK(c.get_bool("off") == false);
  CHECK(c.get_double("x") == doctest::Approx(0.15));
  CHECK(c.get_int_list("seeds") == std::vector<std::int64_t>{1, 2, 5, 6, 7});
  CHECK(c.get_double_list("ps") == std::vector<double>{1, 5, 10});
  CHECK(c.get_list("names") == std::vector<std::string>{"GED", "3-gram"});
  CHECK(c.get_list("empty")->empty());
  CHECK_FALSE(c.get_int("missing").has_value());
  CHECK_THROWS_AS(c.get_int("bad"), Error);
  CHECK_THROWS_AS(c.get_double("bad"), Error);
  CHECK_THROWS_AS(c.get_bool("n"), Error);
  CHECK_THROWS_AS(c.get_int("x"), Error);
  CHECK_THROWS_AS(c.get_int_list("names"), Error);
}

TEST_CASE("malformed files") {
  CHECK_THROWS_AS(KeyValueConfig::parse("just words\n"), Error);
  CHECK_THROWS_AS(KeyValueConfig::parse("= 3\n"), Error);
  try {
    KeyValueConfig::parse("k = 1\n[a]\nk = 2\nk = 3\n");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kInvalidConfig);
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
    CHECK(std::string(e.what()).find("a.k") != std::string::npos);
  }
  const KeyValueConfig c = KeyValueConfig::parse("k = 1\ntypo = 2\n");
  CHECK_NOTHROW(c.reject_unknown({"k", "typo"}));
  CHECK_THROWS_WITH_AS(c.reject_unknown({"k"}), doctest::Contains("typo"), Error);
}

TEST_CASE("sweep configuration") {
  const SweepConfig defaults = SweepConfig::from_config(KeyValueConfig{});
  CHECK(defaults.techniques.size() == 4);
  CHECK(defaults.percentages == std::vector<double>{1, 5, 10});
  CHECK(defaults.cvt == 0.5);
  CHECK(defaults.tvt == 0.25);

  const SweepConfig c = SweepConfig::from_config(KeyValueConfig::parse(
      "techniques = [GED, kgram:2, condritrac]\npercentages = [5]\nks = 3..5\nseeds = 1..3\n"
      "cvt = 0.27\ntvt = 0.27\nseparate_unassignable = true\ndependency_threshold = 0.8\n"
      "scale_count = 100\njobs = 2\n[synth]\nk_true = 4\n"));
  REQUIRE(c.techniques.size() == 3);
  CHECK(c.techniques[1].name(true) == "Con2-gram");
  CHECK(c.ks == std::vector<std::size_t>{3, 4, 5});
  CHECK(c.seeds == std::vector<std::uint64_t>{1, 2, 3});
  CHECK(c.cvt == 0.27);
  CHECK(c.separate_unassignable);
  CHECK(c.discovery.dependency_threshold == 0.8);
  CHECK(c.adjust.scale_count == 100);
  CHECK(c.jobs == 2);

  CHECK_THROWS_AS(SweepConfig::from_config(KeyValueConfig::parse("percentage = 5\n")), Error);
  CHECK_THROWS_AS(SweepConfig::from_config(KeyValueConfig::parse("percentages = 0\n")), Error);
  CHECK_THROWS_AS(SweepConfig::from_config(KeyValueConfig::parse("percentages = 101\n")), Error);
  CHECK_THROWS_AS(SweepConfig::from_config(KeyValueConfig::parse("ks = -1\n")), Error);
  CHECK_THROWS_AS(SweepConfig::from_config(KeyValueConfig::parse("techniques = ward\n")), Error);
}

TEST_CASE("synthetic spec from the synth section") {
  const SyntheticLogSpec s = SyntheticLogSpec::from_config(
      KeyValueConfig::parse("[synth]\nk_true = 6\ntraces_per_cluster = 50\nnoise = 0\nseed = 9\n"));
  CHECK(s.k_true == 6);
  CHECK(s.traces_per_cluster == 50);
  CHECK(s.noise == 0.0);
  CHECK(s.seed == 9);
  CHECK(s.backbone_length == SyntheticLogSpec{}.backbone_length);
  CHECK_THROWS_AS(SyntheticLogSpec::from_config(KeyValueConfig::parse("synth.k_true = -2\n")), Error);
}
