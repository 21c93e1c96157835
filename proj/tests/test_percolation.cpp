#include <doctest.h>

#include <cmath>
#include <map>

#include "perqw/percolation.hpp"

using namespace perqw;

TEST_CASE("configuration enumeration") {
  CHECK(enumerate_configs(Topology::line(3)).size() == 4);
  CHECK(enumerate_configs(Topology::circle(4)).size() == 16);

  const auto two = enumerate_configs(Topology::line(2));
  REQUIRE(two.size() == 2);
  CHECK(two[0] == EdgeConfig::empty());
  CHECK(two[1] == EdgeConfig{0b1});

  CHECK_THROWS_AS(enumerate_configs(Topology::circle(25)), GuardError);
}

TEST_CASE("configuration probabilities") {
  const Topology t3 = Topology::line(3);
  const auto uniform = PercolationModel::uniform(t3, 0.5);
  for (auto k : enumerate_configs(t3)) CHECK(config_probability(uniform, t3, k) == doctest::Approx(0.25));

  const auto m = PercolationModel::per_edge({0.3, 0.6});
  CHECK(config_probability(m, t3, EdgeConfig{0b01}) == doctest::Approx((1 - 0.3) * 0.6));

  // probabilities over all configs sum to 1 for arbitrary models
  const Topology t5 = Topology::circle(5);
  const auto m5 = PercolationModel::per_edge({0.11, 0.42, 0.87, 0.5, 0.09});
  double total = 0;
  for (auto k : enumerate_configs(t5)) {
    const double p = config_probability(m5, t5, k);
    CHECK(p >= 0);
    total += p;
  }
  CHECK(std::abs(total - 1.0) < 1e-14);

  CHECK_THROWS_AS(config_probability(m5, t3, EdgeConfig::empty()), InvalidInput);
  CHECK_THROWS_AS(PercolationModel::uniform(t3, 0.0), InvalidInput);
  CHECK_THROWS_AS(PercolationModel::uniform(t3, 1.0), InvalidInput);
}

TEST_CASE("sampling is deterministic in (seed, step)") {
  const Topology t = Topology::line(4);
  const auto m = PercolationModel::uniform(t, 0.37);
  const auto s = derive_stream_seed(99, 3);
  for (int step = 0; step < 16; ++step) {
    CHECK(sample_config(m, s, step) == sample_config(m, s, step));
  }
  // different steps decorrelate (at least one differing config among 32 draws)
  bool any_diff = false;
  for (int step = 0; step < 32; ++step)
    if (!(sample_config(m, s, step) == sample_config(m, s, step + 1))) any_diff = true;
  CHECK(any_diff);
}

TEST_CASE("rare breaks: p -> 0 keeps edges present almost always") {
  const Topology t = Topology::line(5);
  const auto m = PercolationModel::uniform(t, 0.01);
  const auto s = derive_stream_seed(7, 0);
  std::vector<int> present(t.edge_count(), 0);
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) {
    const EdgeConfig k = sample_config(m, s, i);
    for (int e = 0; e < t.edge_count(); ++e)
      if (k.has(e)) present[e]++;
  }
  for (int e = 0; e < t.edge_count(); ++e) CHECK(present[e] >= 0.97 * draws);
}

TEST_CASE("empirical config frequencies match exact probabilities (chi-square, 3 sigma)") {
  const Topology t = Topology::line(3);
  const auto m = PercolationModel::uniform(t, 0.5);
  const auto configs = enumerate_configs(t);
  const int draws = 100000;
  std::map<std::uint32_t, int> counts;
  for (int i = 0; i < draws; ++i) counts[sample_config(m, derive_stream_seed(123, i), 0).bits]++;

  double chi2 = 0;
  for (auto k : configs) {
    const double expected = config_probability(m, t, k) * draws;
    const double diff = counts[k.bits] - expected;
    chi2 += diff * diff / expected;
  }
  // 3 configs of freedom: mean 3, variance 6; 3-sigma upper bound
  CHECK(chi2 < 3 + 3 * std::sqrt(6.0));
}
