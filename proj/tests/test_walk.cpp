#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "adtrw/adtrw.hpp"
#include "support.hpp"

namespace adtrw {
namespace {

using testing::geometric;
using testing::sibuya;

TEST(SimpleWalk, Examples) {
  const auto g = simple_walk_dist(geometric(0.5, 2), 2);
  EXPECT_DOUBLE_EQ(g.at(-2), 0.25);
  EXPECT_DOUBLE_EQ(g.at(0), 0.5);
  EXPECT_DOUBLE_EQ(g.at(2), 0.25);
  const auto s = simple_walk_dist(sibuya(0.5, 2), 2);
  EXPECT_DOUBLE_EQ(s.at(-2), 0.375);
  EXPECT_DOUBLE_EQ(s.at(0), 0.375);
  EXPECT_DOUBLE_EQ(s.at(2), 0.25);
  const auto z = simple_walk_dist(sibuya(0.5, 2), 0);
  EXPECT_DOUBLE_EQ(z.at(0), 1.0);
  EXPECT_DOUBLE_EQ(z.total(), 1.0);
}

TEST(SimpleWalk, MatchesAgeChain) {
  for (const auto& d : {geometric(0.35, 30), sibuya(0.5, 30), testing::poisson(1.3, 30)}) {
    for (int t = 0; t <= 30; ++t) {
      const auto dist = simple_walk_dist(d, t);
      const auto chain = testing::age_chain_walk(d, t);
      for (int j = -t; j <= t; ++j) {
        EXPECT_NEAR(dist.at(j), chain[static_cast<std::size_t>(j + t)], 1e-13) << d.label() << " t=" << t;
      }
    }
  }
}

TEST(SimpleWalk, NormalizationAndParity) {
  const auto series = simple_walk_series(sibuya(0.4, 150), 150);
  for (const auto& dist : series) {
    EXPECT_NEAR(dist.total(), 1.0, 1e-10);
    for (int j = dist.lo(); j <= dist.hi(); ++j) {
      if ((j + dist.t) % 2 != 0) {
        EXPECT_EQ(dist.at(j), 0.0) << "t=" << dist.t << " j=" << j;
      }
    }
  }
}

TEST(SimpleWalk, CountingShift) {
  const auto d = testing::poisson(0.9, 40);
  for (int t = 0; t <= 40; ++t) {
    const auto p = simple_walk_dist(d, t);
    const auto q = counting_dist(d, t);
    for (int r = -t; r <= t; ++r) EXPECT_EQ(p.at(r), q.at(r + t));
  }
}

TEST(SimpleWalk, MeanIsBias) {
  for (const auto& d : {geometric(0.7, 100), sibuya(0.5, 100), testing::poisson(0.5, 100)}) {
    const auto ey = expected_position(d, 100);
    for (int t = 0; t <= 100; t += 5) EXPECT_NEAR(simple_walk_dist(d, t).mean(), ey[static_cast<std::size_t>(t)], 1e-10);
  }
}

TEST(SimpleWalk, SeriesMatchesSingleTimes) {
  const auto d = testing::poisson(2.0, 60);
  const auto series = simple_walk_series(d, 60);
  for (int t = 0; t <= 60; t += 3) {
    const auto single = simple_walk_dist(d, t);
    for (int j = -t; j <= t; ++j) EXPECT_DOUBLE_EQ(series[static_cast<std::size_t>(t)].at(j), single.at(j));
  }
}

TEST(ReturnProbability, Examples) {
  const auto d = geometric(0.5, 8);
  EXPECT_DOUBLE_EQ(return_probability(d, 0), 1.0);
  EXPECT_DOUBLE_EQ(return_probability(d, 2), 0.5);
  EXPECT_DOUBLE_EQ(return_probability(d, 7), 0.0);
}

TEST(SiteSeries, MatchesFullDistribution) {
  for (const auto& d : {geometric(0.6, 120), sibuya(0.3, 120)}) {
    const std::vector<int> sites{-7, -2, 0, 1, 5, 11};
    const auto rows = site_probability_series(d, sites, 120);
    const auto series = simple_walk_series(d, 120);
    for (std::size_t i = 0; i < sites.size(); ++i) {
      for (int t = 0; t <= 120; ++t) {
        EXPECT_NEAR(rows[i][static_cast<std::size_t>(t)], series[static_cast<std::size_t>(t)].at(sites[i]), 1e-15)
            << d.label() << " site " << sites[i] << " t=" << t;
      }
    }
  }
}

TEST(GeneralWalk, UnitJumpsReduceToSimple) {
  const auto d = sibuya(0.5, 25);
  const auto up = JumpDensity::unit(Direction::Positive);
  const auto down = JumpDensity::unit(Direction::Negative);
  for (int t : {0, 1, 7, 25}) {
    const auto general = general_walk_dist(d, up, down, t, reachable_window(up, down, t));
    const auto simple = simple_walk_dist(d, t);
    EXPECT_LT(total_variation(general, simple), 1e-14);
  }
}

TEST(GeneralWalk, TrivialGeneratorIsJumpConvolution) {
  const auto d = make_density(spec::Trivial{}, 3);
  const auto up = JumpDensity::make(Direction::Positive, {0.2, 0.5, 0.3});
  const auto down = JumpDensity::make(Direction::Negative, {0.6, 0.4});
  const auto dist = general_walk_dist(d, up, down, 3, reachable_window(up, down, 3));
  // direct threefold convolution of W+
  std::vector<double> conv(10, 0.0);
  for (int a = 1; a <= 3; ++a) {
    for (int b = 1; b <= 3; ++b) {
      for (int c = 1; c <= 3; ++c) conv[static_cast<std::size_t>(a + b + c)] += up.probs[a - 1] * up.probs[b - 1] * up.probs[c - 1];
    }
  }
  for (int j = dist.lo(); j <= dist.hi(); ++j) {
    const double expect = (j >= 0 && j < 10) ? conv[static_cast<std::size_t>(j)] : 0.0;
    EXPECT_NEAR(dist.at(j), expect, 1e-15) << "j=" << j;
  }
}

TEST(GeneralWalk, NormalizedAndWindowChecked) {
  const auto d = testing::poisson(0.6, 30);
  const auto up = JumpDensity::make(Direction::Positive, {0.5, 0.0, 0.5});
  const auto down = JumpDensity::make(Direction::Negative, {0.25, 0.75});
  const auto window = reachable_window(up, down, 30);
  EXPECT_EQ(window.lo, -60);
  EXPECT_EQ(window.hi, 90);
  const auto dist = general_walk_dist(d, up, down, 30, window);
  EXPECT_NEAR(dist.total(), 1.0, 1e-10);
  EXPECT_THROW(general_walk_dist(d, up, down, 30, SiteWindow{-10, 10}), InvalidArgument);
  EXPECT_THROW(JumpDensity::make(Direction::Positive, {0.5, 0.4}), InvalidArgument);
}

TEST(RenewalResidual, ExactSeriesSatisfiesRenewalEquation) {
  for (const auto& d : {geometric(0.6, 200), testing::poisson(1.1, 200)}) {
    const auto series = simple_walk_series(d, 200);
    EXPECT_LT(renewal_residual(d, series), 1e-10) << d.label();
  }
  const auto s = sibuya(0.5, 256);
  EXPECT_LT(renewal_residual(s, simple_walk_series(s, 256)), 1e-10);
}

TEST(RenewalResidual, DetectsPerturbation) {
  const auto d = geometric(0.6, 40);
  auto series = simple_walk_series(d, 40);
  series[17].probs[5] += 1e-3;
  EXPECT_GE(renewal_residual(d, series), 1e-3 * (1.0 - 1e-12));
  EXPECT_EQ(renewal_residual(d, simple_walk_series(d, 0)), 0.0);
}

}  // namespace
}  // namespace adtrw
