#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>

#include "adtrw/adtrw.hpp"
#include "support.hpp"

namespace adtrw {
namespace {

using testing::geometric;
using testing::sibuya;

const JumpDensity kUp = JumpDensity::unit(Direction::Positive);
const JumpDensity kDown = JumpDensity::unit(Direction::Negative);

class ThreadEnv {
 public:
  explicit ThreadEnv(const char* value) {
    if (const char* old = std::getenv("ADTRW_THREADS")) saved_ = old;
    ::setenv("ADTRW_THREADS", value, 1);
  }
  ~ThreadEnv() {
    if (saved_.empty()) {
      ::unsetenv("ADTRW_THREADS");
    } else {
      ::setenv("ADTRW_THREADS", saved_.c_str(), 1);
    }
  }

 private:
  std::string saved_;
};

void expect_same(const McEnsemble& a, const McEnsemble& b) {
  ASSERT_EQ(a.histograms.size(), b.histograms.size());
  for (std::size_t i = 0; i < a.histograms.size(); ++i) {
    EXPECT_EQ(a.histograms[i].offset, b.histograms[i].offset);
    EXPECT_EQ(a.histograms[i].counts, b.histograms[i].counts);
  }
  EXPECT_EQ(a.first_return, b.first_return);
  EXPECT_EQ(a.position_sum, b.position_sum);
  EXPECT_EQ(a.live, b.live);
  EXPECT_EQ(a.not_returned, b.not_returned);
  EXPECT_EQ(a.truncated, b.truncated);
}

TEST(Sampling, ShardSizesCoverSamples) {
  for (std::int64_t n : {1LL, 63LL, 64LL, 1000LL, 1000003LL}) {
    std::int64_t total = 0;
    for (int s = 0; s < kShardCount; ++s) total += shard_size(n, s);
    EXPECT_EQ(total, n);
  }
}

TEST(Sampling, DiscreteSamplerInverseCdf) {
  const DiscreteSampler sampler({0.25, 0.5, 0.9});
  EXPECT_EQ(sampler(0.0), 1);
  EXPECT_EQ(sampler(0.2499), 1);
  EXPECT_EQ(sampler(0.25), 2);
  EXPECT_EQ(sampler(0.89), 3);
  EXPECT_EQ(sampler(0.9), DiscreteSampler::kBeyond);
  EXPECT_EQ(sampler(0.999999), DiscreteSampler::kBeyond);
}

TEST(Sampling, MittagLefflerVariateAtMuOneIsExponential) {
  for (double u : {0.1, 0.5, 0.93}) {
    for (double v : {0.2, 0.5, 0.77}) EXPECT_NEAR(mittag_leffler_variate(1.0, 2.0, u, v), -std::log(u) / 2.0, 1e-12);
  }
}

TEST(Sampling, MittagLefflerVariateSurvival) {
  // P(T > t) = E_mu(-xi0 t^mu)
  const double mu = 0.7;
  const double xi0 = 1.3;
  constexpr int kN = 200000;
  auto rng = shard_engine(99, 0);
  const std::vector<double> ts{0.2, 1.0, 3.0};
  std::vector<int> above(ts.size(), 0);
  for (int i = 0; i < kN; ++i) {
    const double u = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
    const double v = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
    const double x = mittag_leffler_variate(mu, xi0, u, v);
    for (std::size_t k = 0; k < ts.size(); ++k) above[k] += x > ts[k];
  }
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const double expect = mittag_leffler(mu, -xi0 * std::pow(ts[k], mu));
    const double sigma = std::sqrt(expect * (1.0 - expect) / kN);
    EXPECT_NEAR(static_cast<double>(above[k]) / kN, expect, 5.0 * sigma) << "t=" << ts[k];
  }
}

TEST(MonteCarlo, Deterministic) {
  const auto d = sibuya(0.5, 100);
  McOptions opt{{10, 100}};
  const auto a = mc_sample(d, kUp, kDown, 100, 20000, 42, opt);
  const auto b = mc_sample(d, kUp, kDown, 100, 20000, 42, opt);
  expect_same(a, b);
  const auto c = mc_sample(d, kUp, kDown, 100, 20000, 43, opt);
  EXPECT_NE(a.histograms[1].counts, c.histograms[1].counts);
}

TEST(MonteCarlo, ThreadCountIndependent) {
  const auto d = testing::poisson(0.8, 64);
  McOptions opt{{5, 64}};
  McEnsemble one;
  McEnsemble many;
  {
    ThreadEnv env("1");
    one = mc_sample(d, kUp, kDown, 64, 30000, 7, opt);
  }
  {
    ThreadEnv env("7");
    many = mc_sample(d, kUp, kDown, 64, 30000, 7, opt);
  }
  expect_same(one, many);
}

TEST(MonteCarlo, TrivialDensityStepsUp) {
  const auto d = make_density(spec::Trivial{}, 30);
  const auto ens = mc_sample(d, kUp, kDown, 30, 5000, 1, McOptions{{0, 12, 30}});
  EXPECT_EQ(ens.histograms[0].counts, std::vector<std::int64_t>{5000});
  EXPECT_DOUBLE_EQ(ens.histograms[1].normalized().at(12), 1.0);
  EXPECT_DOUBLE_EQ(ens.histograms[2].normalized().at(30), 1.0);
  EXPECT_EQ(ens.returned(), 0);
  EXPECT_EQ(ens.not_returned, 5000);
  for (int t = 0; t <= 30; ++t) EXPECT_DOUBLE_EQ(ens.mean_position(t), t);
}

TEST(MonteCarlo, HistogramMatchesExact) {
  for (const auto& d : {geometric(0.5, 20), sibuya(0.5, 20)}) {
    const auto ens = mc_sample(d, kUp, kDown, 20, 200000, 2024, McOptions{{20}});
    EXPECT_EQ(ens.truncated, 0);
    EXPECT_LT(total_variation(ens.histograms[0].normalized(), simple_walk_dist(d, 20)), 0.01) << d.label();
  }
}

TEST(MonteCarlo, GeneralJumpsMatchExact) {
  const auto d = testing::poisson(0.7, 15);
  const auto up = JumpDensity::make(Direction::Positive, {0.5, 0.3, 0.2});
  const auto down = JumpDensity::make(Direction::Negative, {0.7, 0.3});
  const auto ens = mc_sample(d, up, down, 15, 200000, 5, McOptions{{15}});
  const auto exact = general_walk_dist(d, up, down, 15, reachable_window(up, down, 15));
  EXPECT_LT(total_variation(ens.histograms[0].normalized(), exact), 0.015);
}

TEST(MonteCarlo, MeanPositionTracksBias) {
  const auto d = geometric(0.6, 200);
  const auto ens = mc_sample(d, kUp, kDown, 200, 100000, 3, McOptions{{}});
  const auto ey = expected_position(d, 200);
  for (int t : {10, 100, 200}) {
    // Var Y_t = 4 Var N(t) = 4 t p q
    const double sigma = std::sqrt(4.0 * t * 0.24 / 100000.0);
    EXPECT_NEAR(ens.mean_position(t), ey[static_cast<std::size_t>(t)], 5.0 * sigma);
  }
}

TEST(MonteCarlo, FirstReturnFrequency) {
  const auto d = geometric(0.6, 1024);
  const auto ens = mc_sample(d, kUp, kDown, 1024, 200000, 11, McOptions{{}, false});
  const double f00 = 0.8;
  const double sigma = std::sqrt(f00 * (1.0 - f00) / 200000.0);
  EXPECT_NEAR(ens.return_fraction(), f00, 3.0 * sigma + 1e-4);
  EXPECT_TRUE(ens.live.empty());
}

TEST(MonteCarlo, TruncationCounted) {
  // With a 4-step horizon the waiting time is unknown 0.9^4 of the time.
  const auto d = geometric(0.1, 4);
  const auto ens = mc_sample(d, kUp, kDown, 20, 10000, 9, McOptions{{20}});
  EXPECT_GT(ens.truncated, 5000);
  EXPECT_EQ(ens.histograms[0].total() + ens.truncated, 10000);
}

TEST(MonteCarlo, RejectsBadInput) {
  const auto d = geometric(0.5, 10);
  EXPECT_THROW(mc_sample(d, kUp, kDown, 10, 0, 1), InvalidArgument);
  EXPECT_THROW(mc_sample(d, kUp, kDown, 10, 10, 1, McOptions{{11}}), InvalidArgument);
}

}  // namespace
}  // namespace adtrw
