#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "adtrw/adtrw.hpp"
#include "support.hpp"

namespace adtrw {
namespace {

using C = std::complex<double>;
using testing::geometric;
using testing::sibuya;

double poisson_pmf(double lambda, int m) {
  return std::exp(-lambda + m * std::log(lambda) - std::lgamma(m + 1.0));
}

TEST(MittagLeffler, KnownValues) {
  for (double mu : {0.3, 0.7, 1.0}) EXPECT_DOUBLE_EQ(mittag_leffler(mu, 0.0), 1.0);
  for (double x : {0.5, 1.0, 4.0, 12.0}) EXPECT_NEAR(mittag_leffler(1.0, -x), std::exp(-x), 1e-14);
  EXPECT_NEAR(mittag_leffler(0.5, -1.0), 0.42758357615580705, 1e-14);
  // E_{1/2}(-x) = exp(x^2) erfc(x)
  for (double x : {0.3, 2.0, 4.9, 5.1, 8.0, 15.0}) {
    EXPECT_NEAR(mittag_leffler(0.5, -x), std::exp(x * x) * std::erfc(x), 1e-12) << "x=" << x;
  }
}

TEST(MittagLeffler, SeamAgreement) {
  for (double mu : {0.3, 0.5, 0.8, 0.95}) {
    const double x = kMittagLefflerSwitch;
    EXPECT_NEAR(mittag_leffler_series(mu, -x), mittag_leffler_integral(mu, x), 1e-10) << "mu=" << mu;
  }
  EXPECT_NEAR(mittag_leffler_series(0.2, -3.5), mittag_leffler_integral(0.2, 3.5), 1e-10);
}

TEST(MittagLeffler, SmallMuAvoidsWideSeries) {
  // mu = 0.2 at the switch would need ~4600 bits in the series
  EXPECT_EQ(mittag_leffler(0.2, -kMittagLefflerSwitch), mittag_leffler_integral(0.2, kMittagLefflerSwitch));
  EXPECT_EQ(mittag_leffler(0.2, -1.0), mittag_leffler_series(0.2, -1.0));
  EXPECT_NEAR(mittag_leffler(0.1, -4.0), mittag_leffler_integral(0.1, 4.0), 0.0);
}

TEST(MittagLeffler, CompletelyMonotone) {
  for (double mu : {0.4, 0.9}) {
    double prev = 1.0;
    for (double x = 0.25; x <= 30.0; x += 0.25) {
      const double v = mittag_leffler(mu, -x);
      EXPECT_GT(v, 0.0);
      EXPECT_LT(v, prev);
      prev = v;
    }
  }
}

TEST(MittagLeffler, RejectsBadInput) {
  EXPECT_THROW(mittag_leffler(1.2, -1.0), InvalidArgument);
  EXPECT_THROW(mittag_leffler(0.5, 1.0), InvalidArgument);
  EXPECT_THROW(mittag_leffler_integral(1.0, 1.0), InvalidArgument);
}

TEST(FracPoisson, MarkovClockIsPoisson) {
  for (double t : {0.5, 3.0, 12.0}) {
    const auto s = frac_poisson_states({1.0, 1.0}, t, 80);
    for (int m = 0; m <= 80; ++m) EXPECT_NEAR(s.probs[static_cast<std::size_t>(m)], poisson_pmf(t, m), 1e-12);
  }
}

TEST(FracPoisson, Basics) {
  const auto zero = frac_poisson_states({0.6, 1.0}, 0.0, 5);
  EXPECT_EQ(zero.probs[0], 1.0);
  for (int m = 1; m <= 5; ++m) EXPECT_EQ(zero.probs[static_cast<std::size_t>(m)], 0.0);
  const auto s = frac_poisson_states({0.8, 1.0}, 1.0, 0);
  EXPECT_NEAR(s.probs[0], mittag_leffler(0.8, -1.0), 1e-14);
}

TEST(FracPoisson, NormalizedAndDeficitShrinks) {
  const MLParams clock{0.7, 1.5};
  const auto s = frac_poisson_until(clock, 4.0, 1e-12);
  double sum = 0.0;
  for (double p : s.probs) {
    EXPECT_GE(p, 0.0);
    sum += p;
  }
  EXPECT_NEAR(sum, 1.0, 1e-12);
  EXPECT_LT(s.deficit, 1e-12);
  EXPECT_GT(frac_poisson_states(clock, 4.0, 4).deficit, frac_poisson_states(clock, 4.0, 16).deficit);
}

TEST(FracPoisson, MeanMatchesClosedForm) {
  // E M(t) = xi0 t^mu / Gamma(1 + mu)
  const MLParams clock{0.6, 1.0};
  const double t = 5.0;
  const auto s = frac_poisson_until(clock, t, 1e-14);
  double mean = 0.0;
  for (std::size_t m = 0; m < s.probs.size(); ++m) mean += static_cast<double>(m) * s.probs[m];
  EXPECT_NEAR(mean, std::pow(t, 0.6) / std::tgamma(1.6), 1e-10);
}

TEST(FracPoisson, Envelope) {
  EXPECT_THROW(frac_poisson_states({1.0, 1.0}, 21.0, 10), EnvelopeError);
  EXPECT_THROW(frac_poisson_states({0.5, 2.0}, 200.0, 10), EnvelopeError);
  EXPECT_THROW(frac_poisson_states({0.5, 1.0}, -1.0, 10), InvalidArgument);
  EXPECT_THROW(frac_poisson_states({0.0, 1.0}, 1.0, 10), InvalidArgument);
  EXPECT_THROW(frac_poisson_states({0.5, -1.0}, 1.0, 10), InvalidArgument);
}

TEST(Composed, SurvivalIsMittagLeffler) {
  // P(N[M(t)] = 0) = E (1-p)^M(t) = E_mu(-p xi0 t^mu)
  const double p = 0.4;
  const auto d = geometric(p, kMaxClockStates);
  for (double mu : {0.5, 0.8, 1.0}) {
    const MLParams clock{mu, 1.2};
    for (double t : {0.5, 2.0, 6.0}) {
      const auto c = composed_states(d, clock, t, 10);
      const double expect = mittag_leffler(mu, -p * clock.xi0 * std::pow(t, mu));
      EXPECT_NEAR(c.probs[0], expect, 1e-8) << "mu=" << mu << " t=" << t;
      if (mu == 1.0) {
        EXPECT_NEAR(c.probs[0], std::exp(-p * clock.xi0 * t), 1e-8);
      }
    }
  }
}

TEST(Composed, MassAndMonotonicity) {
  const auto d = sibuya(0.5, kMaxClockStates);
  const MLParams clock{0.7, 1.0};
  double prev_zero = 1.0;
  for (double t : {0.25, 1.0, 3.0, 8.0}) {
    const auto c = composed_states(d, clock, t, 400);
    double sum = 0.0;
    for (double v : c.probs) sum += v;
    EXPECT_NEAR(sum, 1.0, c.tail_bound + 1e-10);
    EXPECT_LE(c.probs[0], prev_zero);
    prev_zero = c.probs[0];
  }
  EXPECT_THROW(composed_states(sibuya(0.5, 8), clock, 3.0, 4), InvalidArgument);
}

TEST(PiSeries, GeometricIsMittagLeffler) {
  // Lambda(a,b,m) = (pa + qb)^m, so Pi = E_mu(-xi0 t^mu (1 - pa - qb))
  const double p = 0.3;
  const auto d = geometric(p, kMaxClockStates);
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    const double a = unit(rng);
    const double b = unit(rng);
    for (double mu : {0.6, 0.8, 1.0}) {
      for (double t : {0.5, 1.0, 2.0, 5.0}) {
        const MLParams clock{mu, 1.0};
        const auto pi = pi_series(d, clock, a, b, t);
        const double expect = mittag_leffler(mu, -std::pow(t, mu) * (1.0 - p * a - (1.0 - p) * b));
        EXPECT_LT(std::abs(pi.value - C(expect)), 1e-8 + pi.tail_bound) << "a=" << a << " b=" << b << " mu=" << mu;
      }
    }
  }
}

TEST(PiSeries, NormalizedAtOne) {
  const auto d = sibuya(0.4, kMaxClockStates);
  for (double t : {0.1, 1.0, 7.0}) {
    const auto pi = pi_series(d, {0.75, 1.0}, 1.0, 1.0, t);
    EXPECT_LT(std::abs(pi.value - 1.0), 1e-10);
  }
}

TEST(ActrwMc, MarkovClockCounts) {
  const auto d = geometric(0.5, kMaxClockStates);
  const auto up = JumpDensity::unit(Direction::Positive);
  const auto down = JumpDensity::unit(Direction::Negative);
  const auto ens = actrw_mc(d, {1.0, 1.0}, up, down, {1.0, 4.0}, 100000, 8);
  ASSERT_EQ(ens.clock.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    double tvd = 0.0;
    for (int m = 0; m <= 40; ++m) tvd += std::abs(ens.clock[i].probability(m) - poisson_pmf(ens.times[i], m));
    EXPECT_LT(0.5 * tvd, 0.01);
  }
  EXPECT_EQ(ens.truncated, 0);
}

TEST(ActrwMc, Repeatable) {
  const auto d = sibuya(0.5, kMaxClockStates);
  const auto up = JumpDensity::unit(Direction::Positive);
  const auto down = JumpDensity::unit(Direction::Negative);
  const auto a = actrw_mc(d, {0.7, 1.0}, up, down, {0.5, 2.0}, 5000, 77);
  const auto b = actrw_mc(d, {0.7, 1.0}, up, down, {0.5, 2.0}, 5000, 77);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(a.clock[i].counts, b.clock[i].counts);
    EXPECT_EQ(a.arrivals[i].counts, b.arrivals[i].counts);
    EXPECT_EQ(a.position[i].counts, b.position[i].counts);
  }
}

TEST(ActrwMc, GeneratingFunctionMatchesPi) {
  // E v^N[M(t)] = Pi(v, 1, t)
  const auto d = sibuya(0.5, kMaxClockStates);
  const MLParams clock{0.8, 1.0};
  const auto up = JumpDensity::unit(Direction::Positive);
  const auto down = JumpDensity::unit(Direction::Negative);
  const std::vector<double> times{0.5, 2.0, 6.0};
  const auto ens = actrw_mc(d, clock, up, down, times, 100000, 31);
  for (std::size_t i = 0; i < times.size(); ++i) {
    for (double v : {0.2, 0.6}) {
      const double exact = pi_series(d, clock, v, 1.0, times[i]).value.real();
      EXPECT_NEAR(ens.generating_function(i, v), exact, 0.005) << "t=" << times[i] << " v=" << v;
    }
  }
}

TEST(ActrwMc, RejectsBadInput) {
  const auto d = sibuya(0.5, 64);
  const auto up = JumpDensity::unit(Direction::Positive);
  const auto down = JumpDensity::unit(Direction::Negative);
  EXPECT_THROW(actrw_mc(d, {0.5, 1.0}, up, down, {1.0}, 0, 1), InvalidArgument);
  EXPECT_THROW(actrw_mc(d, {1.5, 1.0}, up, down, {1.0}, 10, 1), InvalidArgument);
}

}  // namespace
}  // namespace adtrw
