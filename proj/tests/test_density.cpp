#include <gtest/gtest.h>

#include <cmath>
#include <variant>

#include "adtrw/adtrw.hpp"
#include "support.hpp"

namespace adtrw {
namespace {

using testing::geometric;
using testing::sibuya;

TEST(DensityParse, Grammar) {
  EXPECT_DOUBLE_EQ(std::get<spec::Geometric>(parse_density_spec("geometric:p=0.6")).p, 0.6);
  EXPECT_DOUBLE_EQ(std::get<spec::Sibuya>(parse_density_spec("sibuya:beta=0.5")).beta, 0.5);
  EXPECT_DOUBLE_EQ(std::get<spec::ShiftedPoisson>(parse_density_spec("poisson:lambda=1.5")).lambda, 1.5);
  EXPECT_TRUE(std::holds_alternative<spec::Trivial>(parse_density_spec("trivial")));
}

TEST(DensityParse, RejectsMalformed) {
  EXPECT_THROW(parse_density_spec("geometric"), InvalidArgument);
  EXPECT_THROW(parse_density_spec("geometric:q=0.5"), InvalidArgument);
  EXPECT_THROW(parse_density_spec("geometric:p=abc"), InvalidArgument);
  EXPECT_THROW(parse_density_spec("pareto:a=1"), InvalidArgument);
  EXPECT_THROW(parse_density_spec("file:/nonexistent/psi.txt"), InvalidArgument);
}

TEST(DensityParse, DescribeRoundTrips) {
  for (const char* text : {"geometric:p=0.6", "sibuya:beta=0.25", "poisson:lambda=1.5", "trivial"}) {
    EXPECT_EQ(describe(parse_density_spec(text)), text);
  }
}

TEST(DensityParse, FileColumn) {
  testing::TempDir dir;
  const auto path = dir.write("psi.txt", "# header\n0.5\n\n0.25  # inline\n0.25\n");
  const auto spec = parse_density_spec("file:" + path);
  const auto d = make_density(spec, 4);
  EXPECT_EQ(d.tail().kind, TailKind::Unknown);
  EXPECT_DOUBLE_EQ(d(1), 0.5);
  EXPECT_DOUBLE_EQ(d(2), 0.25);
  EXPECT_DOUBLE_EQ(d(3), 0.25);
  EXPECT_DOUBLE_EQ(d(4), 0.0);
  EXPECT_NEAR(d.mass_deficit(), 0.0, 1e-15);
}

TEST(Density, GeometricValues) {
  const auto d = geometric(0.5, 3);
  EXPECT_DOUBLE_EQ(d(1), 0.5);
  EXPECT_DOUBLE_EQ(d(2), 0.25);
  EXPECT_DOUBLE_EQ(d(3), 0.125);
  EXPECT_DOUBLE_EQ(*d.mean_wait(), 2.0);
  EXPECT_EQ(d.tail().kind, TailKind::LightTailed);
  const auto s = d.survival();
  EXPECT_DOUBLE_EQ(s[0], 1.0);
  EXPECT_DOUBLE_EQ(s[1], 0.5);
  EXPECT_DOUBLE_EQ(s[2], 0.25);
}

TEST(Density, TrivialValues) {
  const auto d = make_density(spec::Trivial{}, 2);
  EXPECT_DOUBLE_EQ(d(1), 1.0);
  EXPECT_DOUBLE_EQ(d(2), 0.0);
  EXPECT_DOUBLE_EQ(*d.mean_wait(), 1.0);
  EXPECT_DOUBLE_EQ(d.survival()[1], 0.0);
}

TEST(Density, SibuyaValues) {
  const auto d = sibuya(0.5, 3);
  EXPECT_DOUBLE_EQ(d(1), 0.5);
  EXPECT_DOUBLE_EQ(d(2), 0.125);
  EXPECT_DOUBLE_EQ(d(3), 0.0625);
  EXPECT_DOUBLE_EQ(d.survival()[2], 0.375);
  EXPECT_EQ(d.tail().kind, TailKind::FatTailed);
  EXPECT_FALSE(d.mean_wait().has_value());
}

TEST(Density, SibuyaSurvivalMatchesBinomialForm) {
  // S(k) = (-1)^k binom(beta - 1, k) = prod_{j=1}^k (1 - beta/j)
  const double beta = 0.3;
  const auto d = sibuya(beta, 200);
  double prod = 1.0;
  for (int k = 1; k <= 200; ++k) {
    prod *= 1.0 - beta / k;
    EXPECT_NEAR(d.survival()[static_cast<std::size_t>(k)], prod, 1e-15 * std::max(1.0, prod));
  }
}

TEST(Density, SurvivalIsOneMinusPartialSums) {
  for (const auto& d : {geometric(0.3, 100), sibuya(0.7, 100), testing::poisson(2.0, 100)}) {
    double partial = 0.0;
    for (int t = 1; t <= d.horizon(); ++t) {
      partial += d(t);
      EXPECT_NEAR(d.survival()[static_cast<std::size_t>(t)], 1.0 - partial, 1e-13) << d.label() << " t=" << t;
    }
  }
}

TEST(Density, PoissonShiftedMean) {
  const auto d = testing::poisson(1.5, 64);
  EXPECT_DOUBLE_EQ(*d.mean_wait(), 2.5);
  double mean = 0.0;
  for (int t = 1; t <= 64; ++t) mean += t * d(t);
  EXPECT_NEAR(mean, 2.5, 1e-12);
  EXPECT_NEAR(d(1), std::exp(-1.5), 1e-16);
}

TEST(Density, GeometricTailKeptExactBeyondUnderflow) {
  const auto d = geometric(0.9, 40);
  EXPECT_NEAR(d.mass_deficit() / std::pow(0.1, 40), 1.0, 1e-12);
}

TEST(Density, RejectsInvalid) {
  EXPECT_THROW(geometric(0.0, 4), InvalidArgument);
  EXPECT_THROW(geometric(1.2, 4), InvalidArgument);
  EXPECT_THROW(sibuya(1.5, 4), InvalidArgument);
  EXPECT_THROW(testing::poisson(-1.0, 4), InvalidArgument);
  EXPECT_THROW(geometric(0.5, 0), InvalidArgument);
  EXPECT_THROW(WaitingTimeDensity({0.7, 0.7}, TailClass::unknown(), std::nullopt, "x"), InvalidArgument);
  EXPECT_THROW(WaitingTimeDensity({-0.1, 0.5}, TailClass::unknown(), std::nullopt, "x"), InvalidArgument);
}

TEST(Density, WithTailKeepsValues) {
  const WaitingTimeDensity d({0.5, 0.5}, TailClass::unknown(), std::nullopt, "two");
  const auto e = d.with_tail(TailClass::light(), 1.5);
  EXPECT_EQ(e.tail().kind, TailKind::LightTailed);
  EXPECT_DOUBLE_EQ(*e.mean_wait(), 1.5);
  EXPECT_DOUBLE_EQ(e(2), 0.5);
  EXPECT_EQ(e.label(), "two");
}

}  // namespace
}  // namespace adtrw
