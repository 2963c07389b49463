#include <gtest/gtest.h>

#include <cmath>
#include <algorithm>
#include <numbers>
#include <vector>

#include "adtrw/adtrw.hpp"
#include "support.hpp"

namespace adtrw {
namespace {

using testing::sibuya;

TEST(SibuyaState, ClosedFormMatchesConvolution) {
  for (double beta : {0.2, 0.5, 0.8}) {
    const auto table = state_table(sibuya(beta, 60), 60);
    for (int t = 0; t <= 60; ++t) {
      const auto exact = sibuya_state_exact({beta}, t);
      ASSERT_EQ(exact.size(), static_cast<std::size_t>(t) + 1);
      double sum = 0.0;
      for (int n = 0; n <= t; ++n) {
        EXPECT_NEAR(exact[static_cast<std::size_t>(n)], table(n, t), 1e-8) << "beta=" << beta << " t=" << t;
        sum += exact[static_cast<std::size_t>(n)];
      }
      EXPECT_NEAR(sum, 1.0, 1e-8);
    }
  }
}

TEST(SibuyaState, CapIsEnforced) {
  EXPECT_THROW(sibuya_state_exact({0.5}, 61), EnvelopeError);
  EXPECT_NO_THROW(sibuya_state_exact({0.5}, 80, 80));
  EXPECT_THROW(sibuya_state_exact({1.5}, 4), InvalidArgument);
}

TEST(SibuyaState, MarkovLimit) {
  const auto exact = sibuya_state_exact({1.0}, 12);
  for (int n = 0; n < 12; ++n) EXPECT_NEAR(exact[static_cast<std::size_t>(n)], 0.0, 1e-12);
  EXPECT_NEAR(exact[12], 1.0, 1e-12);
}

TEST(BinomShifted, Values) {
  EXPECT_DOUBLE_EQ(binom_shifted(0, 0.3), 1.0);
  EXPECT_NEAR(binom_shifted(2, -0.5), 1.875, 1e-15);  // binom(2.5, 2)
  EXPECT_NEAR(binom_shifted(3, 2.0), 0.0, 1e-15);
  for (int t : {65, 100, 500}) {
    double direct = 1.0;
    for (int j = 1; j <= t; ++j) direct *= (j - 0.3) / j;
    EXPECT_NEAR(binom_shifted(t, 0.3) / direct, 1.0, 1e-12) << "t=" << t;
    double with_pole = 1.0;
    for (int j = 1; j <= t; ++j) with_pole *= (j - 3.0) / j;
    EXPECT_EQ(binom_shifted(t, 3.0), with_pole);
  }
}

TEST(SibuyaMeanArrivals, ExamplesAndLimits) {
  EXPECT_NEAR(sibuya_mean_arrivals({0.5}, 2), 0.875, 1e-15);
  for (int t : {0, 1, 10, 1000}) EXPECT_NEAR(sibuya_mean_arrivals({1.0}, t), t, 1e-9 * std::max(1, t));
  const auto en = expected_arrivals(state_table(sibuya(0.3, 200), 200));
  for (int t = 0; t <= 200; t += 10) EXPECT_NEAR(sibuya_mean_arrivals({0.3}, t), en[static_cast<std::size_t>(t)], 1e-10);
}

TEST(SibuyaMeanArrivals, Asymptotics) {
  // E N(t) + 1 ~ t^beta / Gamma(1 + beta)
  for (double beta : {0.3, 0.5, 0.8}) {
    const double t = 1e6;
    const double ratio = (sibuya_mean_arrivals({beta}, 1000000) + 1.0) / (std::pow(t, beta) / std::tgamma(1.0 + beta));
    EXPECT_NEAR(ratio, 1.0, 0.01) << "beta=" << beta;
  }
}

TEST(SibuyaExpectedPosition, Identity) {
  EXPECT_NEAR(sibuya_expected_position({0.5}, 2), -0.25, 1e-12);
  for (double beta : {0.1, 0.5, 0.9}) {
    for (int t : {0, 1, 7, 64, 5000}) {
      EXPECT_EQ(sibuya_expected_position({beta}, t), 2.0 * sibuya_mean_arrivals({beta}, t) - t);
    }
  }
}

TEST(SibuyaReturnProb, Values) {
  EXPECT_DOUBLE_EQ(sibuya_return_prob({0.5}, 0), 1.0);
  EXPECT_EQ(sibuya_return_prob({0.5}, 3), 0.0);
  EXPECT_NEAR(sibuya_return_prob({0.5}, 2), 0.375, 1e-14);
  for (int t = 2; t <= 60; t += 2) {
    EXPECT_NEAR(sibuya_return_prob({0.5}, t), sibuya_state_exact({0.5}, t)[static_cast<std::size_t>(t / 2)], 1e-14);
  }
  const auto series = sibuya_return_series({0.5}, 200);
  for (int t = 0; t <= 200; t += 2) EXPECT_NEAR(sibuya_return_prob({0.5}, t), series[static_cast<std::size_t>(t)], 1e-8);
}

TEST(SibuyaEst, IntegrandSingularity) {
  // The relative correction to the leading term decays like phi^min(beta, 1 - beta).
  for (double beta : {0.3, 0.5, 0.7}) {
    const double rate = std::pow(100.0, -std::min(beta, 1.0 - beta));
    double prev = std::abs(sibuya_est_integrand(beta, 1e-6) / sibuya_est_singular_part(beta, 1e-6) - 1.0);
    for (double phi : {1e-8, 1e-10, 1e-12}) {
      const double gap = std::abs(sibuya_est_integrand(beta, phi) / sibuya_est_singular_part(beta, phi) - 1.0);
      EXPECT_LT(gap, prev) << "beta=" << beta << " phi=" << phi;
      EXPECT_NEAR(gap / prev, rate, 0.1 * rate) << "beta=" << beta << " phi=" << phi;
      prev = gap;
    }
    EXPECT_LT(prev, 1e-3);
  }
}

TEST(SibuyaEst, FiniteAndMatchesTruncatedSum) {
  const double est = sibuya_est_origin({0.5});
  EXPECT_TRUE(std::isfinite(est));
  EXPECT_GT(est, 1.0);
  const auto series = sibuya_return_series({0.5}, 4096);
  double sum = 0.0;
  for (double p : series) sum += p;
  EXPECT_LT(std::abs(est - sum), 0.01);
}

TEST(SibuyaEst, IndependentOfSplitPoint) {
  for (double beta : {0.3, 0.6}) {
    EXPECT_NEAR(sibuya_est_origin({beta}, 0.05), sibuya_est_origin({beta}, 0.5), 1e-9);
  }
  EXPECT_THROW(sibuya_est_origin({1.0}), InvalidArgument);
  EXPECT_THROW(sibuya_est_origin({0.5}, 0.0), InvalidArgument);
}

TEST(SibuyaFigure, StatePolynomialSlope) {
  // P(0.1, t) ~ t^(-beta) / ((1 - v) Gamma(1 - beta))
  const std::vector<double> betas{0.3, 0.5, 0.7};
  const auto rows = sibuya_figure(SibuyaFigure::StatePolynomial, betas, 4096);
  for (double beta : betas) {
    double at256 = 0.0;
    double at2048 = 0.0;
    double at4096 = 0.0;
    for (const auto& r : rows) {
      if (r.beta != beta) continue;
      if (r.t == 256) at256 = r.value;
      if (r.t == 2048) at2048 = r.value;
      if (r.t == 4096) at4096 = r.value;
    }
    const double slope = std::log(at2048 / at256) / std::log(2048.0 / 256.0);
    EXPECT_NEAR(slope, -beta, 0.05) << "beta=" << beta;
    const double scale = std::pow(4096.0, -beta) / (0.9 * std::tgamma(1.0 - beta));
    EXPECT_NEAR(at4096 / scale, 1.0, 0.05) << "beta=" << beta;
  }
}

TEST(SibuyaFigure, StatePolynomialMatchesLambda) {
  const auto rows = sibuya_figure(SibuyaFigure::StatePolynomial, std::vector<double>{0.5}, 40);
  const auto lam = lambda_poly(sibuya(0.5, 40), 0.1, 1.0, 40);
  ASSERT_EQ(rows.size(), 41u);
  for (const auto& r : rows) EXPECT_NEAR(r.value, lam[static_cast<std::size_t>(r.t)].real(), 1e-14);
}

TEST(SibuyaFigure, ReturnProbabilityEvenOnly) {
  const auto rows = sibuya_figure(SibuyaFigure::ReturnProbability, std::vector<double>{0.4, 0.6}, 100);
  EXPECT_EQ(rows.size(), 2u * 51u);
  for (const auto& r : rows) {
    EXPECT_EQ(r.t % 2, 0);
    EXPECT_GE(r.value, 0.0);
    EXPECT_LE(r.value, 1.0);
  }
}

TEST(SibuyaFigure, ExpectedPositionBendsDown) {
  const auto rows = sibuya_figure(SibuyaFigure::ExpectedPosition, std::vector<double>{0.9}, 1000);
  ASSERT_EQ(rows.size(), 1001u);
  EXPECT_GT(rows[1].value, 0.0);
  double peak = 0.0;
  for (const auto& r : rows) peak = std::max(peak, r.value);
  EXPECT_GT(peak, rows[1].value);
  EXPECT_LT(rows.back().value, peak);
  EXPECT_LT(rows.back().value, rows[800].value);
  EXPECT_LT(sibuya_expected_position({0.9}, 100000), -1000.0);

  const auto half = sibuya_figure(SibuyaFigure::ExpectedPosition, std::vector<double>{0.5}, 2);
  EXPECT_NEAR(half[2].value, -0.25, 1e-12);
}

TEST(SibuyaFigure, RejectsMarkovBeta) {
  EXPECT_THROW(sibuya_figure(SibuyaFigure::ExpectedPosition, std::vector<double>{1.0}, 4), InvalidArgument);
}

}  // namespace
}  // namespace adtrw
