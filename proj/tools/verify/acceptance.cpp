#include "acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

#include "adtrw/adtrw.hpp"
#include "oracles.hpp"

namespace adtrw::acceptance {
namespace {

constexpr std::uint64_t kSeed = 20240607;

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> body;
};

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

Outcome bernoulli_est() {
  double worst = 0.0;
  for (double p : {0.55, 0.6, 0.7, 0.9, 0.3, 0.1}) {
    const auto d = make_density(spec::Geometric{p}, 512);
    const double est = est_lt(d, 0);
    worst = std::max(worst, std::abs(est - 1.0 / std::abs(2.0 * p - 1.0)));
  }
  return {worst < 1e-12, fmt("max |est - 1/|p-q|| = %.3g (tol 1e-12)", worst)};
}

Outcome residue_vs_sum() {
  const auto d = make_density(spec::Geometric{0.6}, 2048);
  const double sum = est_numeric(d, 0, 2048);
  const double gap = std::abs(sum - 5.0);
  return {gap < 1e-3, fmt("truncated sum %.12g, |sum - 5| = %.3g (tol 1e-3)", sum, gap)};
}

Outcome recurrent_divergence() {
  const auto d = make_density(spec::Geometric{0.5}, 2048);
  const auto sums = est_partial_sums(d, 0, 2048);
  bool monotone = true;
  for (std::size_t t = 1; t < sums.size(); ++t) {
    // odd times add nothing; even times add a strictly positive return probability
    if (t % 2 == 0 ? !(sums[t] > sums[t - 1]) : sums[t] != sums[t - 1]) monotone = false;
  }
  const double last = sums.back();
  return {monotone && last > 20.0, fmt("partial sum at t=2048 is %.6g (> 20), monotone=%s", last,
                                       monotone ? "yes" : "no")};
}

Outcome sibuya_exactness() {
  const double closed = sibuya_expected_position(SibuyaParams{0.5}, 2);
  const auto d = make_density(spec::Sibuya{0.5}, 2);
  const StateTable table = state_table(d, 2);
  double mean_n = 0.0;
  for (int n = 0; n <= 2; ++n) mean_n += n * table(n, 2);
  const double conv = 2.0 * mean_n - 2.0;
  const double e1 = std::abs(closed + 0.25);
  const double e2 = std::abs(closed - conv);
  return {e1 < 1e-12 && e2 < 1e-10,
          fmt("closed form %.17g, |+0.25| = %.3g (tol 1e-12); convolution gap %.3g (tol 1e-10)", closed, e1, e2)};
}

Outcome sibuya_transience() {
  const double quad = sibuya_est_origin(SibuyaParams{0.5});
  const auto series = sibuya_return_series(SibuyaParams{0.5}, 4096);
  double sum = 0.0;
  for (double p : series) sum += p;
  const double gap = std::abs(quad - sum);
  return {std::isfinite(quad) && gap < 0.01,
          fmt("quadrature %.12g, truncated sum %.12g, gap %.3g (tol 0.01)", quad, sum, gap)};
}

Outcome universal_scaling() {
  const double beta = 0.5;
  const int t = 4096;
  const auto d = make_density(spec::Sibuya{beta}, t);
  const StateTable table = state_table(d, t, 5);
  const double scale = std::tgamma(1.0 - beta) * std::pow(t, beta);
  std::string detail;
  bool ok = true;
  for (int n : {0, 1, 2, 5}) {
    const double v = table(n, t) * scale;
    ok = ok && v >= 0.95 && v <= 1.05;
    detail += fmt("n=%d: %.6f ", n, v);
  }
  return {ok, detail + "(band [0.95, 1.05])"};
}

Outcome bell_oracle() {
  double worst = 0.0;
  for (const DensitySpec& s : {DensitySpec{spec::Geometric{0.5}}, DensitySpec{spec::Sibuya{0.5}}}) {
    const auto d = make_density(s, 20);
    const BellTable table = incomplete_bell(d, 20);
    for (int r = 0; r <= 20; ++r) {
      for (int n = 0; n <= r; ++n) {
        worst = std::max(worst, std::abs(table(r, n) - oracle::partition_bell(d.probs(), r, n)));
      }
    }
  }
  return {worst < 1e-12, fmt("max |convolution - partition sum| = %.3g over r <= 20 (tol 1e-12)", worst)};
}

Outcome ml_identity() {
  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<std::pair<double, double>> ab(20);
  for (auto& [a, b] : ab) {
    a = unit(rng);
    b = unit(rng);
  }
  const double p = 0.6;
  const double q = 1.0 - p;
  const auto d = make_density(spec::Geometric{p}, 512);
  double worst = 0.0;
  for (double mu : {0.6, 0.8, 1.0}) {
    const MLParams clock{mu, 1.0};
    for (double t : {0.5, 1.0, 2.0, 5.0}) {
      for (const auto& [a, b] : ab) {
        const double series = pi_series(d, clock, a, b, t).value.real();
        const double closed = mittag_leffler(mu, -clock.xi0 * (1.0 - q * b - p * a) * std::pow(t, mu));
        worst = std::max(worst, std::abs(series - closed));
      }
    }
  }
  return {worst < 1e-6, fmt("max |Pi - E_mu| = %.3g over 240 grid points (tol 1e-6)", worst)};
}

Outcome ml_oracle() {
  const double e1 = std::abs(mittag_leffler(0.5, -1.0) - std::exp(1.0) * std::erfc(1.0));
  double e2 = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double z = -10.0 * i / 100.0;
    e2 = std::max(e2, std::abs(mittag_leffler(1.0, z) - std::exp(z)));
  }
  return {e1 < 1e-10 && e2 < 1e-12,
          fmt("|E_0.5(-1) - e erfc(1)| = %.3g (tol 1e-10); max |E_1(z) - e^z| = %.3g (tol 1e-12)", e1, e2)};
}

Outcome mc_agreement() {
  std::string detail;
  bool ok = true;
  const auto unit_up = JumpDensity::unit(Direction::Positive);
  const auto unit_down = JumpDensity::unit(Direction::Negative);
  for (const DensitySpec& s : {DensitySpec{spec::Geometric{0.5}}, DensitySpec{spec::Sibuya{0.5}}}) {
    const auto d = make_density(s, 64);
    const McEnsemble ens = mc_sample(d, unit_up, unit_down, 20, 1000000, kSeed, McOptions{{20}});
    const double tvd = total_variation(ens.histograms[0].normalized(), simple_walk_dist(d, 20));
    ok = ok && tvd < 0.005 && ens.truncated == 0;
    detail += fmt("%s TVD %.4g; ", d.label().c_str(), tvd);
  }
  return {ok, detail + "(tol 0.005, 1e6 samples, t=20)"};
}

Outcome escape_probability() {
  const auto d = make_density(spec::Geometric{0.6}, 2048);
  const McEnsemble ens = mc_sample(d, JumpDensity::unit(Direction::Positive), JumpDensity::unit(Direction::Negative),
                                   2048, 1000000, kSeed, McOptions{{}, false});
  const double f = ens.return_fraction();
  const double gap = std::abs(f - 0.8);
  return {gap < 0.003 && ens.truncated == 0,
          fmt("return frequency %.6f, |F - 0.8| = %.3g (tol 0.003), truncated %lld, psi tail %.3g", f, gap,
              static_cast<long long>(ens.truncated), d.mass_deficit())};
}

Outcome strict_unbiased() {
  const int t_max = 64;
  const bool sym = strict_unbiased_check(make_density(spec::Geometric{0.5}, t_max), t_max);
  const bool g6 = strict_unbiased_check(make_density(spec::Geometric{0.6}, t_max), t_max);
  const bool sib = strict_unbiased_check(make_density(spec::Sibuya{0.5}, t_max), t_max);
  const bool poi = strict_unbiased_check(make_density(spec::ShiftedPoisson{1.0}, t_max), t_max);
  return {sym && !g6 && !sib && !poi,
          fmt("geometric(0.5)=%d geometric(0.6)=%d sibuya(0.5)=%d poisson(1.0)=%d (want 1 0 0 0)", sym, g6, sib, poi)};
}

Outcome bias_inversion() {
  const int T = 128;
  const auto d = make_density(spec::Geometric{0.6}, T);
  const auto ey = expected_position(d, T);
  const WaitingTimeDensity back = density_from_bias(std::span<const double>(ey).subspan(1));
  double worst = 0.0;
  for (int t = 1; t <= T; ++t) worst = std::max(worst, std::abs(back(t) - 0.6 * std::pow(0.4, t - 1)));
  return {worst < 1e-10, fmt("max |psi_f(t) - 0.6*0.4^(t-1)| = %.3g over t <= 128 (tol 1e-10)", worst)};
}

Outcome asymptotic_slope_check() {
  std::string detail;
  bool ok = true;
  for (const DensitySpec& s : {DensitySpec{spec::Geometric{0.6}}, DensitySpec{spec::ShiftedPoisson{0.5}}}) {
    const auto d = make_density(s, 512);
    const double slope = expected_position(d, 512).back() / 512.0;
    const double gap = std::abs(slope - asymptotic_slope(d));
    ok = ok && gap < 0.01;
    detail += fmt("%s E[Y]/t %.6f vs %.6f; ", d.label().c_str(), slope, asymptotic_slope(d));
  }
  return {ok, detail + "(tol 0.01)"};
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "bernoulli-est", 1.0, bernoulli_est},
      {2, "residue-vs-sum", 5.0, residue_vs_sum},
      {3, "recurrent-divergence", 5.0, recurrent_divergence},
      {4, "sibuya-exactness", 0.0, sibuya_exactness},
      {5, "sibuya-transience", 10.0, sibuya_transience},
      {6, "fat-tail-scaling", 10.0, universal_scaling},
      {7, "bell-oracle", 5.0, bell_oracle},
      {8, "actrw-ml-identity", 10.0, ml_identity},
      {9, "ml-oracle", 0.0, ml_oracle},
      {10, "mc-agreement", 30.0, mc_agreement},
      {11, "escape-probability", 60.0, escape_probability},
      {12, "strict-unbiased", 0.0, strict_unbiased},
      {13, "bias-inversion", 0.0, bias_inversion},
      {14, "asymptotic-slope", 0.0, asymptotic_slope_check},
  };
  return all;
}

}  // namespace

std::vector<Result> run(const std::vector<int>& only) {
  std::vector<Result> out;
  for (const Criterion& c : criteria()) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    Result r{c.id, c.name, false, "", 0.0, c.limit_seconds};
    const auto start = std::chrono::steady_clock::now();
    try {
      const Outcome o = c.body();
      r.pass = o.pass;
      r.detail = o.detail;
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0.0 && r.seconds > c.limit_seconds) {
      r.pass = false;
      r.detail += fmt(" [runtime %.2f s over limit %.0f s]", r.seconds, c.limit_seconds);
    }
    out.push_back(std::move(r));
  }
  return out;
}

void print(std::ostream& os, const std::vector<Result>& results) {
  int passed = 0;
  for (const Result& r : results) {
    passed += r.pass ? 1 : 0;
    os << (r.pass ? "PASS " : "FAIL ") << fmt("%2d %-22s %8.3f s  ", r.id, r.name.c_str(), r.seconds) << r.detail
       << '\n';
  }
  os << passed << '/' << results.size() << " criteria passed\n";
}

bool all_passed(const std::vector<Result>& results) {
  return std::all_of(results.begin(), results.end(), [](const Result& r) { return r.pass; });
}

}  // namespace adtrw::acceptance
