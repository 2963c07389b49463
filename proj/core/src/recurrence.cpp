#include "adtrw/recurrence.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "adtrw/error.hpp"
#include "adtrw/generator.hpp"
#include "adtrw/series.hpp"
#include "adtrw/walk.hpp"

namespace adtrw {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double light_tailed_a1(const WaitingTimeDensity& d, const char* op) {
  if (d.tail().kind != TailKind::LightTailed || !d.mean_wait()) {
    throw InvalidArgument(std::string(op) + ": needs a light-tailed density with known mean wait (got " +
                          to_string(d.tail().kind) + ")");
  }
  return *d.mean_wait();
}

// Taylor coefficient of z^order of S(z)/(z - g(z)) at z = 0.
double origin_residue(const WaitingTimeDensity& d, int order) {
  if (order > kMaxResidueOrder) {
    throw InvalidArgument("est_lt: site offset needs Taylor order " + std::to_string(order) + " above cap " +
                          std::to_string(kMaxResidueOrder));
  }
  if (!(d(1) > 0.0)) throw InvalidArgument("est_lt: sites left of the origin need psi(1) > 0");
  const std::size_t len = static_cast<std::size_t>(order) + 1;
  std::vector<double> num(len, 0.0);
  std::vector<double> den(len, 0.0);
  const auto s = d.survival();
  for (std::size_t k = 0; k < len && k < s.size(); ++k) num[k] = s[k];
  for (std::size_t k = 0; k < len; ++k) den[k] = -d(static_cast<int>(k) + 1);
  if (len > 1) den[1] += 1.0;
  return series_divide(num, den, len)[static_cast<std::size_t>(order)];
}

double g_of(const WaitingTimeDensity& d, double z) { return polyval(d.probs(), z); }

double g_prime(const WaitingTimeDensity& d, double z) {
  double acc = 0.0;
  for (int t = d.horizon(); t >= 2; --t) acc = acc * z + (t - 1) * d(t);
  return acc;
}

}  // namespace

const char* to_string(Verdict v) { return v == Verdict::Recurrent ? "recurrent" : "transient"; }

double mean_wait(const WaitingTimeDensity& d) {
  switch (d.tail().kind) {
    case TailKind::FatTailed: return kInf;
    case TailKind::LightTailed: return light_tailed_a1(d, "mean_wait");
    case TailKind::Unknown: break;
  }
  throw InvalidArgument("mean_wait: tail class unknown; assert light- or fat-tailed first");
}

RootInfo find_r_zero(const WaitingTimeDensity& d) {
  const double a1 = light_tailed_a1(d, "find_r_zero");
  if (!(a1 > 2.0)) throw InvalidArgument("find_r_zero: needs A1 > 2, got " + std::to_string(a1));
  if (!(d(1) > 0.0)) throw InvalidArgument("find_r_zero: needs psi(1) > 0");
  auto h = [&](double z) { return g_of(d, z) - z; };
  double lo = 0.0;
  double hi = 0.0;
  bool bracketed = false;
  for (double gap : {1e-12, 1e-9, 1e-6, 1e-3}) {
    hi = 1.0 - gap;
    if (h(hi) < 0.0) {
      bracketed = true;
      break;
    }
  }
  if (!bracketed) throw NumericalError("find_r_zero: g(z) - z does not change sign on (0,1)");
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) > 0.0 ? lo : hi) = mid;
  }
  const double r = 0.5 * (lo + hi);
  const double gp = g_prime(d, r);
  if (!(std::abs(h(r)) < 1e-12)) throw NumericalError("find_r_zero: residual at root above 1e-12");
  if (!(gp < 1.0)) throw NumericalError("find_r_zero: g'(r) >= 1");
  return RootInfo{r, gp};
}

double est_lt(const WaitingTimeDensity& d, int n, double tol) {
  const double a1 = light_tailed_a1(d, "est_lt");
  if (std::abs(a1 - 2.0) < tol) return kInf;
  double value;
  if (a1 < 2.0) {
    value = a1 / (2.0 - a1);
  } else {
    const RootInfo root = find_r_zero(d);
    value = std::pow(root.r, n) * polyval(d.survival(), root.r) / (1.0 - root.g_prime);
  }
  if (n < 0) value += origin_residue(d, -n - 1);
  return value;
}

std::vector<double> est_partial_sums(const WaitingTimeDensity& d, int n, int t_max) {
  const auto series = site_probability_series(d, std::span<const int>(&n, 1), t_max);
  std::vector<double> out(series[0].size());
  double acc = 0.0;
  for (std::size_t t = 0; t < out.size(); ++t) out[t] = acc += series[0][t];
  return out;
}

double est_numeric(const WaitingTimeDensity& d, int n, int t_max) { return est_partial_sums(d, n, t_max).back(); }

EscapeReturn escape_and_return(const WaitingTimeDensity& d) {
  const double a1 = light_tailed_a1(d, "escape_and_return");
  if (a1 > 2.0 + kDefaultRecurrenceTol) {
    throw InvalidArgument("escape_and_return: formula holds for 1 <= A1 <= 2, got A1=" + std::to_string(a1));
  }
  return EscapeReturn{std::min(1.0, 2.0 * (a1 - 1.0) / a1), 1.0};
}

double asymptotic_slope(const WaitingTimeDensity& d) {
  const double a1 = mean_wait(d);
  if (std::isinf(a1)) return -1.0;
  return (2.0 - a1) / a1;
}

WaitingTimeDensity density_from_bias(std::span<const double> f) {
  constexpr double kTol = 1e-12;
  const int T = static_cast<int>(f.size());
  if (T < 1) throw InvalidArgument("density_from_bias: need at least f(1)");
  std::vector<double> c(static_cast<std::size_t>(T) + 1, 0.0);
  for (int t = 1; t <= T; ++t) {
    const double ct = 0.5 * (f[static_cast<std::size_t>(t - 1)] + t);
    const std::string at = " at t=" + std::to_string(t);
    if (ct < -kTol) throw InvalidArgument("density_from_bias: E N(t) = (f(t)+t)/2 negative" + at);
    if (ct > t + kTol) throw InvalidArgument("density_from_bias: E N(t) exceeds t" + at);
    if (ct < c[static_cast<std::size_t>(t - 1)] - kTol) {
      throw InvalidArgument("density_from_bias: E N(t) decreasing" + at);
    }
    c[static_cast<std::size_t>(t)] = ct;
  }
  // u c(u) = (1-u)^2 C(u)
  std::vector<double> num(static_cast<std::size_t>(T) + 1, 0.0);
  for (int t = 1; t <= T; ++t) {
    const auto i = static_cast<std::size_t>(t);
    num[i] = c[i] - 2.0 * c[i - 1] + (t >= 2 ? c[i - 2] : 0.0);
  }
  std::vector<double> den = num;
  den[0] = 1.0;
  den[1] -= 1.0;
  const auto psi = series_divide(num, den, static_cast<std::size_t>(T) + 1);
  std::vector<double> probs(static_cast<std::size_t>(T));
  for (int t = 1; t <= T; ++t) {
    const double v = psi[static_cast<std::size_t>(t)];
    if (v < -kTol) {
      throw InvalidArgument("density_from_bias: psi_f(" + std::to_string(t) + ") = " + std::to_string(v) +
                            " is negative");
    }
    probs[static_cast<std::size_t>(t - 1)] = std::max(0.0, v);
  }
  return WaitingTimeDensity(std::move(probs), TailClass::unknown(), std::nullopt, "bias-inverted");
}

std::vector<double> expected_position(const WaitingTimeDensity& d, int t_max) {
  const auto u = renewal_density(d, t_max);
  std::vector<double> out(u.size());
  double en = 0.0;
  for (std::size_t t = 0; t < u.size(); ++t) {
    if (t > 0) en += u[t];
    out[t] = 2.0 * en - static_cast<double>(t);
  }
  return out;
}

bool strict_unbiased_check(const WaitingTimeDensity& d, int t_max) {
  constexpr double kTol = 1e-10;
  for (double y : expected_position(d, t_max)) {
    if (std::abs(y) > kTol) return false;
  }
  using C = std::complex<double>;
  const C pairs[][2] = {
      {C(0.3, 0.0), C(0.9, 0.0)},   {C(-0.5, 0.0), C(0.7, 0.0)},  {C(1.0, 0.0), C(0.0, 0.0)},
      {C(0.2, 0.4), C(-0.6, 0.1)},  {C(0.0, 1.0), C(0.8, -0.3)},  {std::polar(1.0, 0.7), std::polar(1.0, -0.7)},
      {std::polar(0.9, 2.1), C(0.1, 0.0)},
  };
  for (const auto& pr : pairs) {
    const auto ab = lambda_poly(d, pr[0], pr[1], t_max);
    const auto ba = lambda_poly(d, pr[1], pr[0], t_max);
    for (std::size_t t = 0; t < ab.size(); ++t) {
      if (std::abs(ab[t] - ba[t]) > kTol) return false;
    }
  }
  return true;
}

Analysis analyze(const WaitingTimeDensity& d, const AnalyzeOptions& options) {
  Analysis out;
  RunReport& rep = out.report;
  rep.mass_deficit = d.mass_deficit();
  rep.a1 = mean_wait(d);
  const bool fat = std::isinf(rep.a1);
  rep.bias_b = fat ? -kInf : 2.0 - rep.a1;
  rep.asym_slope = asymptotic_slope(d);
  bool recurrent = false;
  if (fat) {
    rep.verdict = Verdict::Transient;
    if (options.ft_est_origin) {
      rep.est_origin = *options.ft_est_origin;
      rep.est_method = options.ft_est_method;
    } else {
      rep.est_origin = est_numeric(d, 0, options.t_max);
      rep.est_method = "truncated sum";
    }
  } else if (std::abs(rep.a1 - 2.0) < options.recurrence_tol) {
    recurrent = true;
    rep.verdict = Verdict::Recurrent;
    rep.est_origin = kInf;
    rep.est_method = "recurrent";
  } else {
    rep.verdict = Verdict::Transient;
    if (rep.a1 > 2.0) rep.r_zero = find_r_zero(d).r;
    rep.est_origin = est_lt(d, 0, options.recurrence_tol);
    rep.est_method = rep.a1 < 2.0 ? "residue at z=1" : "residue at z=r";
  }
  rep.escape_prob = recurrent ? 0.0 : 1.0 / rep.est_origin;

  if (!options.sites.empty()) {
    const auto series = site_probability_series(d, options.sites, options.t_max);
    for (std::size_t i = 0; i < options.sites.size(); ++i) {
      const int n = options.sites[i];
      double exact = std::numeric_limits<double>::quiet_NaN();
      if (!fat) exact = recurrent ? kInf : est_lt(d, n, options.recurrence_tol);
      double sum = 0.0;
      for (double p : series[i]) sum += p;
      out.sites.push_back(SiteEst{n, exact, sum});
    }
  }
  return out;
}

}  // namespace adtrw
