#include "adtrw/mittag_leffler.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <numbers>
#include <string>

#include "adtrw/error.hpp"
#include "bigfloat.hpp"

namespace adtrw {
namespace {

void check_mu(double mu) {
  if (!(mu > 0.0 && mu <= 1.0)) throw InvalidArgument("mittag_leffler: mu must lie in (0,1], got " + std::to_string(mu));
}

struct SeriesPlan {
  mpfr_prec_t bits;
  int k_last;
};

// Terms grow to max_k |z|^k / Gamma(mu k + 1) before decaying; the working
// precision must absorb that growth on top of the 53 bits we keep.
SeriesPlan plan_series(double mu, double z) {
  const double log_abs_z = std::log(std::abs(z));
  constexpr double kLogFloor = -50.0 * std::numbers::ln10;
  double log_max = 0.0;
  double prev = 0.0;
  int k_last = 0;
  for (int k = 1;; ++k) {
    const double lt = k * log_abs_z - std::lgamma(mu * k + 1.0);
    log_max = std::max(log_max, lt);
    if (lt < prev && lt < kLogFloor) {
      k_last = k;
      break;
    }
    prev = lt;
  }
  return {static_cast<mpfr_prec_t>(96 + std::ceil(log_max / std::numbers::ln2)), k_last};
}

}  // namespace

double mittag_leffler_series(double mu, double z) {
  check_mu(mu);
  if (z == 0.0) return 1.0;
  const auto [bits, k_last] = plan_series(mu, z);
  detail::BigFloat sum(bits, 1.0);
  detail::BigFloat zpow(bits, 1.0);
  detail::BigFloat zz(bits, z);
  detail::BigFloat arg(bits);
  detail::BigFloat term(bits);
  for (int k = 1; k <= k_last; ++k) {
    mpfr_mul(zpow.get(), zpow.get(), zz.get(), MPFR_RNDN);
    mpfr_set_d(arg.get(), mu, MPFR_RNDN);
    mpfr_mul_ui(arg.get(), arg.get(), static_cast<unsigned long>(k), MPFR_RNDN);
    mpfr_add_ui(arg.get(), arg.get(), 1, MPFR_RNDN);
    mpfr_gamma(term.get(), arg.get(), MPFR_RNDN);
    mpfr_div(term.get(), zpow.get(), term.get(), MPFR_RNDN);
    mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDN);
  }
  return sum.to_double();
}

double mittag_leffler_integral(double mu, double x) {
  if (!(mu > 0.0 && mu < 1.0)) throw InvalidArgument("mittag_leffler_integral: mu must lie in (0,1)");
  if (!(x > 0.0)) throw InvalidArgument("mittag_leffler_integral: x must be > 0");
  const double pi = std::numbers::pi;
  const double sin_mu = std::sin(mu * pi);
  const double cos_mu = std::cos(mu * pi);
  const double c = std::pow(x, 1.0 / mu);
  auto integrand = [=](double s) {
    if (s <= 0.0) return 0.0;
    const double sm = std::pow(s, mu);
    const double den = (sm + cos_mu) * (sm + cos_mu) + sin_mu * sin_mu;
    return std::exp(-s * c) * sin_mu * sm / (s * den) / pi;
  };
  constexpr double kTol = 1e-14;
  boost::math::quadrature::tanh_sinh<double> ts;
  boost::math::quadrature::exp_sinh<double> es;
  // The kernel peaks near s = 1 for mu close to 1; the exponential factor
  // concentrates mass near s ~ 1/c for large x.
  double total = 0.0;
  const double knee = 1.0 / c;
  if (knee < 1.0) {
    total += ts.integrate(integrand, 0.0, knee, kTol);
    total += ts.integrate(integrand, knee, 1.0, kTol);
  } else {
    total += ts.integrate(integrand, 0.0, 1.0, kTol);
  }
  total += es.integrate([&](double u) { return integrand(1.0 + u); }, kTol);
  return total;
}

double mittag_leffler(double mu, double z) {
  check_mu(mu);
  if (!(z <= 0.0) || !std::isfinite(z)) throw InvalidArgument("mittag_leffler: z must be finite and <= 0");
  if (z == 0.0) return 1.0;
  if (mu == 1.0) return std::exp(z);
  if (-z <= kMittagLefflerSwitch && plan_series(mu, z).bits <= kMittagLefflerSeriesMaxBits) {
    return mittag_leffler_series(mu, z);
  }
  return mittag_leffler_integral(mu, -z);
}

}  // namespace adtrw
