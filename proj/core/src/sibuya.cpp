#include "adtrw/sibuya.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "adtrw/density.hpp"
#include "adtrw/error.hpp"
#include "adtrw/generator.hpp"
#include "adtrw/walk.hpp"
#include "bigfloat.hpp"

namespace adtrw {
namespace {

constexpr int kProductLimit = 64;
constexpr mpfr_prec_t kStateBits = 192;

double lgamma_signed(double x, int& sign) { return boost::math::lgamma(x, &sign); }

void check_t(int t) {
  if (t < 0) throw InvalidArgument("sibuya: t must be >= 0, got " + std::to_string(t));
}

}  // namespace

void SibuyaParams::validate() const {
  if (!(beta > 0.0 && beta <= 1.0)) throw InvalidArgument("sibuya: beta must lie in (0,1], got " + std::to_string(beta));
}

double binom_shifted(int t, double a) {
  // Positive integer a puts Gamma(1 - a) on a pole; the product stays exact there.
  const bool integer_pole = a >= 1.0 && a == std::floor(a);
  if (t <= kProductLimit || integer_pole) {
    double acc = 1.0;
    for (int j = 1; j <= t && acc != 0.0; ++j) acc *= (j - a) / j;
    return acc;
  }
  // Gamma(t - a + 1) / (Gamma(t + 1) Gamma(1 - a))
  int s1 = 1;
  int s2 = 1;
  const double l1 = lgamma_signed(t - a + 1.0, s1);
  const double l2 = lgamma_signed(1.0 - a, s2);
  return s1 * s2 * std::exp(l1 - std::lgamma(t + 1.0) - l2);
}

std::vector<double> sibuya_state_exact(const SibuyaParams& p, int t, int cap) {
  p.validate();
  check_t(t);
  if (t > cap) {
    throw EnvelopeError("sibuya_state_exact: t=" + std::to_string(t) + " beyond stability cap " + std::to_string(cap) +
                        "; use the convolution route");
  }
  // binom(n, l) reaches 1e17 at t = 60, so both the shifted binomials and the
  // alternating sum are carried in MPFR.
  std::vector<detail::BigFloat> shifted;
  shifted.reserve(static_cast<std::size_t>(t) + 1);
  detail::BigFloat a(kStateBits);
  detail::BigFloat factor(kStateBits);
  for (int l = 0; l <= t; ++l) {
    shifted.emplace_back(kStateBits, 1.0);
    mpfr_set_d(a.get(), p.beta, MPFR_RNDN);
    mpfr_mul_ui(a.get(), a.get(), static_cast<unsigned long>(l + 1), MPFR_RNDN);
    for (int j = 1; j <= t; ++j) {
      mpfr_ui_sub(factor.get(), static_cast<unsigned long>(j), a.get(), MPFR_RNDN);
      mpfr_div_ui(factor.get(), factor.get(), static_cast<unsigned long>(j), MPFR_RNDN);
      mpfr_mul(shifted.back().get(), shifted.back().get(), factor.get(), MPFR_RNDN);
    }
  }
  std::vector<double> out(static_cast<std::size_t>(t) + 1, 0.0);
  detail::BigFloat acc(kStateBits);
  detail::BigFloat term(kStateBits);
  detail::BigFloat binom(kStateBits);  // binom(n, l), exact at this precision
  for (int n = 0; n <= t; ++n) {
    mpfr_set_ui(acc.get(), 0, MPFR_RNDN);
    mpfr_set_ui(binom.get(), 1, MPFR_RNDN);
    for (int l = 0; l <= n; ++l) {
      mpfr_mul(term.get(), binom.get(), shifted[static_cast<std::size_t>(l)].get(), MPFR_RNDN);
      mpfr_mul_ui(binom.get(), binom.get(), static_cast<unsigned long>(n - l), MPFR_RNDN);
      mpfr_div_ui(binom.get(), binom.get(), static_cast<unsigned long>(l + 1), MPFR_RNDN);
      if (l % 2 == 0) {
        mpfr_add(acc.get(), acc.get(), term.get(), MPFR_RNDN);
      } else {
        mpfr_sub(acc.get(), acc.get(), term.get(), MPFR_RNDN);
      }
    }
    out[static_cast<std::size_t>(n)] = acc.to_double();
  }
  return out;
}

double sibuya_mean_arrivals(const SibuyaParams& p, int t) {
  p.validate();
  check_t(t);
  return binom_shifted(t, -p.beta) - 1.0;
}

double sibuya_expected_position(const SibuyaParams& p, int t) { return 2.0 * sibuya_mean_arrivals(p, t) - t; }

std::vector<double> sibuya_return_series(const SibuyaParams& p, int t_max) {
  p.validate();
  check_t(t_max);
  if (p.beta == 1.0) {
    std::vector<double> out(static_cast<std::size_t>(t_max) + 1, 0.0);
    out[0] = 1.0;
    return out;
  }
  const auto d = make_density(spec::Sibuya{p.beta}, std::max(1, t_max));
  const int site = 0;
  return site_probability_series(d, std::span<const int>(&site, 1), t_max)[0];
}

double sibuya_return_prob(const SibuyaParams& p, int t) {
  p.validate();
  check_t(t);
  if (t % 2 != 0) return 0.0;
  if (t <= kSibuyaExactCap) return sibuya_state_exact(p, t)[static_cast<std::size_t>(t / 2)];
  return sibuya_return_series(p, t).back();
}

double sibuya_est_integrand(double beta, double phi) {
  using C = std::complex<double>;
  // w = 1 - e^{i phi} = 2 sin(phi/2) e^{i(phi - pi)/2}; the integrand is
  // e^{2 i phi} / (w (1 - (1 + e^{i phi}) w^{1-beta})) and 1/w = (1 + i cot(phi/2))/2,
  // which keeps the large imaginary part of 1/w out of the real part.
  const double g = 1.0 - beta;
  const C w_pow = std::polar(std::pow(2.0 * std::sin(0.5 * phi), g), g * 0.5 * (phi - std::numbers::pi));
  const C a = std::polar(1.0, 2.0 * phi) / (1.0 - (1.0 + std::polar(1.0, phi)) * w_pow);
  return 0.5 * a.real() - 0.5 * a.imag() / std::tan(0.5 * phi);
}

double sibuya_est_singular_part(double beta, double phi) {
  return 2.0 * std::pow(phi, -beta) * std::cos(0.5 * std::numbers::pi * beta);
}

double sibuya_est_origin(const SibuyaParams& p, double delta) {
  if (!(p.beta > 0.0 && p.beta < 1.0)) {
    throw InvalidArgument("sibuya_est_origin: beta must lie in (0,1), got " + std::to_string(p.beta));
  }
  if (!(delta > 0.0 && delta < std::numbers::pi)) throw InvalidArgument("sibuya_est_origin: delta must lie in (0, pi)");
  const double beta = p.beta;
  boost::math::quadrature::tanh_sinh<double> ts;
  const double near = ts.integrate(
      [beta](double phi) { return sibuya_est_integrand(beta, phi) - sibuya_est_singular_part(beta, phi); }, 0.0, delta);
  const double singular = 2.0 * std::pow(delta, 1.0 - beta) * std::cos(0.5 * std::numbers::pi * beta) / (1.0 - beta);
  const double far = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      [beta](double phi) { return sibuya_est_integrand(beta, phi); }, delta, std::numbers::pi, 15, 1e-13);
  // The pointwise integrand is the u -> 1- limit of the diagonal generating
  // function away from phi = 0. Re 1/(1 - u e^{i phi}) also carries a Poisson
  // kernel that collapses onto phi = 0 and adds A(0)/2 = 1/2 to the EST.
  constexpr double kBoundaryMass = 0.5;
  return (near + singular + far) / std::numbers::pi + kBoundaryMass;
}

std::vector<FigureRow> sibuya_figure(SibuyaFigure fig, std::span<const double> betas, int t_max) {
  check_t(t_max);
  std::vector<FigureRow> rows;
  for (double beta : betas) {
    if (!(beta > 0.0 && beta < 1.0)) throw InvalidArgument("sibuya_figure: beta must lie in (0,1)");
    const SibuyaParams p{beta};
    switch (fig) {
      case SibuyaFigure::StatePolynomial: {
        const auto d = make_density(spec::Sibuya{beta}, std::max(1, t_max));
        const auto lam = lambda_poly(d, 0.1, 1.0, t_max);
        for (int t = 0; t <= t_max; ++t) rows.push_back({beta, t, lam[static_cast<std::size_t>(t)].real()});
        break;
      }
      case SibuyaFigure::ReturnProbability: {
        const auto series = sibuya_return_series(p, t_max);
        for (int t = 0; t <= t_max; t += 2) rows.push_back({beta, t, series[static_cast<std::size_t>(t)]});
        break;
      }
      case SibuyaFigure::ExpectedPosition:
        for (int t = 0; t <= t_max; ++t) rows.push_back({beta, t, sibuya_expected_position(p, t)});
        break;
    }
  }
  return rows;
}

}  // namespace adtrw
