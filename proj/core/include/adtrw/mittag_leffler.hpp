#pragma once

namespace adtrw {

/// |z| at which mittag_leffler switches from the power series to the integral
/// representation.
constexpr double kMittagLefflerSwitch = 5.0;
/// Below the switch, small mu can still need thousands of bits (mu = 0.2 at
/// |z| = 5 needs ~4600); past this many mittag_leffler uses the integral instead.
constexpr long kMittagLefflerSeriesMaxBits = 512;

/// E_mu(z) for mu in (0, 1] and real z <= 0.
double mittag_leffler(double mu, double z);

/// Power series sum z^k / Gamma(mu k + 1), summed in extended precision.
double mittag_leffler_series(double mu, double z);

/// E_mu(-x) = int_0^inf exp(-s x^(1/mu)) K_mu(s) ds for x > 0, mu in (0, 1).
double mittag_leffler_integral(double mu, double x);

}  // namespace adtrw
