#pragma once

#include <span>
#include <vector>

namespace adtrw {

/// Sibuya trials: psi(k) = (-1)^(k-1) binom(beta, k). beta = 1 is the
/// Markovian limit where every trial succeeds.
struct SibuyaParams {
  double beta;

  /// Throws InvalidArgument unless beta is in (0, 1].
  void validate() const;
};

/// Largest t for which the alternating closed form is trusted.
constexpr int kSibuyaExactCap = 60;

/// binom(t - a, t) = prod_{j=1}^t (j - a)/j; log-Gamma with sign tracking for t > 64.
double binom_shifted(int t, double a);

/// P(N(t) = n), n = 0..t, from the alternating closed form. t <= cap.
std::vector<double> sibuya_state_exact(const SibuyaParams& p, int t, int cap = kSibuyaExactCap);

/// E N(t) = binom(beta + t, t) - 1.
double sibuya_mean_arrivals(const SibuyaParams& p, int t);

/// E Y_t = 2 E N(t) - t.
double sibuya_expected_position(const SibuyaParams& p, int t);

/// P(Y_t = 0): closed form up to the cap, convolution route beyond.
double sibuya_return_prob(const SibuyaParams& p, int t);

/// P(Y_t = 0) for t = 0..t_max via the convolution route.
std::vector<double> sibuya_return_series(const SibuyaParams& p, int t_max);

/// Real integrand of the origin EST integral over phi in (0, pi].
double sibuya_est_integrand(double beta, double phi);

/// Leading small-phi behaviour of the integrand, 2 phi^(-beta) cos(pi beta/2).
double sibuya_est_singular_part(double beta, double phi);

/// Origin EST by quadrature with the phi^(-beta) singularity on [0, delta]
/// removed analytically, plus the 1/2 left by the point mass at phi = 0 in the
/// u -> 1- limit. beta in (0, 1).
double sibuya_est_origin(const SibuyaParams& p, double delta = 0.1);

enum class SibuyaFigure { StatePolynomial = 1, ReturnProbability = 2, ExpectedPosition = 3 };

struct FigureRow {
  double beta;
  int t;
  double value;
};

/// State polynomial at v = 0.1, return probability (even t only) or expected
/// position, for each beta and t = 0..t_max.
std::vector<FigureRow> sibuya_figure(SibuyaFigure fig, std::span<const double> betas, int t_max);

}  // namespace adtrw
