#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "adtrw/density.hpp"

namespace adtrw {

enum class Verdict { Recurrent, Transient };
const char* to_string(Verdict v);

constexpr double kDefaultRecurrenceTol = 1e-9;
/// Largest z = 0 Taylor order used for sites left of the origin.
constexpr int kMaxResidueOrder = 12;

struct RunReport {
  double a1 = 0.0;          // +inf for fat tails
  double bias_b = 0.0;      // 2 - a1, -inf for fat tails
  Verdict verdict = Verdict::Transient;
  double est_origin = 0.0;  // +inf when recurrent
  double escape_prob = 0.0;
  double asym_slope = 0.0;
  std::optional<double> r_zero;
  double mass_deficit = 0.0;  // psi mass beyond the horizon
  std::string est_method;     // how est_origin was obtained
};

struct SiteEst {
  int site;
  double est_exact;    // NaN when no closed form applies
  double est_numeric;  // truncated sum up to t_max
};

struct RootInfo {
  double r;
  double g_prime;  // derivative of g(z) = sum psi(t) z^(t-1) at r
};

/// A1, or +inf for fat tails. Unknown tails are rejected.
double mean_wait(const WaitingTimeDensity& d);

/// Expected sojourn time on site n for a light-tailed density. Returns +inf
/// when |A1 - 2| < tol.
double est_lt(const WaitingTimeDensity& d, int n, double tol = kDefaultRecurrenceTol);

/// Root r in (0,1) of g(z) = z for A1 > 2.
RootInfo find_r_zero(const WaitingTimeDensity& d);

/// sum_{t <= t_max} P(Y_t = n).
double est_numeric(const WaitingTimeDensity& d, int n, int t_max);

/// Partial sums of P(Y_t = n) for t = 0..t_max.
std::vector<double> est_partial_sums(const WaitingTimeDensity& d, int n, int t_max);

struct EscapeReturn {
  double f00;     // probability of ever returning to the origin
  double f0n_pos; // probability of ever visiting a site n >= 1
};

/// Valid for light tails with 1 <= A1 <= 2.
EscapeReturn escape_and_return(const WaitingTimeDensity& d);

/// lim E Y_t / t = (2 - A1)/A1, and -1 for fat tails.
double asymptotic_slope(const WaitingTimeDensity& d);

/// Density whose simple walk has E Y_t = f(t); f[t-1] = f(t).
WaitingTimeDensity density_from_bias(std::span<const double> f);

/// E Y_t = 0 for t <= t_max and Lambda(a,b,t) = Lambda(b,a,t) on a fixed set of
/// sample points, both within 1e-10.
bool strict_unbiased_check(const WaitingTimeDensity& d, int t_max);

/// E Y_t = 2 E N(t) - t for t = 0..t_max.
std::vector<double> expected_position(const WaitingTimeDensity& d, int t_max);

struct AnalyzeOptions {
  std::vector<int> sites;
  int t_max = 2048;
  double recurrence_tol = kDefaultRecurrenceTol;
  /// Origin EST for fat tails when a better route than the truncated sum exists.
  std::optional<double> ft_est_origin;
  std::string ft_est_method;
};

struct Analysis {
  RunReport report;
  std::vector<SiteEst> sites;
};

Analysis analyze(const WaitingTimeDensity& d, const AnalyzeOptions& options);

}  // namespace adtrw
