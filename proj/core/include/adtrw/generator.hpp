#pragma once

#include <complex>
#include <vector>

#include "adtrw/density.hpp"

namespace adtrw {

/// Phi^(n)(t) = P(N(t) = n) for 0 <= t <= horizon and 0 <= n <= min(t, n_max).
/// Row n is stored for t = n..horizon only.
class StateTable {
 public:
  StateTable(int horizon, int n_max, std::vector<std::vector<double>> rows);

  int horizon() const { return horizon_; }
  int n_max() const { return n_max_; }

  /// Zero for n > t. Throws for n > n_max().
  double operator()(int n, int t) const;

  /// Phi^(n)(t) for n = 0..min(t, n_max).
  std::vector<double> column(int t) const;

  /// True when every state of time t is stored (n_max >= t).
  bool complete_at(int t) const { return n_max_ >= t; }

 private:
  int horizon_;
  int n_max_;
  std::vector<std::vector<double>> rows_;
};

/// Iterated convolution Phi^(n) = Phi^(n-1) * psi, rows 0..n_max (default all).
StateTable state_table(const WaitingTimeDensity& d, int t_max, int n_max = -1);

/// Lambda(a, b, t) = E[a^N(t) b^(t - N(t))] for t = 0..t_max via the renewal recursion.
std::vector<std::complex<double>> lambda_poly(const WaitingTimeDensity& d, std::complex<double> a,
                                              std::complex<double> b, int t_max);

/// Same quantity from the state table: sum_n a^n b^(t-n) Phi^(n)(t). Needs a complete table.
std::complex<double> lambda_direct(const StateTable& table, std::complex<double> a, std::complex<double> b,
                                   int t);

/// E N(t) = sum_n n Phi^(n)(t) for t = 0..horizon of a complete table.
std::vector<double> expected_arrivals(const StateTable& table);

/// Renewal density u(t) = sum_n [psi*]^n(t), u(0) = 1; its partial sums are E N(t).
std::vector<double> renewal_density(const WaitingTimeDensity& d, int t_max);

}  // namespace adtrw
