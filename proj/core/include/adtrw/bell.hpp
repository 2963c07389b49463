#pragma once

#include <complex>
#include <span>
#include <vector>

#include "adtrw/density.hpp"

namespace adtrw {

/// Incomplete ordinary Bell polynomials B_{r,n} = [x*]^n(r) of a coefficient
/// sequence x_1, x_2, ..., for 0 <= n <= r <= r_max.
class BellTable {
 public:
  BellTable(int r_max, std::vector<std::vector<double>> rows);

  int r_max() const { return r_max_; }

  /// Zero for n > r; B_{0,0} = 1, B_{r,0} = 0 for r > 0.
  double operator()(int r, int n) const;

 private:
  int r_max_;
  // rows_[n][r - n] for r = n..r_max
  std::vector<std::vector<double>> rows_;
};

BellTable incomplete_bell(const WaitingTimeDensity& d, int r_max);

/// Table built from an arbitrary sequence; x[k-1] is the coefficient x_k.
BellTable incomplete_bell(std::span<const double> x, int r_max);

/// Complete polynomial B_t(v) = sum_n v^n B_{t,n}.
std::complex<double> complete_bell(const BellTable& table, std::complex<double> v, int t);

/// B_t(v) for t = 0..t_max through B_t(v) = v sum_k psi(k) B_{t-k}(v), without
/// materialising the triangular table.
std::vector<std::complex<double>> complete_bell_sequence(const WaitingTimeDensity& d, std::complex<double> v,
                                                         int t_max);

/// State polynomial P(v, t) = sum_r S(t-r) B_r(v), assembled from a Bell table.
std::complex<double> state_poly_via_bell(const WaitingTimeDensity& d, std::complex<double> v, int t);

/// E N(t) = sum_{r=1}^t B_r(1).
double mean_arrivals_via_bell(const WaitingTimeDensity& d, int t);

/// Exponential Bell polynomials r!/n! B_{r,n}(x_k / k!). Double precision
/// factorials restrict this to r <= 20.
BellTable exponential_bell(std::span<const double> x, int r_max);

constexpr int kExponentialBellMaxOrder = 20;

}  // namespace adtrw
