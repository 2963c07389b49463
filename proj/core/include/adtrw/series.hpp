#pragma once

#include <complex>
#include <span>
#include <vector>

namespace adtrw {

/// Truncated Cauchy product: result[k] = sum_{i+j=k} a[i] b[j] for k < len.
std::vector<double> convolve(std::span<const double> a, std::span<const double> b, std::size_t len);

/// Coefficients 0..order-1 of num(z)/den(z). den[0] must be non-zero.
std::vector<double> series_divide(std::span<const double> num, std::span<const double> den, std::size_t order);

/// Horner evaluation of sum_k c[k] z^k.
double polyval(std::span<const double> c, double z);
std::complex<double> polyval(std::span<const double> c, std::complex<double> z);

}  // namespace adtrw
