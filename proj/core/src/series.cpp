#include "adtrw/series.hpp"

#include <algorithm>

#include "adtrw/error.hpp"

namespace adtrw {

std::vector<double> convolve(std::span<const double> a, std::span<const double> b, std::size_t len) {
  std::vector<double> out(len, 0.0);
  for (std::size_t i = 0; i < std::min(a.size(), len); ++i) {
    if (a[i] == 0.0) continue;
    const std::size_t jmax = std::min(b.size(), len - i);
    for (std::size_t j = 0; j < jmax; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

std::vector<double> series_divide(std::span<const double> num, std::span<const double> den, std::size_t order) {
  if (den.empty() || den[0] == 0.0) throw InvalidArgument("series_divide: leading denominator coefficient is zero");
  std::vector<double> q(order, 0.0);
  for (std::size_t k = 0; k < order; ++k) {
    double acc = k < num.size() ? num[k] : 0.0;
    const std::size_t jmax = std::min(k, den.size() - 1);
    for (std::size_t j = 1; j <= jmax; ++j) acc -= den[j] * q[k - j];
    q[k] = acc / den[0];
  }
  return q;
}

double polyval(std::span<const double> c, double z) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::complex<double> polyval(std::span<const double> c, std::complex<double> z) {
  std::complex<double> acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

}  // namespace adtrw
