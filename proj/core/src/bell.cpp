#include "adtrw/bell.hpp"

#include <string>

#include "adtrw/error.hpp"

namespace adtrw {

BellTable::BellTable(int r_max, std::vector<std::vector<double>> rows) : r_max_(r_max), rows_(std::move(rows)) {}

double BellTable::operator()(int r, int n) const {
  if (r < 0 || r > r_max_) throw InvalidArgument("bell: r=" + std::to_string(r) + " outside table");
  if (n < 0 || n > r) return 0.0;
  return rows_[static_cast<std::size_t>(n)][static_cast<std::size_t>(r - n)];
}

BellTable incomplete_bell(std::span<const double> x, int r_max) {
  if (r_max < 0) throw InvalidArgument("bell: r_max must be >= 0");
  if (static_cast<std::size_t>(r_max) > x.size()) {
    throw InvalidArgument("bell: r_max=" + std::to_string(r_max) + " exceeds sequence length " +
                          std::to_string(x.size()));
  }
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(r_max) + 1);
  rows[0].assign(static_cast<std::size_t>(r_max) + 1, 0.0);
  rows[0][0] = 1.0;
  for (int n = 1; n <= r_max; ++n) {
    const auto& prev = rows[static_cast<std::size_t>(n - 1)];  // r = n-1..r_max
    auto& cur = rows[static_cast<std::size_t>(n)];             // r = n..r_max
    const int len = r_max - n + 1;
    cur.assign(static_cast<std::size_t>(len), 0.0);
    // B_{n+i,n} = sum_{k=1}^{i+1} x_k B_{n+i-k,n-1}; prev index i+1-k
    for (int k = 1; k <= len; ++k) {
      const double w = x[static_cast<std::size_t>(k - 1)];
      if (w == 0.0) continue;
      for (int i = k - 1; i < len; ++i) cur[static_cast<std::size_t>(i)] += w * prev[static_cast<std::size_t>(i + 1 - k)];
    }
  }
  return BellTable(r_max, std::move(rows));
}

BellTable incomplete_bell(const WaitingTimeDensity& d, int r_max) {
  if (r_max > d.horizon()) {
    throw InvalidArgument("bell: r_max=" + std::to_string(r_max) + " exceeds density horizon " +
                          std::to_string(d.horizon()));
  }
  return incomplete_bell(d.probs(), r_max);
}

std::complex<double> complete_bell(const BellTable& table, std::complex<double> v, int t) {
  if (t < 0 || t > table.r_max()) throw InvalidArgument("complete_bell: t outside table");
  if (t == 0) return 1.0;
  std::complex<double> acc = 0.0;
  for (int n = t; n >= 1; --n) acc = (acc + table(t, n)) * v;
  return acc;
}

std::vector<std::complex<double>> complete_bell_sequence(const WaitingTimeDensity& d, std::complex<double> v,
                                                         int t_max) {
  if (t_max < 0 || t_max > d.horizon()) throw InvalidArgument("complete_bell_sequence: t_max outside horizon");
  std::vector<std::complex<double>> b(static_cast<std::size_t>(t_max) + 1, 0.0);
  b[0] = 1.0;
  for (int t = 1; t <= t_max; ++t) {
    std::complex<double> acc = 0.0;
    for (int k = 1; k <= t; ++k) acc += d(k) * b[static_cast<std::size_t>(t - k)];
    b[static_cast<std::size_t>(t)] = v * acc;
  }
  return b;
}

std::complex<double> state_poly_via_bell(const WaitingTimeDensity& d, std::complex<double> v, int t) {
  if (t < 0 || t > d.horizon()) throw InvalidArgument("state_poly_via_bell: t outside horizon");
  const BellTable table = incomplete_bell(d, t);
  const auto s = d.survival();
  std::complex<double> acc = 0.0;
  for (int r = 0; r <= t; ++r) acc += s[static_cast<std::size_t>(t - r)] * complete_bell(table, v, r);
  return acc;
}

double mean_arrivals_via_bell(const WaitingTimeDensity& d, int t) {
  if (t < 0 || t > d.horizon()) throw InvalidArgument("mean_arrivals_via_bell: t outside horizon");
  if (t == 0) return 0.0;
  const auto b = complete_bell_sequence(d, 1.0, t);
  double acc = 0.0;
  for (int r = 1; r <= t; ++r) acc += b[static_cast<std::size_t>(r)].real();
  return acc;
}

BellTable exponential_bell(std::span<const double> x, int r_max) {
  if (r_max > kExponentialBellMaxOrder) {
    throw InvalidArgument("exponential_bell: r_max=" + std::to_string(r_max) + " above supported order " +
                          std::to_string(kExponentialBellMaxOrder));
  }
  std::vector<double> fact(static_cast<std::size_t>(r_max) + 1, 1.0);
  for (int k = 1; k <= r_max; ++k) fact[static_cast<std::size_t>(k)] = fact[static_cast<std::size_t>(k - 1)] * k;
  std::vector<double> scaled(static_cast<std::size_t>(r_max));
  for (int k = 1; k <= r_max; ++k) {
    scaled[static_cast<std::size_t>(k - 1)] = x[static_cast<std::size_t>(k - 1)] / fact[static_cast<std::size_t>(k)];
  }
  const BellTable ordinary = incomplete_bell(scaled, r_max);
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(r_max) + 1);
  for (int n = 0; n <= r_max; ++n) {
    auto& row = rows[static_cast<std::size_t>(n)];
    row.resize(static_cast<std::size_t>(r_max - n) + 1);
    for (int r = n; r <= r_max; ++r) {
      row[static_cast<std::size_t>(r - n)] =
          ordinary(r, n) * fact[static_cast<std::size_t>(r)] / fact[static_cast<std::size_t>(n)];
    }
  }
  return BellTable(r_max, std::move(rows));
}

}  // namespace adtrw
