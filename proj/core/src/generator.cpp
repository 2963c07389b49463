#include "adtrw/generator.hpp"

#include <string>

#include "adtrw/error.hpp"

namespace adtrw {
namespace {

void check_t_max(const WaitingTimeDensity& d, int t_max) {
  if (t_max < 0) throw InvalidArgument("t_max must be >= 0, got " + std::to_string(t_max));
  if (t_max > d.horizon()) {
    throw InvalidArgument("t_max=" + std::to_string(t_max) + " exceeds density horizon " +
                          std::to_string(d.horizon()));
  }
}

}  // namespace

StateTable::StateTable(int horizon, int n_max, std::vector<std::vector<double>> rows)
    : horizon_(horizon), n_max_(n_max), rows_(std::move(rows)) {}

double StateTable::operator()(int n, int t) const {
  if (n > n_max_) {
    throw InvalidArgument("state n=" + std::to_string(n) + " beyond stored n_max=" + std::to_string(n_max_));
  }
  if (t < 0 || t > horizon_) throw InvalidArgument("time t=" + std::to_string(t) + " outside table");
  if (n < 0 || n > t) return 0.0;
  return rows_[static_cast<std::size_t>(n)][static_cast<std::size_t>(t - n)];
}

std::vector<double> StateTable::column(int t) const {
  const int top = std::min(t, n_max_);
  std::vector<double> out(static_cast<std::size_t>(top) + 1);
  for (int n = 0; n <= top; ++n) out[static_cast<std::size_t>(n)] = (*this)(n, t);
  return out;
}

StateTable state_table(const WaitingTimeDensity& d, int t_max, int n_max) {
  check_t_max(d, t_max);
  if (n_max < 0 || n_max > t_max) n_max = t_max;
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(n_max) + 1);
  rows[0].assign(d.survival().begin(), d.survival().begin() + t_max + 1);
  const auto psi = d.probs();
  for (int n = 1; n <= n_max; ++n) {
    // row n holds t = n..t_max; row n-1 holds t = n-1..t_max.
    const auto& prev = rows[static_cast<std::size_t>(n - 1)];
    auto& cur = rows[static_cast<std::size_t>(n)];
    const int len = t_max - n + 1;
    cur.assign(static_cast<std::size_t>(len), 0.0);
    // Phi^(n)(n+i) = sum_{r=1}^{i+1} psi(r) Phi^(n-1)(n+i-r), prev index (n+i-r)-(n-1) = i+1-r
    for (int r = 1; r <= len; ++r) {
      const double w = psi[static_cast<std::size_t>(r - 1)];
      if (w == 0.0) continue;
      const double* src = prev.data();
      double* dst = cur.data();
      for (int i = r - 1; i < len; ++i) dst[i] += w * src[i + 1 - r];
    }
  }
  return StateTable(t_max, n_max, std::move(rows));
}

std::vector<std::complex<double>> lambda_poly(const WaitingTimeDensity& d, std::complex<double> a,
                                              std::complex<double> b, int t_max) {
  check_t_max(d, t_max);
  constexpr double kSlack = 1e-12;
  if (std::abs(a) > 1.0 + kSlack || std::abs(b) > 1.0 + kSlack) {
    throw InvalidArgument("lambda_poly: |a| and |b| must not exceed 1");
  }
  std::vector<std::complex<double>> lam(static_cast<std::size_t>(t_max) + 1);
  // weights w(r) = a b^(r-1) psi(r)
  std::vector<std::complex<double>> w(static_cast<std::size_t>(t_max) + 1, 0.0);
  std::complex<double> bpow = 1.0;
  for (int r = 1; r <= t_max; ++r) {
    w[static_cast<std::size_t>(r)] = a * bpow * d(r);
    bpow *= b;
  }
  std::complex<double> bt = 1.0;
  const auto s = d.survival();
  for (int t = 0; t <= t_max; ++t) {
    std::complex<double> acc = bt * s[static_cast<std::size_t>(t)];
    for (int r = 1; r <= t; ++r) acc += w[static_cast<std::size_t>(r)] * lam[static_cast<std::size_t>(t - r)];
    lam[static_cast<std::size_t>(t)] = acc;
    bt *= b;
  }
  return lam;
}

std::complex<double> lambda_direct(const StateTable& table, std::complex<double> a, std::complex<double> b,
                                   int t) {
  if (!table.complete_at(t)) throw InvalidArgument("lambda_direct: table rows do not cover t");
  std::complex<double> acc = 0.0;
  // Horner in a/b would divide by b; accumulate powers instead.
  std::vector<std::complex<double>> bpow(static_cast<std::size_t>(t) + 1);
  bpow[0] = 1.0;
  for (int k = 1; k <= t; ++k) bpow[static_cast<std::size_t>(k)] = bpow[static_cast<std::size_t>(k - 1)] * b;
  std::complex<double> apow = 1.0;
  for (int n = 0; n <= t; ++n) {
    acc += apow * bpow[static_cast<std::size_t>(t - n)] * table(n, t);
    apow *= a;
  }
  return acc;
}

std::vector<double> expected_arrivals(const StateTable& table) {
  const int T = table.horizon();
  if (!table.complete_at(T)) throw InvalidArgument("expected_arrivals: needs a table with all rows");
  std::vector<double> out(static_cast<std::size_t>(T) + 1, 0.0);
  for (int t = 0; t <= T; ++t) {
    double acc = 0.0;
    for (int n = 1; n <= t; ++n) acc += n * table(n, t);
    out[static_cast<std::size_t>(t)] = acc;
  }
  return out;
}

std::vector<double> renewal_density(const WaitingTimeDensity& d, int t_max) {
  check_t_max(d, t_max);
  std::vector<double> u(static_cast<std::size_t>(t_max) + 1, 0.0);
  u[0] = 1.0;
  for (int t = 1; t <= t_max; ++t) {
    double acc = 0.0;
    for (int r = 1; r <= t; ++r) acc += d(r) * u[static_cast<std::size_t>(t - r)];
    u[static_cast<std::size_t>(t)] = acc;
  }
  return u;
}

}  // namespace adtrw
