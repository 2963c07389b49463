#include "adtrw/walk.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "adtrw/error.hpp"
#include "adtrw/generator.hpp"

namespace adtrw {
namespace {

void check_time(const WaitingTimeDensity& d, int t) {
  if (t < 0) throw InvalidArgument("t must be >= 0, got " + std::to_string(t));
  if (t > d.horizon()) {
    throw InvalidArgument("t=" + std::to_string(t) + " exceeds density horizon " + std::to_string(d.horizon()));
  }
}

LatticeDistribution column_as_walk(const StateTable& table, int t) {
  LatticeDistribution out{t, -t, std::vector<double>(static_cast<std::size_t>(2 * t) + 1, 0.0)};
  for (int n = 0; n <= t; ++n) out.probs[static_cast<std::size_t>(2 * n)] = table(n, t);
  return out;
}

LatticeDistribution lattice_convolve(const LatticeDistribution& a, const LatticeDistribution& b) {
  LatticeDistribution out{0, a.offset + b.offset, std::vector<double>(a.probs.size() + b.probs.size() - 1, 0.0)};
  for (std::size_t i = 0; i < a.probs.size(); ++i) {
    if (a.probs[i] == 0.0) continue;
    for (std::size_t j = 0; j < b.probs.size(); ++j) out.probs[i + j] += a.probs[i] * b.probs[j];
  }
  return out;
}

LatticeDistribution jump_as_lattice(const JumpDensity& w) {
  const int R = w.max_jump();
  if (w.sign() > 0) return LatticeDistribution{1, 1, w.probs};
  std::vector<double> rev(w.probs.rbegin(), w.probs.rend());
  return LatticeDistribution{1, -R, std::move(rev)};
}

// [w*]^k for k = 0..k_max
std::vector<LatticeDistribution> convolution_powers(const JumpDensity& w, int k_max) {
  std::vector<LatticeDistribution> out;
  out.reserve(static_cast<std::size_t>(k_max) + 1);
  out.push_back(LatticeDistribution{0, 0, {1.0}});
  const LatticeDistribution step = jump_as_lattice(w);
  for (int k = 1; k <= k_max; ++k) out.push_back(lattice_convolve(out.back(), step));
  return out;
}

}  // namespace

LatticeDistribution simple_walk_dist(const WaitingTimeDensity& d, int t) {
  check_time(d, t);
  return column_as_walk(state_table(d, t), t);
}

std::vector<LatticeDistribution> simple_walk_series(const WaitingTimeDensity& d, int t_max) {
  check_time(d, t_max);
  const StateTable table = state_table(d, t_max);
  std::vector<LatticeDistribution> out;
  out.reserve(static_cast<std::size_t>(t_max) + 1);
  for (int t = 0; t <= t_max; ++t) out.push_back(column_as_walk(table, t));
  return out;
}

LatticeDistribution counting_dist(const WaitingTimeDensity& d, int t) {
  LatticeDistribution p = simple_walk_dist(d, t);
  p.offset = 0;
  return p;
}

double return_probability(const WaitingTimeDensity& d, int t) {
  check_time(d, t);
  if (t % 2 != 0) return 0.0;
  const int site = 0;
  return site_probability_series(d, std::span<const int>(&site, 1), t)[0][static_cast<std::size_t>(t)];
}

std::vector<std::vector<double>> site_probability_series(const WaitingTimeDensity& d, std::span<const int> sites,
                                                         int t_max) {
  check_time(d, t_max);
  std::vector<std::vector<double>> out(sites.size(), std::vector<double>(static_cast<std::size_t>(t_max) + 1, 0.0));
  // Y_t = j with k successes means t = 2k - j and m = k - j failures.
  int k_top = -1;
  int m_top = -1;
  for (int j : sites) {
    if (std::abs(j) > t_max) continue;
    k_top = std::max(k_top, (t_max + j) / 2);
    m_top = std::max(m_top, (t_max - j) / 2);
  }
  if (k_top < 0) return out;

  const auto psi = d.probs();
  const auto surv = d.survival();
  std::vector<double> prev(static_cast<std::size_t>(m_top) + 1, 0.0);
  std::vector<double> cur(prev.size(), 0.0);
  // row k = 0: Phi^(0)(m) = S(m)
  for (int m = 0; m <= m_top; ++m) prev[static_cast<std::size_t>(m)] = surv[static_cast<std::size_t>(m)];

  auto harvest = [&](int k, const std::vector<double>& row) {
    for (std::size_t s = 0; s < sites.size(); ++s) {
      const int j = sites[s];
      const int m = k - j;
      const int t = 2 * k - j;
      if (m < 0 || t > t_max || m > m_top) continue;
      out[s][static_cast<std::size_t>(t)] = row[static_cast<std::size_t>(m)];
    }
  };
  harvest(0, prev);

  for (int k = 1; k <= k_top; ++k) {
    // Times beyond t_max are never needed: k + m <= t_max.
    const int m_hi = std::min(m_top, t_max - k);
    std::fill(cur.begin(), cur.begin() + m_hi + 1, 0.0);
    // Phi^(k)(k+m) = sum_{r=1}^{m+1} psi(r) Phi^(k-1)(k-1 + m+1-r)
    // TODO: light tails past t ~ 1000 spend most of this loop on subnormal
    // products; skipping entries below a relative cutoff would recover ~3x.
    for (int r = 1; r <= m_hi + 1; ++r) {
      const double w = psi[static_cast<std::size_t>(r - 1)];
      if (w == 0.0) continue;
      const double* src = prev.data();
      double* dst = cur.data();
      for (int m = r - 1; m <= m_hi; ++m) dst[m] += w * src[m + 1 - r];
    }
    std::swap(prev, cur);
    harvest(k, prev);
  }
  return out;
}

SiteWindow reachable_window(const JumpDensity& wplus, const JumpDensity& wminus, int t) {
  auto extremes = [](const JumpDensity& w) {
    const int a = w.sign();
    const int b = w.sign() * w.max_jump();
    return std::pair{std::min(a, b), std::max(a, b)};
  };
  const auto [plo, phi] = extremes(wplus);
  const auto [mlo, mhi] = extremes(wminus);
  return SiteWindow{std::min(t * plo, t * mlo), std::max(t * phi, t * mhi)};
}

LatticeDistribution general_walk_dist(const WaitingTimeDensity& d, const JumpDensity& wplus,
                                      const JumpDensity& wminus, int t, SiteWindow window) {
  check_time(d, t);
  const SiteWindow need = reachable_window(wplus, wminus, t);
  if (window.lo > need.lo || window.hi < need.hi) {
    throw InvalidArgument("general_walk_dist: window [" + std::to_string(window.lo) + ", " +
                          std::to_string(window.hi) + "] too small; need [" + std::to_string(need.lo) + ", " +
                          std::to_string(need.hi) + "] (" + std::to_string(need.hi - need.lo + 1) + " sites)");
  }
  const StateTable table = state_table(d, t);
  const auto up = convolution_powers(wplus, t);
  const auto down = convolution_powers(wminus, t);
  LatticeDistribution out{t, window.lo, std::vector<double>(static_cast<std::size_t>(window.hi - window.lo) + 1, 0.0)};
  for (int n = 0; n <= t; ++n) {
    const double phi = table(n, t);
    if (phi == 0.0) continue;
    const LatticeDistribution path = lattice_convolve(up[static_cast<std::size_t>(n)], down[static_cast<std::size_t>(t - n)]);
    for (std::size_t i = 0; i < path.probs.size(); ++i) {
      out.probs[static_cast<std::size_t>(path.offset + static_cast<int>(i) - window.lo)] += phi * path.probs[i];
    }
  }
  return out;
}

double renewal_residual(const WaitingTimeDensity& d, std::span<const LatticeDistribution> series) {
  if (series.empty() || series[0].t != 0 || series[0].at(0) != 1.0 || series[0].total() != 1.0) {
    throw InvalidArgument("renewal_residual: series must start with the point mass at the origin at t=0");
  }
  const int t_max = static_cast<int>(series.size()) - 1;
  check_time(d, t_max);
  const auto surv = d.survival();
  double worst = 0.0;
  for (int t = 1; t <= t_max; ++t) {
    const LatticeDistribution& p = series[static_cast<std::size_t>(t)];
    if (p.t != t) throw InvalidArgument("renewal_residual: series entry " + std::to_string(t) + " has wrong time");
    const int lo = std::min(p.lo(), -t);
    const int hi = std::max(p.hi(), t);
    for (int j = lo; j <= hi; ++j) {
      double rhs = (j == -t) ? surv[static_cast<std::size_t>(t)] : 0.0;
      for (int r = 1; r <= t; ++r) rhs += d(r) * series[static_cast<std::size_t>(t - r)].at(j + r - 2);
      worst = std::max(worst, std::abs(p.at(j) - rhs));
    }
  }
  return worst;
}

}  // namespace adtrw
