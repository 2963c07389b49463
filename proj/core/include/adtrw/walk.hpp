#pragma once

#include <span>
#include <vector>

#include "adtrw/density.hpp"
#include "adtrw/lattice.hpp"

namespace adtrw {

/// Simple walk (unit jumps): P(Y_t = r) = Phi^((r+t)/2)(t). Window [-t, t].
LatticeDistribution simple_walk_dist(const WaitingTimeDensity& d, int t);

/// simple_walk_dist for t = 0..t_max from a single state table.
std::vector<LatticeDistribution> simple_walk_series(const WaitingTimeDensity& d, int t_max);

/// Law of 2 N(t) on [0, 2t]; the simple walk is this law shifted by -t.
LatticeDistribution counting_dist(const WaitingTimeDensity& d, int t);

/// P(Y_t = 0); zero for odd t.
double return_probability(const WaitingTimeDensity& d, int t);

/// For each requested site j, the series P(Y_t = j) for t = 0..t_max.
/// Uses rolling rows of Phi^(k)(k + m) indexed by the failure count m, so only
/// the band reachable by the requested sites is computed.
std::vector<std::vector<double>> site_probability_series(const WaitingTimeDensity& d, std::span<const int> sites,
                                                         int t_max);

struct SiteWindow {
  int lo;
  int hi;
};

/// Smallest window holding every position reachable in t steps.
SiteWindow reachable_window(const JumpDensity& wplus, const JumpDensity& wminus, int t);

/// General one-sided jumps: sum_n Phi^(n)(t) ([W+*]^n * [W-*]^(t-n)).
/// Throws InvalidArgument naming the required window if `window` is too small.
LatticeDistribution general_walk_dist(const WaitingTimeDensity& d, const JumpDensity& wplus,
                                      const JumpDensity& wminus, int t, SiteWindow window);

/// Max over (t, j) of the renewal-equation residual of a simple-walk series
/// starting at t = 0.
double renewal_residual(const WaitingTimeDensity& d, std::span<const LatticeDistribution> series);

}  // namespace adtrw
