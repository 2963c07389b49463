#pragma once

#include <cstdint>
#include <vector>

#include "adtrw/density.hpp"
#include "adtrw/lattice.hpp"

namespace adtrw {

struct LatticeHistogram {
  int t = 0;
  int offset = 0;
  std::vector<std::int64_t> counts;

  std::int64_t total() const;
  LatticeDistribution normalized() const;
};

/// Merged result of a sharded Monte Carlo run. A trajectory is truncated when
/// it draws a waiting time beyond the density horizon and the unknown trials
/// fall before t_max; from then on it contributes to no statistic.
struct McEnsemble {
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  int shards = 0;
  int t_max = 0;
  std::vector<LatticeHistogram> histograms;      // one per requested time
  std::vector<std::int64_t> first_return;        // [t] = walks first back at the origin at t (t >= 1)
  std::int64_t not_returned = 0;                 // complete walks that never returned by t_max
  std::vector<std::int64_t> position_sum;        // [t] = sum of positions of live walks (empty if not tracked)
  std::vector<std::int64_t> live;                // [t] = walks with known position at t (empty if not tracked)
  std::int64_t truncated = 0;

  double mean_position(int t) const;
  /// Fraction of resolved walks that returned to the origin by t_max.
  double return_fraction() const;
  std::int64_t returned() const;
};

struct McOptions {
  std::vector<int> record_times;  // histogram times, each in [0, t_max]
  /// Fill position_sum/live. When off, a walk stops as soon as it has returned
  /// and passed the last record time.
  bool mean_series = true;
};

McEnsemble mc_sample(const WaitingTimeDensity& d, const JumpDensity& wplus, const JumpDensity& wminus, int t_max,
                     std::int64_t n_samples, std::uint64_t seed, const McOptions& options = {});

}  // namespace adtrw
