#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "adtrw/density.hpp"
#include "adtrw/lattice.hpp"

namespace adtrw {

/// Ensembles are always split into this many shards so that results do not
/// depend on the number of worker threads.
constexpr int kShardCount = 64;

/// Independent stream for (seed, shard).
std::mt19937_64 shard_engine(std::uint64_t seed, int shard);

/// Uniform on [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Samples in shard `shard` when n samples are split over kShardCount shards.
std::int64_t shard_size(std::int64_t n, int shard);

/// Worker count: ADTRW_THREADS if set and positive, else hardware concurrency.
int resolve_thread_count();

/// Runs fn(shard) for shard = 0..shards-1 on up to resolve_thread_count() threads.
void for_each_shard(int shards, const std::function<void(int)>& fn);

/// Inverse-CDF sampler over outcomes 1..K with a guide table. Mass not covered
/// by the table maps to kBeyond.
class DiscreteSampler {
 public:
  static constexpr int kBeyond = 0;

  /// cdf[k-1] = P(X <= k), non-decreasing.
  explicit DiscreteSampler(std::vector<double> cdf);

  static DiscreteSampler waiting_time(const WaitingTimeDensity& d);
  static DiscreteSampler jumps(const JumpDensity& w);

  int operator()(double u) const {
    std::size_t k = guide_[static_cast<std::size_t>(u * static_cast<double>(guide_.size()))];
    while (k < cdf_.size() && u >= cdf_[k]) ++k;
    return k == cdf_.size() ? kBeyond : static_cast<int>(k) + 1;
  }

  int size() const { return static_cast<int>(cdf_.size()); }

 private:
  std::vector<double> cdf_;
  std::vector<std::size_t> guide_;
};

/// Mittag-Leffler distributed waiting time, P(T > t) = E_mu(-xi0 t^mu), from
/// two independent uniforms in (0, 1).
double mittag_leffler_variate(double mu, double xi0, double u, double v);

}  // namespace adtrw
