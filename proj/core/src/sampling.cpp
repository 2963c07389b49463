#include "adtrw/sampling.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <thread>

#include "adtrw/error.hpp"

namespace adtrw {

std::mt19937_64 shard_engine(std::uint64_t seed, int shard) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(shard)};
  return std::mt19937_64(seq);
}

std::int64_t shard_size(std::int64_t n, int shard) {
  return n / kShardCount + (shard < n % kShardCount ? 1 : 0);
}

int resolve_thread_count() {
  if (const char* env = std::getenv("ADTRW_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void for_each_shard(int shards, const std::function<void(int)>& fn) {
  const int workers = std::min(shards, resolve_thread_count());
  if (workers <= 1) {
    for (int s = 0; s < shards; ++s) fn(s);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int s = next++; s < shards && !failed; s = next++) {
        try {
          fn(s);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

DiscreteSampler::DiscreteSampler(std::vector<double> cdf) : cdf_(std::move(cdf)) {
  if (cdf_.empty()) throw InvalidArgument("sampler: empty distribution");
  const std::size_t g = cdf_.size();
  guide_.resize(g);
  std::size_t k = 0;
  for (std::size_t i = 0; i < g; ++i) {
    const double u = static_cast<double>(i) / static_cast<double>(g);
    while (k < cdf_.size() && u >= cdf_[k]) ++k;
    guide_[i] = k;
  }
}

DiscreteSampler DiscreteSampler::waiting_time(const WaitingTimeDensity& d) {
  std::vector<double> cdf(static_cast<std::size_t>(d.horizon()));
  const auto s = d.survival();
  double running = 0.0;
  for (int t = 1; t <= d.horizon(); ++t) {
    running = std::max(running, 1.0 - s[static_cast<std::size_t>(t)]);
    cdf[static_cast<std::size_t>(t - 1)] = running;
  }
  return DiscreteSampler(std::move(cdf));
}

DiscreteSampler DiscreteSampler::jumps(const JumpDensity& w) {
  std::vector<double> cdf(w.probs.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < w.probs.size(); ++i) {
    acc += w.probs[i];
    cdf[i] = acc;
  }
  // Rounding must not leave a sliver of mass unassigned.
  cdf.back() = 1.0;
  return DiscreteSampler(std::move(cdf));
}

double mittag_leffler_variate(double mu, double xi0, double u, double v) {
  const double e = -std::log(u);
  if (mu == 1.0) return e / xi0;
  const double pi_mu = std::numbers::pi * mu;
  // sin(mu pi)/tan(mu pi v) - cos(mu pi), written without the cancellation
  const double ratio = std::sin(pi_mu * (1.0 - v)) / std::sin(pi_mu * v);
  return std::pow(xi0, -1.0 / mu) * e * std::pow(ratio, 1.0 / mu);
}

}  // namespace adtrw
