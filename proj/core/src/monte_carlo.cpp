#include "adtrw/monte_carlo.hpp"

#include <algorithm>
#include <string>

#include "adtrw/error.hpp"
#include "adtrw/sampling.hpp"
#include "adtrw/walk.hpp"

namespace adtrw {
namespace {

struct ShardTally {
  std::vector<LatticeHistogram> histograms;
  std::vector<std::int64_t> first_return;
  std::int64_t not_returned = 0;
  // position at time s along a fail run is c - s; accumulated as difference arrays
  std::vector<std::int64_t> run_const;
  std::vector<std::int64_t> run_count;
  std::vector<std::int64_t> point_sum;
  std::vector<std::int64_t> point_live;
  std::int64_t truncated = 0;

  ShardTally(int t_max, const std::vector<LatticeHistogram>& empty_hists)
      : histograms(empty_hists),
        first_return(static_cast<std::size_t>(t_max) + 1, 0),
        run_const(static_cast<std::size_t>(t_max) + 2, 0),
        run_count(static_cast<std::size_t>(t_max) + 2, 0),
        point_sum(static_cast<std::size_t>(t_max) + 1, 0),
        point_live(static_cast<std::size_t>(t_max) + 1, 0) {}

  void point(int t, std::int64_t pos) {
    point_sum[static_cast<std::size_t>(t)] += pos;
    ++point_live[static_cast<std::size_t>(t)];
  }
  // positions c - s for s in [from, to]
  void run(int from, int to, std::int64_t c) {
    run_const[static_cast<std::size_t>(from)] += c;
    run_const[static_cast<std::size_t>(to) + 1] -= c;
    ++run_count[static_cast<std::size_t>(from)];
    --run_count[static_cast<std::size_t>(to) + 1];
  }
};

class Walker {
 public:
  Walker(const WaitingTimeDensity& d, const JumpDensity& wplus, const JumpDensity& wminus, int t_max,
         const std::vector<int>& record_times, bool track_mean)
      : wait_(DiscreteSampler::waiting_time(d)),
        up_(DiscreteSampler::jumps(wplus)),
        down_(DiscreteSampler::jumps(wminus)),
        up_sign_(wplus.sign()),
        down_sign_(wminus.sign()),
        unit_(wplus.is_unit() && wminus.is_unit() && wplus.sign() > 0 && wminus.sign() < 0),
        horizon_(d.horizon()),
        t_max_(t_max),
        record_times_(record_times),
        track_mean_(track_mean) {}

  void simulate(std::mt19937_64& rng, ShardTally& tally) const {
    int t = 0;
    std::int64_t pos = 0;
    bool returned = false;
    std::size_t next_rec = 0;
    auto record = [&](int time, std::int64_t p) {
      while (next_rec < record_times_.size() && record_times_[next_rec] == time) {
        auto& h = tally.histograms[next_rec];
        ++h.counts[static_cast<std::size_t>(p - h.offset)];
        ++next_rec;
      }
    };
    record(0, 0);
    if (track_mean_) tally.point(0, 0);
    while (t < t_max_) {
      if (!track_mean_ && returned && next_rec == record_times_.size()) return;
      const int r = wait_(uniform01(rng));
      int fails;
      bool success;
      bool truncate = false;
      if (r == DiscreteSampler::kBeyond) {
        // The next success lies beyond horizon_ trials from now.
        fails = horizon_;
        success = false;
        if (t + horizon_ < t_max_) truncate = true;
      } else {
        fails = r - 1;
        success = true;
      }
      fails = std::min(fails, t_max_ - t);
      if (fails > 0) {
        if (unit_) {
          const int from = t + 1;
          const int to = t + fails;
          if (track_mean_) tally.run(from, to, pos + t);
          if (!returned && pos > 0 && pos <= fails) {
            returned = true;
            ++tally.first_return[static_cast<std::size_t>(t + pos)];
          }
          while (next_rec < record_times_.size() && record_times_[next_rec] <= to) {
            const int tr = record_times_[next_rec];
            record(tr, pos - (tr - t));
          }
          pos -= fails;
          t = to;
        } else {
          for (int s = 0; s < fails; ++s) {
            pos += static_cast<std::int64_t>(down_sign_) * down_(uniform01(rng));
            ++t;
            step_done(t, pos, returned, tally, record, track_mean_);
          }
        }
      }
      if (truncate) {
        ++tally.truncated;
        return;
      }
      if (success && t < t_max_) {
        pos += unit_ ? 1 : static_cast<std::int64_t>(up_sign_) * up_(uniform01(rng));
        ++t;
        step_done(t, pos, returned, tally, record, track_mean_);
      }
    }
    if (!returned) ++tally.not_returned;
  }

 private:
  template <class Record>
  static void step_done(int t, std::int64_t pos, bool& returned, ShardTally& tally, Record& record, bool track) {
    if (track) tally.point(t, pos);
    if (!returned && pos == 0) {
      returned = true;
      ++tally.first_return[static_cast<std::size_t>(t)];
    }
    record(t, pos);
  }

  DiscreteSampler wait_;
  DiscreteSampler up_;
  DiscreteSampler down_;
  int up_sign_;
  int down_sign_;
  bool unit_;
  int horizon_;
  int t_max_;
  std::vector<int> record_times_;
  bool track_mean_;
};

}  // namespace

std::int64_t LatticeHistogram::total() const {
  std::int64_t acc = 0;
  for (auto c : counts) acc += c;
  return acc;
}

LatticeDistribution LatticeHistogram::normalized() const {
  const double n = static_cast<double>(total());
  LatticeDistribution out{t, offset, std::vector<double>(counts.size(), 0.0)};
  if (n == 0.0) return out;
  for (std::size_t i = 0; i < counts.size(); ++i) out.probs[i] = static_cast<double>(counts[i]) / n;
  return out;
}

double McEnsemble::mean_position(int t) const {
  if (live.empty()) throw InvalidArgument("mean_position: ensemble ran without the mean series");
  const auto n = live[static_cast<std::size_t>(t)];
  return n == 0 ? 0.0 : static_cast<double>(position_sum[static_cast<std::size_t>(t)]) / static_cast<double>(n);
}

std::int64_t McEnsemble::returned() const {
  std::int64_t acc = 0;
  for (auto c : first_return) acc += c;
  return acc;
}

double McEnsemble::return_fraction() const {
  const auto ret = returned();
  const auto resolved = ret + not_returned;
  return resolved == 0 ? 0.0 : static_cast<double>(ret) / static_cast<double>(resolved);
}

McEnsemble mc_sample(const WaitingTimeDensity& d, const JumpDensity& wplus, const JumpDensity& wminus, int t_max,
                     std::int64_t n_samples, std::uint64_t seed, const McOptions& options) {
  if (n_samples < 1) throw InvalidArgument("mc_sample: samples must be >= 1");
  if (t_max < 0) throw InvalidArgument("mc_sample: t_max must be >= 0");
  std::vector<int> times = options.record_times;
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  std::vector<LatticeHistogram> empty;
  for (int tr : times) {
    if (tr < 0 || tr > t_max) {
      throw InvalidArgument("mc_sample: record time " + std::to_string(tr) + " outside [0, t_max]");
    }
    const SiteWindow w = reachable_window(wplus, wminus, tr);
    empty.push_back(LatticeHistogram{tr, w.lo, std::vector<std::int64_t>(static_cast<std::size_t>(w.hi - w.lo) + 1, 0)});
  }

  const Walker walker(d, wplus, wminus, t_max, times, options.mean_series);
  std::vector<ShardTally> tallies(kShardCount, ShardTally(t_max, empty));
  for_each_shard(kShardCount, [&](int shard) {
    auto rng = shard_engine(seed, shard);
    auto& tally = tallies[static_cast<std::size_t>(shard)];
    const auto n = shard_size(n_samples, shard);
    for (std::int64_t i = 0; i < n; ++i) walker.simulate(rng, tally);
  });

  McEnsemble out;
  out.samples = n_samples;
  out.seed = seed;
  out.shards = kShardCount;
  out.t_max = t_max;
  out.histograms = empty;
  out.first_return.assign(static_cast<std::size_t>(t_max) + 1, 0);
  out.position_sum.assign(static_cast<std::size_t>(t_max) + 1, 0);
  out.live.assign(static_cast<std::size_t>(t_max) + 1, 0);
  std::vector<std::int64_t> run_const(static_cast<std::size_t>(t_max) + 2, 0);
  std::vector<std::int64_t> run_count(static_cast<std::size_t>(t_max) + 2, 0);
  for (const auto& tally : tallies) {
    for (std::size_t h = 0; h < empty.size(); ++h) {
      for (std::size_t i = 0; i < tally.histograms[h].counts.size(); ++i) {
        out.histograms[h].counts[i] += tally.histograms[h].counts[i];
      }
    }
    for (int t = 0; t <= t_max; ++t) {
      const auto i = static_cast<std::size_t>(t);
      out.first_return[i] += tally.first_return[i];
      out.position_sum[i] += tally.point_sum[i];
      out.live[i] += tally.point_live[i];
    }
    for (std::size_t i = 0; i < run_const.size(); ++i) {
      run_const[i] += tally.run_const[i];
      run_count[i] += tally.run_count[i];
    }
    out.not_returned += tally.not_returned;
    out.truncated += tally.truncated;
  }
  if (!options.mean_series) {
    out.position_sum.clear();
    out.live.clear();
    return out;
  }
  std::int64_t c = 0;
  std::int64_t k = 0;
  for (int t = 0; t <= t_max; ++t) {
    c += run_const[static_cast<std::size_t>(t)];
    k += run_count[static_cast<std::size_t>(t)];
    out.position_sum[static_cast<std::size_t>(t)] += c - static_cast<std::int64_t>(t) * k;
    out.live[static_cast<std::size_t>(t)] += k;
  }
  return out;
}

}  // namespace adtrw
