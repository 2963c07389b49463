#include "adtrw/actrw.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "adtrw/error.hpp"
#include "adtrw/generator.hpp"
#include "adtrw/sampling.hpp"
#include "bigfloat.hpp"

namespace adtrw {
namespace {

constexpr double kNegativeSlack = 1e-10;
constexpr int kMaxSeriesTerms = 1000000;

void check_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("time must be finite and >= 0");
}

ClockStates finish(std::vector<double> probs, long bits) {
  ClockStates out;
  out.precision_bits = bits;
  double sum = 0.0;
  for (std::size_t m = 0; m < probs.size(); ++m) {
    double& p = probs[m];
    if (p < 0.0) {
      if (p < -kNegativeSlack) {
        throw NumericalError("frac_poisson_states: P(M=" + std::to_string(m) + ") = " + std::to_string(p));
      }
      p = 0.0;
      ++out.clamped;
    }
    sum += p;
  }
  out.probs = std::move(probs);
  out.deficit = std::max(0.0, 1.0 - sum);
  return out;
}

// One uniform in the open interval (0, 1).
double open01(std::mt19937_64& rng) { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53; }

}  // namespace

void MLParams::validate() const {
  if (!(mu > 0.0 && mu <= 1.0)) throw InvalidArgument("clock: mu must lie in (0,1], got " + std::to_string(mu));
  if (!(xi0 > 0.0) || !std::isfinite(xi0)) throw InvalidArgument("clock: xi0 must be > 0, got " + std::to_string(xi0));
}

ClockStates frac_poisson_states(const MLParams& clock, double t, int m_max) {
  clock.validate();
  check_time(t);
  if (m_max < 0) throw InvalidArgument("frac_poisson_states: m_max must be >= 0");
  std::vector<double> probs(static_cast<std::size_t>(m_max) + 1, 0.0);
  if (t == 0.0) {
    probs[0] = 1.0;
    return finish(std::move(probs), 53);
  }
  const double x = clock.xi0 * std::pow(t, clock.mu);
  if (x > kClockEnvelope) {
    throw EnvelopeError("frac_poisson_states: xi0 t^mu = " + std::to_string(x) + " exceeds envelope " +
                        std::to_string(kClockEnvelope) + "; reduce t or use Monte Carlo");
  }
  if (clock.mu == 1.0) {
    const double log_x = std::log(x);
    for (int m = 0; m <= m_max; ++m) {
      probs[static_cast<std::size_t>(m)] = std::exp(-x + m * log_x - std::lgamma(m + 1.0));
    }
    return finish(std::move(probs), 53);
  }

  // binom(j, m) <= 2^j bounds every term by (2x)^j / Gamma(mu j + 1).
  const double log_2x = std::log(2.0 * x);
  constexpr double kLogFloor = -50.0 * std::numbers::ln10;
  double log_max = 0.0;
  double prev = 0.0;
  int j_last = 0;
  for (int j = 1;; ++j) {
    if (j > kMaxSeriesTerms) throw EnvelopeError("frac_poisson_states: series does not settle");
    const double lt = j * log_2x - std::lgamma(clock.mu * j + 1.0);
    log_max = std::max(log_max, lt);
    if (j > m_max && lt < prev && lt < kLogFloor) {
      j_last = j;
      break;
    }
    prev = lt;
  }
  const long bits = 96 + static_cast<long>(std::ceil(log_max / std::numbers::ln2));
  if (bits > kClockMaxBits) {
    throw EnvelopeError("frac_poisson_states: cancellation needs " + std::to_string(bits) + " bits (limit " +
                        std::to_string(kClockMaxBits) + ") at mu=" + std::to_string(clock.mu) +
                        ", xi0 t^mu=" + std::to_string(x));
  }
  const auto prec = static_cast<mpfr_prec_t>(bits);
  // a_j = x^j / Gamma(mu j + 1)
  std::vector<detail::BigFloat> a;
  a.reserve(static_cast<std::size_t>(j_last) + 1);
  detail::BigFloat xpow(prec, 1.0);
  detail::BigFloat xx(prec, x);
  detail::BigFloat arg(prec);
  detail::BigFloat g(prec);
  for (int j = 0; j <= j_last; ++j) {
    if (j > 0) mpfr_mul(xpow.get(), xpow.get(), xx.get(), MPFR_RNDN);
    mpfr_set_d(arg.get(), clock.mu, MPFR_RNDN);
    mpfr_mul_ui(arg.get(), arg.get(), static_cast<unsigned long>(j), MPFR_RNDN);
    mpfr_add_ui(arg.get(), arg.get(), 1, MPFR_RNDN);
    mpfr_gamma(g.get(), arg.get(), MPFR_RNDN);
    a.emplace_back(prec);
    mpfr_div(a.back().get(), xpow.get(), g.get(), MPFR_RNDN);
  }
  detail::BigFloat sum(prec);
  detail::BigFloat binom(prec);
  detail::BigFloat term(prec);
  for (int m = 0; m <= m_max; ++m) {
    mpfr_set_ui(sum.get(), 0, MPFR_RNDN);
    mpfr_set_ui(binom.get(), 1, MPFR_RNDN);
    for (int j = m; j <= j_last; ++j) {
      mpfr_mul(term.get(), binom.get(), a[static_cast<std::size_t>(j)].get(), MPFR_RNDN);
      if ((j - m) % 2 == 0) {
        mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDN);
      } else {
        mpfr_sub(sum.get(), sum.get(), term.get(), MPFR_RNDN);
      }
      // binom(j+1, m) = binom(j, m) (j+1)/(j+1-m)
      mpfr_mul_ui(binom.get(), binom.get(), static_cast<unsigned long>(j + 1), MPFR_RNDN);
      mpfr_div_ui(binom.get(), binom.get(), static_cast<unsigned long>(j + 1 - m), MPFR_RNDN);
    }
    probs[static_cast<std::size_t>(m)] = sum.to_double();
  }
  return finish(std::move(probs), bits);
}

ClockStates frac_poisson_until(const MLParams& clock, double t, double tail_tol) {
  for (int m_max = 16;; m_max *= 2) {
    ClockStates cs = frac_poisson_states(clock, t, m_max);
    if (cs.deficit < tail_tol) {
      // Drop trailing states that carry no mass at double precision.
      while (cs.probs.size() > 1 && cs.probs.back() == 0.0) cs.probs.pop_back();
      return cs;
    }
    if (m_max >= kMaxClockStates) {
      throw EnvelopeError("frac_poisson_until: clock tail above " + std::to_string(tail_tol) + " at m_max=" +
                          std::to_string(m_max));
    }
  }
}

ComposedStateTable composed_states(const WaitingTimeDensity& d, const MLParams& clock, double t, int n_max) {
  if (n_max < 0) throw InvalidArgument("composed_states: n_max must be >= 0");
  const ClockStates cs = frac_poisson_until(clock, t, kClockTailTol);
  const int m_max = static_cast<int>(cs.probs.size()) - 1;
  if (d.horizon() < m_max) {
    throw InvalidArgument("composed_states: density horizon " + std::to_string(d.horizon()) +
                          " shorter than clock truncation m_max=" + std::to_string(m_max));
  }
  const int rows = std::min(n_max, m_max);
  const StateTable table = state_table(d, m_max, rows);
  ComposedStateTable out;
  out.t = t;
  out.m_max = m_max;
  out.tail_bound = cs.deficit;
  out.clamped = cs.clamped;
  out.probs.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  for (int n = 0; n <= rows; ++n) {
    double acc = 0.0;
    for (int m = n; m <= m_max; ++m) acc += cs.probs[static_cast<std::size_t>(m)] * table(n, m);
    out.probs[static_cast<std::size_t>(n)] = acc;
  }
  return out;
}

PiValue pi_series(const WaitingTimeDensity& d, const MLParams& clock, std::complex<double> a, std::complex<double> b,
                  double t) {
  const ClockStates cs = frac_poisson_until(clock, t, kClockTailTol);
  const int m_max = static_cast<int>(cs.probs.size()) - 1;
  if (d.horizon() < m_max) {
    throw InvalidArgument("pi_series: density horizon " + std::to_string(d.horizon()) +
                          " shorter than clock truncation m_max=" + std::to_string(m_max));
  }
  const auto lam = lambda_poly(d, a, b, m_max);
  std::complex<double> acc = 0.0;
  for (int m = 0; m <= m_max; ++m) acc += cs.probs[static_cast<std::size_t>(m)] * lam[static_cast<std::size_t>(m)];
  return PiValue{acc, cs.deficit, m_max};
}

void CountHistogram::add(std::int64_t value, std::int64_t weight) {
  if (counts.empty()) {
    offset = value;
    counts.push_back(0);
  }
  if (value < offset) {
    counts.insert(counts.begin(), static_cast<std::size_t>(offset - value), 0);
    offset = value;
  }
  const auto idx = static_cast<std::size_t>(value - offset);
  if (idx >= counts.size()) counts.resize(idx + 1, 0);
  counts[idx] += weight;
}

void CountHistogram::merge(const CountHistogram& other) {
  for (std::size_t i = 0; i < other.counts.size(); ++i) {
    if (other.counts[i] != 0) add(other.offset + static_cast<std::int64_t>(i), other.counts[i]);
  }
}

std::int64_t CountHistogram::total() const {
  std::int64_t acc = 0;
  for (auto c : counts) acc += c;
  return acc;
}

double CountHistogram::probability(std::int64_t value) const {
  const auto n = total();
  if (n == 0 || value < offset || value >= offset + static_cast<std::int64_t>(counts.size())) return 0.0;
  return static_cast<double>(counts[static_cast<std::size_t>(value - offset)]) / static_cast<double>(n);
}

double ActrwEnsemble::generating_function(std::size_t i, double v) const {
  const auto& h = arrivals[i];
  const double n = static_cast<double>(h.total());
  double acc = 0.0;
  for (std::size_t k = 0; k < h.counts.size(); ++k) {
    acc += static_cast<double>(h.counts[k]) * std::pow(v, static_cast<double>(h.offset + static_cast<std::int64_t>(k)));
  }
  return n == 0.0 ? 0.0 : acc / n;
}

ActrwEnsemble actrw_mc(const WaitingTimeDensity& d, const MLParams& clock, const JumpDensity& wplus,
                       const JumpDensity& wminus, std::vector<double> times, std::int64_t n_samples,
                       std::uint64_t seed) {
  clock.validate();
  if (n_samples < 1) throw InvalidArgument("actrw_mc: samples must be >= 1");
  for (double t : times) check_time(t);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  const std::size_t nt = times.size();

  const DiscreteSampler wait = DiscreteSampler::waiting_time(d);
  const DiscreteSampler up = DiscreteSampler::jumps(wplus);
  const DiscreteSampler down = DiscreteSampler::jumps(wminus);
  const int horizon = d.horizon();

  struct Tally {
    std::vector<CountHistogram> clock, arrivals, position;
    std::int64_t truncated = 0;
  };
  std::vector<Tally> tallies(kShardCount);
  for_each_shard(kShardCount, [&](int shard) {
    auto rng = shard_engine(seed, shard);
    Tally& tally = tallies[static_cast<std::size_t>(shard)];
    tally.clock.resize(nt);
    tally.arrivals.resize(nt);
    tally.position.resize(nt);
    const auto n = shard_size(n_samples, shard);
    for (std::int64_t s = 0; s < n; ++s) {
      std::int64_t m = 0, k = 0, pos = 0;
      int fails_left = 0;
      bool success_pending = false;
      auto draw_wait = [&] {
        const int r = wait(uniform01(rng));
        if (r == DiscreteSampler::kBeyond) {
          fails_left = horizon;
          success_pending = false;
        } else {
          fails_left = r - 1;
          success_pending = true;
        }
      };
      auto next_gap = [&] { return mittag_leffler_variate(clock.mu, clock.xi0, open01(rng), open01(rng)); };
      draw_wait();
      double arrival = next_gap();
      bool truncated = false;
      for (std::size_t i = 0; i < nt && !truncated; ++i) {
        while (arrival <= times[i]) {
          if (fails_left > 0) {
            --fails_left;
            pos += static_cast<std::int64_t>(wminus.sign()) * down(uniform01(rng));
          } else if (success_pending) {
            ++k;
            pos += static_cast<std::int64_t>(wplus.sign()) * up(uniform01(rng));
            draw_wait();
          } else {
            truncated = true;
            break;
          }
          ++m;
          arrival += next_gap();
        }
        if (truncated) break;
        tally.clock[i].add(m);
        tally.arrivals[i].add(k);
        tally.position[i].add(pos);
      }
      if (truncated) ++tally.truncated;
    }
  });

  ActrwEnsemble out;
  out.samples = n_samples;
  out.seed = seed;
  out.shards = kShardCount;
  out.times = times;
  out.clock.resize(nt);
  out.arrivals.resize(nt);
  out.position.resize(nt);
  for (const Tally& tally : tallies) {
    for (std::size_t i = 0; i < nt; ++i) {
      out.clock[i].merge(tally.clock[i]);
      out.arrivals[i].merge(tally.arrivals[i]);
      out.position[i].merge(tally.position[i]);
    }
    out.truncated += tally.truncated;
  }
  return out;
}

}  // namespace adtrw
