#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "adtrw/density.hpp"
#include "adtrw/lattice.hpp"

namespace adtrw {

/// Fractional Poisson clock: waiting times with P(T > t) = E_mu(-xi0 t^mu).
struct MLParams {
  double mu = 1.0;
  double xi0 = 1.0;

  void validate() const;
};

/// Largest xi0 t^mu accepted by the clock series.
constexpr double kClockEnvelope = 20.0;
/// Working-precision ceiling for the clock series.
constexpr long kClockMaxBits = 4096;
/// Largest clock truncation m_max tried by frac_poisson_until.
constexpr int kMaxClockStates = 4096;

struct ClockStates {
  std::vector<double> probs;  // P(M(t) = m), m = 0..m_max
  double deficit = 0.0;       // 1 - sum(probs), clamped at 0
  int clamped = 0;            // tiny negative values set to zero
  long precision_bits = 53;
};

/// P(M(t) = m) = sum_{j >= m} binom(j, m) (-1)^(j-m) x^j / Gamma(mu j + 1), x = xi0 t^mu.
/// The alternating sum is evaluated in MPFR; EnvelopeError outside x <= 20 or
/// when the required precision exceeds kClockMaxBits.
ClockStates frac_poisson_states(const MLParams& clock, double t, int m_max);

/// Smallest m_max (by doubling) whose clock tail is below `tail_tol`.
ClockStates frac_poisson_until(const MLParams& clock, double t, double tail_tol);

struct ComposedStateTable {
  double t = 0.0;
  std::vector<double> probs;  // P(N[M(t)] = n), n = 0..n_max
  int m_max = 0;
  double tail_bound = 0.0;    // clock mass beyond m_max
  int clamped = 0;
};

constexpr double kClockTailTol = 1e-12;

/// P(N[M(t)] = n) = sum_m P(M(t) = m) Phi^(n)(m).
ComposedStateTable composed_states(const WaitingTimeDensity& d, const MLParams& clock, double t, int n_max);

struct PiValue {
  std::complex<double> value;
  double tail_bound;
  int m_max;
};

/// Pi(a, b, t) = sum_m P(M(t) = m) Lambda(a, b, m).
PiValue pi_series(const WaitingTimeDensity& d, const MLParams& clock, std::complex<double> a, std::complex<double> b,
                  double t);

/// Histogram of an integer quantity with a growing window.
struct CountHistogram {
  std::int64_t offset = 0;
  std::vector<std::int64_t> counts;

  void add(std::int64_t value, std::int64_t weight = 1);
  void merge(const CountHistogram& other);
  std::int64_t total() const;
  double probability(std::int64_t value) const;
};

struct ActrwEnsemble {
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  int shards = 0;
  std::vector<double> times;
  std::vector<CountHistogram> clock;     // M(t)
  std::vector<CountHistogram> arrivals;  // N[M(t)]
  std::vector<CountHistogram> position;  // Y_{M(t)}
  std::int64_t truncated = 0;

  /// E v^N[M(t)] at observation index i.
  double generating_function(std::size_t i, double v) const;
};

/// Monte Carlo of the time-changed walk observed at the given times: each clock
/// arrival executes one generator trial.
ActrwEnsemble actrw_mc(const WaitingTimeDensity& d, const MLParams& clock, const JumpDensity& wplus,
                       const JumpDensity& wminus, std::vector<double> times, std::int64_t n_samples,
                       std::uint64_t seed);

}  // namespace adtrw
