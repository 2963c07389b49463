#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace adtrw {

enum class TailKind { LightTailed, FatTailed, Unknown };

// Tail behaviour of a waiting-time density near u = 1 of its generating
// function: psi(u) = 1 - a_mu (1-u)^mu + ... . Light-tailed densities have
// mu = 1 and a finite mean wait.
struct TailClass {
  TailKind kind = TailKind::Unknown;
  double mu = 1.0;
  double a_mu = 0.0;

  static TailClass light() { return {TailKind::LightTailed, 1.0, 0.0}; }
  static TailClass fat(double mu, double a_mu) { return {TailKind::FatTailed, mu, a_mu}; }
  static TailClass unknown() { return {}; }
};

const char* to_string(TailKind kind);

/// Discrete waiting-time density psi(t) of the generator process, tabulated on
/// t = 1..horizon. The survival sequence S(t) = P(first success > t) is stored
/// alongside so that tails which have underflowed relative to one stay exact
/// (geometric survival q^t, for instance, is not recoverable from 1 - sum psi).
///
/// Immutable after construction.
class WaitingTimeDensity {
 public:
  /// Tabulated density. `survival` may be empty, in which case it is derived
  /// as 1 - partial sums. Throws InvalidArgument for negative entries or a
  /// total mass above 1 + 1e-12.
  WaitingTimeDensity(std::vector<double> probs, TailClass tail,
                     std::optional<double> mean_wait, std::string label,
                     std::vector<double> survival = {});

  int horizon() const { return static_cast<int>(probs_.size()); }

  /// psi(t); zero outside 1..horizon.
  double operator()(int t) const {
    return (t >= 1 && t <= horizon()) ? probs_[static_cast<std::size_t>(t - 1)] : 0.0;
  }

  /// probs()[t-1] == psi(t)
  std::span<const double> probs() const { return probs_; }

  /// survival()[t] == S(t) for t = 0..horizon
  std::span<const double> survival() const { return survival_; }

  const TailClass& tail() const { return tail_; }
  std::optional<double> mean_wait() const { return mean_wait_; }
  double alpha1() const { return probs_.front(); }

  /// Probability mass beyond the horizon, S(horizon).
  double mass_deficit() const { return survival_.back(); }

  const std::string& label() const { return label_; }

  /// Copy with a caller-asserted tail class (required before recurrence
  /// analytics on tabulated densities).
  WaitingTimeDensity with_tail(TailClass tail, std::optional<double> mean_wait) const;

 private:
  std::vector<double> probs_;
  std::vector<double> survival_;
  TailClass tail_;
  std::optional<double> mean_wait_;
  std::string label_;
};

namespace spec {
struct Geometric {
  double p;
};
struct Sibuya {
  double beta;
};
struct ShiftedPoisson {
  double lambda;
};
struct Trivial {};
struct Tabulated {
  std::vector<double> probs;
  std::string source;
};
}  // namespace spec

using DensitySpec =
    std::variant<spec::Geometric, spec::Sibuya, spec::ShiftedPoisson, spec::Trivial, spec::Tabulated>;

/// Parses `geometric:p=0.6`, `sibuya:beta=0.5`, `poisson:lambda=1.5`,
/// `trivial` or `file:<path>` (one probability per line, t = 1, 2, ...).
DensitySpec parse_density_spec(std::string_view text);

/// Reads one probability per line; blank lines and `#` comments are skipped.
std::vector<double> read_probability_column(const std::string& path);

std::string describe(const DensitySpec& spec);

WaitingTimeDensity make_density(const DensitySpec& spec, int horizon);

/// S(t) for t = 0..horizon.
struct SurvivalSequence {
  std::vector<double> values;

  double operator[](int t) const { return values[static_cast<std::size_t>(t)]; }
  int horizon() const { return static_cast<int>(values.size()) - 1; }
};

SurvivalSequence survival(const WaitingTimeDensity& d);

}  // namespace adtrw
