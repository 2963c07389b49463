#include "adtrw/density.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <charconv>
#include <cmath>
#include <fstream>

#include "adtrw/error.hpp"

namespace adtrw {
namespace {

constexpr double kMassSlack = 1e-12;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_real(std::string_view text, std::string_view what) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw InvalidArgument("cannot parse " + std::string(what) + " from '" + std::string(text) + "'");
  }
  return value;
}

// "key=value" after the family prefix.
double parse_keyed(std::string_view rest, std::string_view key, std::string_view family) {
  const auto eq = rest.find('=');
  if (eq == std::string_view::npos || rest.substr(0, eq) != key) {
    throw InvalidArgument("density '" + std::string(family) + "' expects " + std::string(key) +
                          "=<real>, got '" + std::string(rest) + "'");
  }
  return parse_real(rest.substr(eq + 1), key);
}

std::vector<double> derived_survival(const std::vector<double>& probs) {
  std::vector<double> s(probs.size() + 1);
  s[0] = 1.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    s[i + 1] = std::max(0.0, 1.0 - acc);
  }
  return s;
}

WaitingTimeDensity geometric(double p, int horizon) {
  if (!(p > 0.0 && p <= 1.0)) throw InvalidArgument("geometric: p must lie in (0,1], got " + format_double(p));
  const double q = 1.0 - p;
  std::vector<double> probs(static_cast<std::size_t>(horizon));
  std::vector<double> surv(static_cast<std::size_t>(horizon) + 1);
  surv[0] = 1.0;
  for (int t = 1; t <= horizon; ++t) {
    probs[static_cast<std::size_t>(t - 1)] = p * std::pow(q, t - 1);
    surv[static_cast<std::size_t>(t)] = std::pow(q, t);
  }
  return WaitingTimeDensity(std::move(probs), TailClass::light(), 1.0 / p,
                            "geometric:p=" + format_double(p), std::move(surv));
}

WaitingTimeDensity sibuya(double beta, int horizon) {
  if (!(beta > 0.0 && beta < 1.0)) {
    throw InvalidArgument("sibuya: beta must lie in (0,1), got " + format_double(beta));
  }
  std::vector<double> probs(static_cast<std::size_t>(horizon));
  std::vector<double> surv(static_cast<std::size_t>(horizon) + 1);
  surv[0] = 1.0;
  double psi = beta;
  double s = 1.0 - beta;
  probs[0] = psi;
  surv[1] = s;
  for (int k = 2; k <= horizon; ++k) {
    psi *= (k - 1 - beta) / k;
    s *= 1.0 - beta / k;
    probs[static_cast<std::size_t>(k - 1)] = psi;
    surv[static_cast<std::size_t>(k)] = s;
  }
  return WaitingTimeDensity(std::move(probs), TailClass::fat(beta, 1.0), std::nullopt,
                            "sibuya:beta=" + format_double(beta), std::move(surv));
}

WaitingTimeDensity shifted_poisson(double lambda, int horizon) {
  if (!(lambda >= 0.0)) {
    throw InvalidArgument("poisson: lambda must be >= 0, got " + format_double(lambda));
  }
  std::vector<double> probs(static_cast<std::size_t>(horizon), 0.0);
  std::vector<double> surv(static_cast<std::size_t>(horizon) + 1, 0.0);
  surv[0] = 1.0;
  if (lambda == 0.0) {
    probs[0] = 1.0;
  } else {
    const double log_lambda = std::log(lambda);
    for (int t = 1; t <= horizon; ++t) {
      probs[static_cast<std::size_t>(t - 1)] =
          std::exp(-lambda + (t - 1) * log_lambda - std::lgamma(static_cast<double>(t)));
      // P(Poisson(lambda) >= t)
      surv[static_cast<std::size_t>(t)] = boost::math::gamma_p(static_cast<double>(t), lambda);
    }
  }
  return WaitingTimeDensity(std::move(probs), TailClass::light(), 1.0 + lambda,
                            "poisson:lambda=" + format_double(lambda), std::move(surv));
}

WaitingTimeDensity trivial(int horizon) {
  std::vector<double> probs(static_cast<std::size_t>(horizon), 0.0);
  probs[0] = 1.0;
  std::vector<double> surv(static_cast<std::size_t>(horizon) + 1, 0.0);
  surv[0] = 1.0;
  return WaitingTimeDensity(std::move(probs), TailClass::light(), 1.0, "trivial", std::move(surv));
}

}  // namespace

const char* to_string(TailKind kind) {
  switch (kind) {
    case TailKind::LightTailed: return "light-tailed";
    case TailKind::FatTailed: return "fat-tailed";
    case TailKind::Unknown: return "unknown";
  }
  return "unknown";
}

WaitingTimeDensity::WaitingTimeDensity(std::vector<double> probs, TailClass tail,
                                       std::optional<double> mean_wait, std::string label,
                                       std::vector<double> survival)
    : probs_(std::move(probs)), tail_(tail), mean_wait_(mean_wait), label_(std::move(label)) {
  if (probs_.empty()) throw InvalidArgument("density: horizon must be >= 1");
  double acc = 0.0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    const double p = probs_[i];
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw InvalidArgument("density: psi(" + std::to_string(i + 1) + ") = " + format_double(p) +
                            " is negative or not finite");
    }
    acc += p;
    if (acc > 1.0 + kMassSlack) {
      throw InvalidArgument("density: partial sum exceeds 1 at t=" + std::to_string(i + 1) + " (" +
                            format_double(acc) + ")");
    }
  }
  if (survival.empty()) {
    survival_ = derived_survival(probs_);
  } else {
    if (survival.size() != probs_.size() + 1) {
      throw InvalidArgument("density: survival sequence must have horizon+1 entries");
    }
    survival_ = std::move(survival);
  }
  if (tail_.kind == TailKind::FatTailed && !(tail_.mu > 0.0 && tail_.mu < 1.0 && tail_.a_mu > 0.0)) {
    throw InvalidArgument("density: fat-tailed class needs mu in (0,1) and a_mu > 0");
  }
  if (mean_wait_ && !(*mean_wait_ >= 1.0)) {
    throw InvalidArgument("density: mean wait must be >= 1, got " + format_double(*mean_wait_));
  }
}

WaitingTimeDensity WaitingTimeDensity::with_tail(TailClass tail, std::optional<double> mean_wait) const {
  if (tail.kind == TailKind::LightTailed && !mean_wait) {
    double a1 = 0.0;
    for (int t = 1; t <= horizon(); ++t) a1 += t * (*this)(t);
    mean_wait = a1;
  }
  if (tail.kind == TailKind::FatTailed) mean_wait.reset();
  return WaitingTimeDensity(probs_, tail, mean_wait, label_, survival_);
}

DensitySpec parse_density_spec(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view family = text.substr(0, colon);
  const std::string_view rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  if (family == "trivial") {
    if (!rest.empty()) throw InvalidArgument("density 'trivial' takes no parameters");
    return spec::Trivial{};
  }
  if (colon == std::string_view::npos) {
    throw InvalidArgument("unrecognised density spec '" + std::string(text) + "'");
  }
  if (family == "geometric") return spec::Geometric{parse_keyed(rest, "p", family)};
  if (family == "sibuya") return spec::Sibuya{parse_keyed(rest, "beta", family)};
  if (family == "poisson") return spec::ShiftedPoisson{parse_keyed(rest, "lambda", family)};
  if (family == "file") {
    if (rest.empty()) throw InvalidArgument("density 'file' needs a path");
    return spec::Tabulated{read_probability_column(std::string(rest)), std::string(rest)};
  }
  throw InvalidArgument("unrecognised density family '" + std::string(family) + "'");
}

std::vector<double> read_probability_column(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::vector<double> values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string_view cell(line.data() + first, last - first + 1);
    try {
      values.push_back(parse_real(cell, "value"));
    } catch (const InvalidArgument& e) {
      throw InvalidArgument(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (values.empty()) throw InvalidArgument("'" + path + "' contains no values");
  return values;
}

std::string describe(const DensitySpec& spec) {
  return std::visit(overloaded{
                        [](const spec::Geometric& g) { return "geometric:p=" + format_double(g.p); },
                        [](const spec::Sibuya& s) { return "sibuya:beta=" + format_double(s.beta); },
                        [](const spec::ShiftedPoisson& s) { return "poisson:lambda=" + format_double(s.lambda); },
                        [](const spec::Trivial&) { return std::string("trivial"); },
                        [](const spec::Tabulated& t) { return "file:" + t.source; },
                    },
                    spec);
}

WaitingTimeDensity make_density(const DensitySpec& spec, int horizon) {
  if (horizon < 1) throw InvalidArgument("horizon must be >= 1, got " + std::to_string(horizon));
  return std::visit(overloaded{
                        [&](const spec::Geometric& g) { return geometric(g.p, horizon); },
                        [&](const spec::Sibuya& s) { return sibuya(s.beta, horizon); },
                        [&](const spec::ShiftedPoisson& s) { return shifted_poisson(s.lambda, horizon); },
                        [&](const spec::Trivial&) { return trivial(horizon); },
                        [&](const spec::Tabulated& t) {
                          std::vector<double> probs(static_cast<std::size_t>(horizon), 0.0);
                          const auto n = std::min(probs.size(), t.probs.size());
                          std::copy_n(t.probs.begin(), n, probs.begin());
                          return WaitingTimeDensity(std::move(probs), TailClass::unknown(), std::nullopt,
                                                    "file:" + t.source);
                        },
                    },
                    spec);
}

SurvivalSequence survival(const WaitingTimeDensity& d) {
  return SurvivalSequence{std::vector<double>(d.survival().begin(), d.survival().end())};
}

}  // namespace adtrw
