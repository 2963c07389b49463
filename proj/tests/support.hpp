#pragma once

#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "adtrw/adtrw.hpp"

namespace adtrw::testing {

inline WaitingTimeDensity geometric(double p, int horizon) { return make_density(spec::Geometric{p}, horizon); }
inline WaitingTimeDensity sibuya(double beta, int horizon) { return make_density(spec::Sibuya{beta}, horizon); }
inline WaitingTimeDensity poisson(double lambda, int horizon) {
  return make_density(spec::ShiftedPoisson{lambda}, horizon);
}

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

/// Uniform point in the closed unit disc.
inline std::complex<double> disc_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> radius(0.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.14159265358979323846);
  return std::polar(std::sqrt(radius(rng)), angle(rng));
}

/// P(Y_t = j) for the simple walk from a forward Markov chain on (age, position),
/// where age counts failures since the last success and the hazard is
/// psi(age+1) / S(age). Independent of the convolution machinery.
inline std::vector<double> age_chain_walk(const WaitingTimeDensity& d, int t) {
  const auto s = d.survival();
  const int width = 2 * t + 1;
  // state[a][pos + t]
  std::vector<std::vector<double>> state(static_cast<std::size_t>(t) + 1, std::vector<double>(width, 0.0));
  state[0][static_cast<std::size_t>(t)] = 1.0;
  for (int step = 0; step < t; ++step) {
    std::vector<std::vector<double>> next(state.size(), std::vector<double>(width, 0.0));
    for (int a = 0; a <= step; ++a) {
      const double surv = s[static_cast<std::size_t>(a)];
      const double hazard = surv > 0.0 ? d(a + 1) / surv : 1.0;
      for (int x = 0; x < width; ++x) {
        const double w = state[static_cast<std::size_t>(a)][static_cast<std::size_t>(x)];
        if (w == 0.0) continue;
        if (x + 1 < width) next[0][static_cast<std::size_t>(x + 1)] += w * hazard;
        if (x >= 1) next[static_cast<std::size_t>(a + 1)][static_cast<std::size_t>(x - 1)] += w * (1.0 - hazard);
      }
    }
    state = std::move(next);
  }
  std::vector<double> out(width, 0.0);
  for (const auto& row : state) {
    for (int x = 0; x < width; ++x) out[static_cast<std::size_t>(x)] += row[static_cast<std::size_t>(x)];
  }
  return out;
}

/// Temporary directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("adtrw-test-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const { return (path_ / name).string(); }

  std::string write(const std::string& name, const std::string& content) const {
    const std::string p = file(name);
    std::ofstream(p) << content;
    return p;
  }

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace adtrw::testing
