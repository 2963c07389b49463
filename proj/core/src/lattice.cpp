#include "adtrw/lattice.hpp"

#include <algorithm>
#include <cmath>

#include "adtrw/density.hpp"
#include "adtrw/error.hpp"

namespace adtrw {

JumpDensity JumpDensity::make(Direction direction, std::vector<double> probs) {
  if (probs.empty()) throw InvalidArgument("jump density: empty");
  double mass = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (!(probs[i] >= 0.0) || !std::isfinite(probs[i])) {
      throw InvalidArgument("jump density: W(" + std::to_string(i + 1) + ") is negative or not finite");
    }
    mass += probs[i];
  }
  if (std::abs(mass - 1.0) > 1e-12) {
    throw InvalidArgument("jump density: total mass " + std::to_string(mass) + " differs from 1");
  }
  while (probs.size() > 1 && probs.back() == 0.0) probs.pop_back();
  return JumpDensity{direction, std::move(probs)};
}

JumpDensity read_jump_density(const std::string& path, Direction direction) {
  return JumpDensity::make(direction, read_probability_column(path));
}

double LatticeDistribution::at(int site) const {
  if (site < lo() || site > hi()) return 0.0;
  return probs[static_cast<std::size_t>(site - offset)];
}

double LatticeDistribution::total() const {
  double acc = 0.0;
  for (double p : probs) acc += p;
  return acc;
}

double LatticeDistribution::mean() const {
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) acc += (offset + static_cast<int>(i)) * probs[i];
  return acc;
}

double total_variation(const LatticeDistribution& a, const LatticeDistribution& b) {
  const int lo = std::min(a.lo(), b.lo());
  const int hi = std::max(a.hi(), b.hi());
  double acc = 0.0;
  for (int s = lo; s <= hi; ++s) acc += std::abs(a.at(s) - b.at(s));
  return 0.5 * acc;
}

}  // namespace adtrw
