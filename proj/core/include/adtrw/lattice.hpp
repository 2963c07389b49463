#pragma once

#include <string>
#include <vector>

namespace adtrw {

enum class Direction { Positive, Negative };

/// One-sided jump-magnitude density W(r), r = 1..R. Direction fixes the sign
/// of the displacement.
struct JumpDensity {
  Direction direction = Direction::Positive;
  std::vector<double> probs;  // probs[r-1] == W(r)

  int max_jump() const { return static_cast<int>(probs.size()); }
  int sign() const { return direction == Direction::Positive ? 1 : -1; }
  bool is_unit() const { return probs.size() == 1; }

  /// Validates non-negativity and unit mass (1e-12).
  static JumpDensity make(Direction direction, std::vector<double> probs);
  static JumpDensity unit(Direction direction) { return JumpDensity{direction, {1.0}}; }
};

/// Reads one W(r) per line (r = 1, 2, ...).
JumpDensity read_jump_density(const std::string& path, Direction direction);

/// Probabilities over the contiguous window [offset, offset + probs.size()).
struct LatticeDistribution {
  int t = 0;
  int offset = 0;
  std::vector<double> probs;

  int lo() const { return offset; }
  int hi() const { return offset + static_cast<int>(probs.size()) - 1; }
  double at(int site) const;
  double total() const;
  double mean() const;
};

/// Total variation distance, treating sites outside either window as zero.
double total_variation(const LatticeDistribution& a, const LatticeDistribution& b);

}  // namespace adtrw
