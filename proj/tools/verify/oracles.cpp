#include "oracles.hpp"

#include <cmath>
#include <vector>

namespace adtrw::oracle {
namespace {

struct PartitionWalk {
  std::span<const double> x;
  std::vector<int> mult;  // mult[k] = multiplicity of part k
  double total = 0.0;
  int parts_wanted = 0;

  // Distribute `remaining` into `parts_left` parts of size at most `max_part`.
  void visit(int remaining, int parts_left, int max_part) {
    if (remaining == 0 && parts_left == 0) {
      double weight = std::tgamma(parts_wanted + 1.0);
      double product = 1.0;
      for (std::size_t k = 1; k < mult.size(); ++k) {
        if (mult[k] == 0) continue;
        weight /= std::tgamma(mult[k] + 1.0);
        product *= std::pow(x[k - 1], mult[k]);
      }
      total += weight * product;
      return;
    }
    if (parts_left == 0 || remaining < parts_left) return;
    for (int k = std::min(max_part, remaining - (parts_left - 1)); k >= 1; --k) {
      if (k * parts_left < remaining) break;
      ++mult[static_cast<std::size_t>(k)];
      visit(remaining - k, parts_left - 1, k);
      --mult[static_cast<std::size_t>(k)];
    }
  }
};

}  // namespace

double partition_bell(std::span<const double> x, int r, int n) {
  if (n == 0) return r == 0 ? 1.0 : 0.0;
  if (n > r) return 0.0;
  PartitionWalk walk{x, std::vector<int>(static_cast<std::size_t>(r) + 1, 0), 0.0, n};
  walk.visit(r, n, r);
  return walk.total;
}

}  // namespace adtrw::oracle
